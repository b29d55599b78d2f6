"""Gabor systems over irregular point sets and their frame data.

A Gabor system G(g, Lambda) collects the time-frequency shifts M_omega T_x g
over a point set Lambda.  Both offsets quantize to the nearest grid point
when elements materialize (the residual is jitter absorbed into the point
set; see signal.tf_shift), so every element is an exactly unitary image of
the window.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import frames
from .errors import NotAFrameError
from .pointset import PointSet, TorusParams
from .signal import Signal, tf_shift

__all__ = [
    "GaborSystem",
    "FrameData",
    "RandomThinning",
    "PerCellThinning",
    "ExplicitRemoval",
    "gabor_system",
    "analysis",
    "synthesis",
    "frame_bounds",
    "frame_data",
    "canonical_dual",
    "parseval",
    "cross_gram",
    "remove_subset",
]


@dataclass(frozen=True)
class GaborSystem:
    """Window plus point set; elements materialize lazily into an (m, L) stack."""

    window: Signal
    points: PointSet

    def __post_init__(self):
        if self.window.torus.L != self.points.torus.L:
            raise ValueError("window and point set live on different tori")

    @property
    def torus(self) -> TorusParams:
        return self.window.torus

    def __len__(self) -> int:
        return len(self.points)

    @property
    def atoms(self) -> np.ndarray:
        """(m, L) stack of system elements, cached after first build."""
        cached = self.__dict__.get("_atoms")
        if cached is None:
            cached = np.stack(
                [tf_shift(self.window, x, om).samples for x, om in self.points.points]
            ) if len(self.points) else np.zeros((0, self.torus.L), dtype=complex)
            cached.setflags(write=False)
            self.__dict__["_atoms"] = cached
        return cached


def gabor_system(window: Signal, points: PointSet) -> GaborSystem:
    return GaborSystem(window, points)


@dataclass(frozen=True)
class FrameData:
    """Frame bounds, frame operator, and canonical duals of a Gabor system."""

    system: GaborSystem
    A: float
    B: float
    S: np.ndarray | None = field(repr=False, default=None)
    duals: np.ndarray | None = field(repr=False, default=None)
    parseval_atoms: np.ndarray | None = field(repr=False, default=None)

    def apply(self, f: Signal) -> Signal:
        """Frame operator applied to a signal."""
        if self.S is not None:
            return Signal(f.torus, self.S @ f.samples)
        return synthesis(self.system, analysis(self.system, f))

    @property
    def is_frame(self) -> bool:
        return frames.is_frame(self.A, self.B)

    def dual_measures(self) -> np.ndarray:
        """Per-element Re<g_lam, dual_lam>; provably real nonneg for canonical duals."""
        if self.duals is None:
            raise NotAFrameError("duals not computed")
        vals = np.einsum("ij,ij->i", self.system.atoms.conj(), self.duals)
        return _realize(vals)


def _realize(vals: np.ndarray) -> np.ndarray:
    import warnings

    from .errors import SolverQualityWarning

    residue = float(np.abs(vals.imag).max()) if vals.size else 0.0
    if residue > 1e-9:
        warnings.warn(
            f"imaginary residue {residue:.2e} in a provably-real quantity",
            SolverQualityWarning,
        )
    return vals.real.copy()


def analysis(sys: GaborSystem, f: Signal) -> np.ndarray:
    """Coefficient vector (<f, g_lam>)_lam."""
    return sys.atoms.conj() @ f.samples


def synthesis(sys: GaborSystem, coeffs: np.ndarray) -> Signal:
    """sum_lam c_lam g_lam."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (len(sys),):
        raise ValueError(f"expected {len(sys)} coefficients, got shape {coeffs.shape}")
    return Signal(sys.torus, sys.atoms.T @ coeffs)


def frame_bounds(sys: GaborSystem, method: str = "auto") -> tuple[float, float]:
    """(A, B); dense eigendecomposition up to L = 512, certified power iteration above."""
    return frames.frame_bounds(sys.atoms, method=method)


def frame_data(sys: GaborSystem, method: str = "auto", with_duals: bool = True,
               with_parseval: bool = False) -> FrameData:
    """Bundle bounds, dense frame operator (when affordable), duals, Parseval atoms."""
    A, B = frames.frame_bounds(sys.atoms, method=method)
    dense = sys.torus.L <= frames.DENSE_LIMIT
    S = frames.frame_matrix(sys.atoms) if dense else None
    duals = None
    parseval_atoms = None
    if with_duals and frames.is_frame(A, B):
        duals = frames.canonical_duals(sys.atoms, method="dense" if dense else "cg")
    if with_parseval and frames.is_frame(A, B):
        parseval_atoms = frames.parseval_vectors(sys.atoms)
    return FrameData(system=sys, A=A, B=B, S=S, duals=duals, parseval_atoms=parseval_atoms)


def canonical_dual(sys: GaborSystem, method: str = "auto") -> FrameData:
    """Frame data with canonical duals; raises NotAFrameError when A vanishes."""
    fd = frame_data(sys, method=method, with_duals=True)
    if fd.duals is None:
        raise NotAFrameError(f"system is not a frame (A={fd.A:.3g}, B={fd.B:.3g})")
    return fd


def parseval(sys: GaborSystem) -> FrameData:
    """Frame data carrying the canonical Parseval atoms S^{-1/2} g_lam."""
    fd = frame_data(sys, with_duals=True, with_parseval=True)
    if fd.parseval_atoms is None:
        raise NotAFrameError("system is not a frame")
    return fd


def cross_gram(sys_f: GaborSystem, sys_e: GaborSystem) -> np.ndarray:
    """Matrix of <f_i, e_j> between two systems on the same torus."""
    return frames.cross_gram(sys_f.atoms, sys_e.atoms)


# -- excess removal ----------------------------------------------------------


@dataclass(frozen=True)
class RandomThinning:
    """Remove a uniformly random fraction of the points."""

    fraction: float
    seed: int


@dataclass(frozen=True)
class PerCellThinning:
    """Remove up to `per_cell` random points from every cell of a box tiling.

    The torus is tiled by cell_x x cell_w boxes anchored at the origin, so the
    removed set inherits a uniform density of roughly per_cell per cell.
    """

    cell_x: int
    cell_w: int
    seed: int
    per_cell: int = 1


@dataclass(frozen=True)
class ExplicitRemoval:
    """Remove the listed element indices."""

    indices: tuple


def remove_subset(sys: GaborSystem, strategy) -> tuple[GaborSystem, PointSet]:
    """Drop a subset of elements; returns (survivor system, removed point set)."""
    m = len(sys)
    pts = sys.points.points
    if isinstance(strategy, RandomThinning):
        if not 0.0 <= strategy.fraction <= 1.0:
            raise ValueError("fraction must be in [0, 1]")
        rng = np.random.default_rng(strategy.seed)
        k = int(round(strategy.fraction * m))
        removed_idx = np.sort(rng.choice(m, size=k, replace=False))
    elif isinstance(strategy, PerCellThinning):
        L = sys.torus.L
        if L % strategy.cell_x or L % strategy.cell_w:
            raise ValueError("cell sides must divide L")
        rng = np.random.default_rng(strategy.seed)
        cells_x = np.floor(pts[:, 0] / strategy.cell_x).astype(int)
        cells_w = np.floor(pts[:, 1] / strategy.cell_w).astype(int)
        keys = cells_x * (L // strategy.cell_w) + cells_w
        removed = []
        for key in np.unique(keys):
            members = np.flatnonzero(keys == key)
            take = min(strategy.per_cell, len(members))
            removed.extend(rng.choice(members, size=take, replace=False))
        removed_idx = np.sort(np.asarray(removed, dtype=int))
    elif isinstance(strategy, ExplicitRemoval):
        removed_idx = np.unique(np.asarray(strategy.indices, dtype=int))
        if removed_idx.size and (removed_idx.min() < 0 or removed_idx.max() >= m):
            raise ValueError("removal indices out of range")
    else:
        raise TypeError(f"unknown removal strategy {strategy!r}")

    keep = np.setdiff1d(np.arange(m), removed_idx)
    survivor = GaborSystem(sys.window, PointSet(sys.torus, pts[keep]))
    removed_ps = PointSet(sys.torus, pts[removed_idx])
    return survivor, removed_ps
