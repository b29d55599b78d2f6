"""Time-frequency point sets on the discrete torus.

The model space is the L x L torus: time index and frequency index both live
in [0, L).  Point sets are multisets of real-valued (x, omega) pairs reduced
mod L; separable reference lattices are the special case a_step*Z x b_step*Z.

Box statistics use half-open ell-infinity boxes [c - N/2, c + N/2) with
periodic wraparound, so a disjoint tiling of the torus by boxes accounts for
every point exactly once.  The normalized count of a box of side N is
(L / N**2) * |points in box|, which makes the critical (orthonormal-basis)
density come out as 1.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import BoxTooLargeError, InvalidLatticeError

__all__ = [
    "TorusParams",
    "PointSet",
    "RefLattice",
    "BoxStats",
    "lattice_points",
    "union",
    "jitter",
    "round_map",
    "lattice_ids",
    "box_count_grid",
    "box_weight_grid",
    "box_stats",
    "density_bounds",
]


@dataclass(frozen=True)
class TorusParams:
    """Side length of the discrete time-frequency torus."""

    L: int

    def __post_init__(self):
        if not isinstance(self.L, (int, np.integer)) or self.L < 8:
            raise ValueError(f"torus side must be an integer >= 8, got {self.L!r}")


@dataclass(frozen=True)
class RefLattice:
    """Separable reference lattice with time step a_step and frequency step b_step."""

    a_step: int
    b_step: int

    def __post_init__(self):
        if self.a_step < 1 or self.b_step < 1:
            raise InvalidLatticeError(
                f"lattice steps must be positive integers, got {self.a_step}x{self.b_step}"
            )

    def validate_for(self, torus: TorusParams) -> None:
        """Raise InvalidLatticeError unless both steps divide L."""
        L = torus.L
        if L % self.a_step or L % self.b_step:
            raise InvalidLatticeError(
                f"lattice {self.a_step}x{self.b_step} does not divide torus side {L}"
            )

    def n_points(self, torus: TorusParams) -> int:
        self.validate_for(torus)
        return (torus.L // self.a_step) * (torus.L // self.b_step)


@dataclass(frozen=True)
class PointSet:
    """Multiset of (x, omega) torus points, stored as an (m, 2) float array."""

    torus: TorusParams
    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError(f"points must have shape (m, 2), got {pts.shape}")
        if pts.size and not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        pts = np.mod(pts, self.torus.L)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]

    # -- serialization ------------------------------------------------------

    def save_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "omega"])
            for x, om in self.points:
                w.writerow([f"{x:.15g}", f"{om:.15g}"])

    @classmethod
    def load_csv(cls, path, torus: TorusParams) -> "PointSet":
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows or rows[0] != ["x", "omega"]:
            raise ValueError(f"{path}: expected header 'x,omega'")
        pts = np.array([[float(a), float(b)] for a, b in rows[1:]], dtype=float)
        return cls(torus, pts.reshape(-1, 2))

    def to_json_obj(self) -> dict:
        return {"L": self.torus.L, "points": [[x, om] for x, om in self.points.tolist()]}

    def save_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_obj(), fh, indent=1)
            fh.write("\n")

    @classmethod
    def load_json(cls, path) -> "PointSet":
        with open(path) as fh:
            obj = json.load(fh)
        return cls(TorusParams(int(obj["L"])), np.array(obj["points"], dtype=float).reshape(-1, 2))


@dataclass(frozen=True)
class BoxStats:
    """Counts of points in boxes of side N around the given centers."""

    N: int
    centers: np.ndarray
    counts: np.ndarray
    normalized: np.ndarray


def _check_box_side(N: int, L: int) -> None:
    if N < 2 or N % 2:
        raise ValueError(f"box side must be a positive even integer, got {N}")
    if N > L:
        raise BoxTooLargeError(f"box side {N} exceeds torus side {L}")


def lattice_points(lat: RefLattice, torus: TorusParams) -> PointSet:
    """All lattice points (j*a_step, k*b_step), time-major order."""
    lat.validate_for(torus)
    xs = np.arange(0, torus.L, lat.a_step, dtype=float)
    oms = np.arange(0, torus.L, lat.b_step, dtype=float)
    grid = np.stack(np.meshgrid(xs, oms, indexing="ij"), axis=-1).reshape(-1, 2)
    return PointSet(torus, grid)


def union(*sets: PointSet) -> PointSet:
    """Multiset union (concatenation) of point sets on the same torus."""
    if not sets:
        raise ValueError("union of no point sets")
    L = sets[0].torus.L
    if any(ps.torus.L != L for ps in sets):
        raise ValueError("point sets live on different tori")
    return PointSet(sets[0].torus, np.concatenate([ps.points for ps in sets], axis=0))


def jitter(ps: PointSet, delta: float, seed: int) -> PointSet:
    """Perturb every point by an independent uniform offset in [-delta, delta]^2."""
    if delta < 0:
        raise ValueError("jitter magnitude must be >= 0")
    rng = np.random.default_rng(seed)
    offsets = rng.uniform(-delta, delta, size=ps.points.shape)
    return PointSet(ps.torus, ps.points + offsets)


def round_map(ps: PointSet, lat: RefLattice) -> np.ndarray:
    """Floor each point onto the reference lattice; returns (m, 2) lattice coordinates.

    The image of (x, omega) is (a_step*floor(x/a_step), b_step*floor(omega/b_step)),
    so every point sits within max(a_step, b_step) of its image in ell-infinity
    distance on the torus.
    """
    lat.validate_for(ps.torus)
    out = np.empty_like(ps.points)
    out[:, 0] = np.floor(ps.points[:, 0] / lat.a_step) * lat.a_step
    out[:, 1] = np.floor(ps.points[:, 1] / lat.b_step) * lat.b_step
    return np.mod(out, ps.torus.L)


def lattice_ids(ps: PointSet, lat: RefLattice) -> np.ndarray:
    """Flat lattice index of round_map images: id = kx * (L/b_step) + kw."""
    lat.validate_for(ps.torus)
    L = ps.torus.L
    nx, nw = L // lat.a_step, L // lat.b_step
    kx = np.floor(ps.points[:, 0] / lat.a_step).astype(np.int64) % nx
    kw = np.floor(ps.points[:, 1] / lat.b_step).astype(np.int64) % nw
    return kx * nw + kw


def _bin_indices(ps: PointSet, N: int) -> tuple[np.ndarray, np.ndarray]:
    # p lies in [c - N/2, c + N/2) iff floor(p + N/2) lands in the N cells at
    # and after c, so binning at floor(p + N/2) turns box counts into window sums.
    L = ps.torus.L
    bx = np.floor(ps.points[:, 0] + N // 2).astype(np.int64) % L
    bw = np.floor(ps.points[:, 1] + N // 2).astype(np.int64) % L
    return bx, bw


def _window_sum_grid(H: np.ndarray, N: int) -> np.ndarray:
    """Sum of H over the N x N window starting at each cell, with wraparound."""
    L = H.shape[0]
    Hp = np.pad(H, ((0, N), (0, N)), mode="wrap")
    I = np.zeros((L + N + 1, L + N + 1), dtype=Hp.dtype)
    np.cumsum(Hp, axis=0, out=Hp)
    np.cumsum(Hp, axis=1, out=Hp)
    I[1:, 1:] = Hp
    return I[N : L + N, N : L + N] - I[:L, N : L + N] - I[N : L + N, :L] + I[:L, :L]


def box_count_grid(ps: PointSet, N: int) -> np.ndarray:
    """(L, L) array of |points in Q_N(c)| for every integer center c."""
    _check_box_side(N, ps.torus.L)
    L = ps.torus.L
    bx, bw = _bin_indices(ps, N)
    H = np.zeros((L, L), dtype=np.int64)
    np.add.at(H, (bx, bw), 1)
    return _window_sum_grid(H, N)


def box_weight_grid(ps: PointSet, weights: np.ndarray, N: int) -> np.ndarray:
    """(L, L) array of sums of per-point weights over Q_N(c) for integer centers."""
    _check_box_side(N, ps.torus.L)
    L = ps.torus.L
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (len(ps),):
        raise ValueError("need one weight per point")
    bx, bw = _bin_indices(ps, N)
    H = np.zeros((L, L), dtype=float)
    np.add.at(H, (bx, bw), weights)
    return _window_sum_grid(H, N)


def box_stats(ps: PointSet, N: int, centers) -> BoxStats:
    """Counts and normalized counts of boxes of side N at the given centers.

    Centers may be arbitrary torus points; membership uses the half-open
    convention, and the normalized value is (L / N**2) * count.
    """
    L = ps.torus.L
    _check_box_side(N, ps.torus.L)
    centers = np.mod(np.asarray(centers, dtype=float).reshape(-1, 2), L)
    dx = np.mod(ps.points[:, 0][None, :] - centers[:, 0][:, None] + N / 2, L)
    dw = np.mod(ps.points[:, 1][None, :] - centers[:, 1][:, None] + N / 2, L)
    inside = (dx < N) & (dw < N)
    counts = inside.sum(axis=1)
    return BoxStats(N=N, centers=centers, counts=counts, normalized=counts * (L / N**2))


def density_bounds(ps: PointSet, N: int) -> tuple[float, float]:
    """(D_minus, D_plus): min and max normalized box count over all integer centers."""
    grid = box_count_grid(ps, N)
    L = ps.torus.L
    return float(grid.min() * L / N**2), float(grid.max() * L / N**2)
