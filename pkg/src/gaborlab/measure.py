"""Relative measure of Gabor frames and its reciprocity with density.

The local average at box center c and side N is

    avg_N(c) = (1/|I_N(c)|) * sum over lam in Q_N(c) of Re<g_lam, dual_lam>,

with Q_N the same half-open boxes the density module uses.  For canonical
duals every term lies in [0, 1], the whole-torus average is exactly
L / |Lambda| (a trace identity), and avg_N(c) * D_N(c) concentrates at 1 --
the discrete reciprocity between measure and density.  The normalizer L/N**2
is pinned by the lattice identity avg = a_step*b_step/L.

Relative measure against a proper subfamily (a genuine subspace projection) is
out of scope here; the counterexample constructions carry their own small
projector where they need one.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyBoxError
from .gabor import FrameData
from .pointset import box_count_grid, box_stats, box_weight_grid, density_bounds

__all__ = [
    "MeasureProfile",
    "measure_profile",
    "measure_at_centers",
    "reciprocity_check",
    "measure_density_bounds_check",
]


@dataclass(frozen=True)
class MeasureProfile:
    """Local measure averages over all integer centers, one grid per box side N.

    NaN entries mark skipped (empty) boxes; `skipped` counts them per N.
    """

    L: int
    N_values: tuple
    avg_grids: dict = field(repr=False)  # N -> (L, L) array over integer centers
    skipped: dict

    def bounds(self, N: int) -> tuple[float, float]:
        """(M_minus, M_plus) over nonempty boxes at side N."""
        grid = self.avg_grids[N]
        if np.all(np.isnan(grid)):
            raise EmptyBoxError(f"no box of side {N} contains a point")
        return float(np.nanmin(grid)), float(np.nanmax(grid))

    def save_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "center_x", "center_w", "avg"])
            for N in self.N_values:
                grid = self.avg_grids[N]
                for cx in range(self.L):
                    row = grid[cx]
                    for cw in range(self.L):
                        if not np.isnan(row[cw]):
                            w.writerow([N, cx, cw, f"{row[cw]:.15g}"])


def measure_profile(fd: FrameData, N_values) -> MeasureProfile:
    """Local averages of Re<g_lam, dual_lam> at every integer center.

    Exact integer/weight prefix sums make this O(L^2) per box side.
    """
    ps = fd.system.points
    weights = fd.dual_measures()
    L = ps.torus.L
    avg_grids: dict = {}
    skipped: dict = {}
    for N in N_values:
        counts = box_count_grid(ps, N)
        wsum = box_weight_grid(ps, weights, N)
        grid = np.full((L, L), np.nan)
        nz = counts > 0
        grid[nz] = wsum[nz] / counts[nz]
        avg_grids[int(N)] = grid
        skipped[int(N)] = int((~nz).sum())
    if all(np.all(np.isnan(g)) for g in avg_grids.values()):
        raise EmptyBoxError("no nonempty box at any requested side")
    return MeasureProfile(L=L, N_values=tuple(int(N) for N in N_values),
                          avg_grids=avg_grids, skipped=skipped)


def measure_at_centers(fd: FrameData, N: int, centers) -> np.ndarray:
    """avg_N at explicit (possibly non-integer) centers; NaN where the box is empty."""
    ps = fd.system.points
    L = ps.torus.L
    weights = fd.dual_measures()
    cs = np.asarray(centers, dtype=float).reshape(-1, 2)
    stats = box_stats(ps, N, cs)
    vals = np.full(len(cs), np.nan)
    for k, c in enumerate(cs):
        if not stats.counts[k]:
            continue
        dx = np.mod(ps.points[:, 0] - c[0] + N / 2, L)
        dw = np.mod(ps.points[:, 1] - c[1] + N / 2, L)
        inside = (dx < N) & (dw < N)
        vals[k] = weights[inside].sum() / stats.counts[k]
    return vals


def reciprocity_check(fd: FrameData, N: int) -> dict:
    """Residuals of the measure/density reciprocity at box side N.

    r1 = max over nonempty centers |avg_N(c) * D_N(c) - 1|;
    r2 = max over all centers |(L/N**2) * sum of Re<g,dual> over Q_N(c) - 1|.
    Both vanish to machine precision at N = L for any frame.
    """
    ps = fd.system.points
    L = ps.torus.L
    weights = fd.dual_measures()
    counts = box_count_grid(ps, N)
    wsum = box_weight_grid(ps, weights, N)
    scale = L / N**2
    nz = counts > 0
    if not nz.any():
        raise EmptyBoxError(f"no box of side {N} contains a point")
    r1 = float(np.abs((wsum[nz] / counts[nz]) * (scale * counts[nz]) - 1.0).max())
    r2 = float(np.abs(scale * wsum - 1.0).max())
    return {"N": int(N), "r1": r1, "r2": r2, "empty_boxes": int((~nz).sum())}


def measure_density_bounds_check(fd: FrameData, N_values, tau: float = 1e-9) -> list[dict]:
    """Per-N records of density/measure bounds and their reciprocal products.

    Each record reports M_minus * D_plus and M_plus * D_minus (both concentrate
    at 1), plus the exactness flag |product - 1| <= tau, which is guaranteed at
    N = L and at lattice-commensurate sides for lattice systems.  When the
    frame is numerically tight the N = L record also asserts the uniform
    density gap D_plus - D_minus < 1e-9.
    """
    ps = fd.system.points
    prof = measure_profile(fd, N_values)
    out = []
    tight = fd.B > 0 and abs(fd.A - fd.B) / fd.B < 1e-8
    for N in prof.N_values:
        d_minus, d_plus = density_bounds(ps, N)
        m_minus, m_plus = prof.bounds(N)
        rec = {
            "N": int(N),
            "D_minus": d_minus,
            "D_plus": d_plus,
            "M_minus": m_minus,
            "M_plus": m_plus,
            "prod_low": m_minus * d_plus,
            "prod_high": m_plus * d_minus,
        }
        rec["within_tau"] = max(abs(rec["prod_low"] - 1), abs(rec["prod_high"] - 1)) <= tau
        if tight and N == ps.torus.L:
            rec["tight_uniform_density"] = bool(d_plus - d_minus < 1e-9)
        out.append(rec)
    return out
