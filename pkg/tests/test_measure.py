"""Relative measure: local averages, reciprocity with density, trace identities."""

import numpy as np
import pytest

from gaborlab.gabor import GaborSystem, frame_data
from gaborlab.measure import (
    measure_at_centers,
    measure_density_bounds_check,
    measure_profile,
    reciprocity_check,
)
from gaborlab.pointset import RefLattice, TorusParams, jitter, lattice_points
from gaborlab.signal import box_window, gaussian_window


def gaussian_fd(L=48, a=4, b=6, delta=0.0, seed=0):
    torus = TorusParams(L)
    ps = lattice_points(RefLattice(a, b), torus)
    if delta:
        ps = jitter(ps, delta, seed)
    return frame_data(GaborSystem(gaussian_window(torus), ps))


def test_onb_measure_is_one_everywhere():
    torus = TorusParams(64)
    fd = frame_data(GaborSystem(box_window(torus, 8), lattice_points(RefLattice(8, 8), torus)))
    prof = measure_profile(fd, [8, 16, 64])
    for N in (8, 16, 64):
        lo, hi = prof.bounds(N)
        assert lo == pytest.approx(1.0, abs=1e-9)
        assert hi == pytest.approx(1.0, abs=1e-9)


def test_profile_average_matches_direct_sum():
    fd = gaussian_fd()
    prof = measure_profile(fd, [12])
    grid = prof.avg_grids[12]
    w = fd.dual_measures()
    pts = fd.system.points.points
    # recompute one center by hand
    c = (7, 19)
    dx = np.mod(pts[:, 0] - c[0] + 6, 48)
    dw = np.mod(pts[:, 1] - c[1] + 6, 48)
    inside = (dx < 12) & (dw < 12)
    assert grid[c] == pytest.approx(w[inside].mean(), rel=1e-12)
    assert prof.skipped[12] == 0


def test_measure_at_fractional_centers():
    fd = gaussian_fd()
    vals = measure_at_centers(fd, 12, [(7.0, 19.0), (7.3, 19.3)])
    prof = measure_profile(fd, [12])
    assert vals[0] == pytest.approx(prof.avg_grids[12][7, 19], rel=1e-12)
    assert np.isfinite(vals[1])


def test_empty_box_skipping():
    # boxes smaller than the lattice spacing miss points: skipped, not averaged
    fd = gaussian_fd(L=32, a=4, b=4)
    prof = measure_profile(fd, [2])
    assert prof.skipped[2] > 0
    grid = prof.avg_grids[2]
    assert np.isnan(grid[2, 2])  # [1,3)^2 catches no multiple of 4
    assert np.isfinite(grid[0, 0])
    vals = measure_at_centers(fd, 2, [(2, 2), (0, 0)])
    assert np.isnan(vals[0]) and np.isfinite(vals[1])
    rec = reciprocity_check(fd, 2)
    assert rec["empty_boxes"] == prof.skipped[2]


def test_reciprocity_exact_at_full_box():
    # r1, r2 vanish at N = L for any frame, lattice or jittered
    for delta, seed in [(0.0, 0), (0.5, 3), (1.5, 7)]:
        fd = gaussian_fd(delta=delta, seed=seed)
        rec = reciprocity_check(fd, 48)
        assert rec["r1"] < 1e-9
        assert rec["r2"] < 1e-9
        assert rec["empty_boxes"] == 0


def test_reciprocity_exact_on_commensurate_boxes():
    # lattice systems: boxes commensurate with the lattice average exactly
    fd = gaussian_fd()
    rec = reciprocity_check(fd, 24)
    assert rec["r1"] < 1e-9
    assert rec["r2"] < 1e-9


def test_trace_average_equals_density_reciprocal():
    fd = gaussian_fd(delta=0.5, seed=1)
    w = fd.dual_measures()
    assert w.mean() == pytest.approx(48 / len(fd.system), rel=1e-12)


def test_bounds_check_records():
    fd = gaussian_fd()
    recs = measure_density_bounds_check(fd, [24, 48])
    assert [r["N"] for r in recs] == [24, 48]
    for r in recs:
        assert r["within_tau"]
        assert r["prod_low"] == pytest.approx(1.0, abs=1e-9)
        assert r["prod_high"] == pytest.approx(1.0, abs=1e-9)
    assert recs[-1]["M_minus"] == pytest.approx(48 / len(fd.system), rel=1e-12)
