"""Point sets, boxes, and density bounds."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaborlab.errors import BoxTooLargeError, InvalidLatticeError
from gaborlab.pointset import (
    PointSet,
    RefLattice,
    TorusParams,
    box_count_grid,
    box_stats,
    density_bounds,
    jitter,
    lattice_ids,
    lattice_points,
    round_map,
    union,
)


def brute_count(points, L, N, cx, cw):
    # half-open box [c - N/2, c + N/2) on both axes, torus wrap
    n = 0
    for x, w in points:
        if ((x - cx + N / 2) % L) < N and ((w - cw + N / 2) % L) < N:
            n += 1
    return n


def test_torus_validation():
    with pytest.raises(ValueError):
        TorusParams(4)
    with pytest.raises(ValueError):
        TorusParams(12.5)


def test_lattice_must_divide():
    with pytest.raises(InvalidLatticeError, match="does not divide"):
        RefLattice(5, 4).validate_for(TorusParams(48))
    RefLattice(4, 6).validate_for(TorusParams(48))  # fine


def test_lattice_points_count_and_order():
    torus = TorusParams(24)
    ps = lattice_points(RefLattice(4, 6), torus)
    assert len(ps) == (24 // 4) * (24 // 6)
    # time-major: first block shares x = 0
    assert np.all(ps.points[: 24 // 6, 0] == 0.0)
    assert list(ps.points[: 24 // 6, 1]) == [0.0, 6.0, 12.0, 18.0]


def test_union_concatenates():
    torus = TorusParams(16)
    a = lattice_points(RefLattice(4, 4), torus)
    b = PointSet(torus, np.array([[1.5, 2.5]]))
    u = union(a, b)
    assert len(u) == len(a) + 1
    with pytest.raises(ValueError):
        union(a, lattice_points(RefLattice(4, 4), TorusParams(32)))


def test_jitter_bounded_and_deterministic():
    torus = TorusParams(32)
    base = lattice_points(RefLattice(4, 4), torus)
    j1 = jitter(base, 0.5, 7)
    j2 = jitter(base, 0.5, 7)
    assert np.array_equal(j1.points, j2.points)
    # displaced points wrap around the torus, so measure the wrapped distance
    diff = np.abs(j1.points - base.points)
    diff = np.minimum(diff, 32 - diff)
    assert diff.max() <= 0.5
    assert not np.array_equal(j1.points, jitter(base, 0.5, 8).points)


def test_round_map_floors_onto_lattice():
    torus = TorusParams(24)
    lat = RefLattice(4, 6)
    ps = PointSet(torus, np.array([[0.0, 0.0], [3.9, 5.9], [4.0, 6.0], [23.5, 23.5]]))
    img = round_map(ps, lat)
    assert img.tolist() == [[0, 0], [0, 0], [4, 6], [20, 18]]
    ids = lattice_ids(ps, lat)
    assert ids.tolist() == [0, 0, 1 * 4 + 1, 5 * 4 + 3]


def test_box_count_grid_matches_brute_force():
    torus = TorusParams(12)
    rng = np.random.default_rng(3)
    pts = rng.uniform(0, 12, size=(17, 2))
    ps = PointSet(torus, pts)
    for N in (2, 4, 6):
        grid = box_count_grid(ps, N)
        for cx in range(12):
            for cw in range(12):
                assert grid[cx, cw] == brute_count(pts, 12, N, cx, cw)


def test_box_stats_agrees_at_integer_centers():
    torus = TorusParams(16)
    ps = jitter(lattice_points(RefLattice(4, 4), torus), 1.5, 11)
    grid = box_count_grid(ps, 6)
    centers = [(0, 0), (5, 9), (15, 3)]
    stats = box_stats(ps, 6, centers)
    for (cx, cw), n in zip(centers, stats.counts):
        assert n == grid[cx, cw]
    assert np.allclose(stats.normalized, stats.counts * 16 / 36)


def test_box_side_validation():
    ps = lattice_points(RefLattice(4, 4), TorusParams(16))
    with pytest.raises(ValueError):
        box_count_grid(ps, 3)
    with pytest.raises(ValueError):
        box_count_grid(ps, 0)
    with pytest.raises(BoxTooLargeError):
        box_count_grid(ps, 18)


def test_density_of_full_lattice_is_exact():
    # boxes commensurate with the lattice see exactly (N/a)(N/b) points
    torus = TorusParams(48)
    ps = lattice_points(RefLattice(4, 6), torus)
    dmin, dmax = density_bounds(ps, 24)
    assert dmin == dmax == pytest.approx(48 / (4 * 6), abs=0)
    # whole-torus box counts every point once
    dmin, dmax = density_bounds(ps, 48)
    assert dmin == dmax == pytest.approx(2.0, abs=0)


def test_density_bounds_order():
    ps = jitter(lattice_points(RefLattice(4, 4), TorusParams(32)), 0.5, 2)
    for N in (4, 8, 16):
        dmin, dmax = density_bounds(ps, N)
        assert 0 <= dmin <= dmax


@settings(max_examples=40, deadline=None)
@given(
    pts=st.lists(
        st.tuples(st.floats(0, 7.999), st.floats(0, 7.999)),
        min_size=1,
        max_size=12,
    ),
    N=st.sampled_from([2, 4, 6, 8]),
)
def test_density_bounds_match_brute_force(pts, N):
    L = 8
    ps = PointSet(TorusParams(L), np.array(pts))
    counts = [brute_count(pts, L, N, cx, cw) for cx in range(L) for cw in range(L)]
    dmin, dmax = density_bounds(ps, N)
    assert dmin == pytest.approx(min(counts) * L / N**2, abs=0)
    assert dmax == pytest.approx(max(counts) * L / N**2, abs=0)


def test_csv_roundtrip(tmp_path):
    torus = TorusParams(32)
    ps = jitter(lattice_points(RefLattice(8, 8), torus), 0.3, 5)
    path = tmp_path / "pts.csv"
    ps.save_csv(path)
    back = PointSet.load_csv(path, torus)
    assert np.allclose(back.points, ps.points, atol=1e-12)
    with open(path) as fh:
        assert fh.readline().strip() == "x,omega"


def test_json_roundtrip(tmp_path):
    torus = TorusParams(32)
    ps = jitter(lattice_points(RefLattice(8, 8), torus), 0.3, 5)
    path = tmp_path / "pts.json"
    ps.save_json(path)
    back = PointSet.load_json(path)
    assert back.torus.L == 32
    assert np.allclose(back.points, ps.points, atol=1e-15)
