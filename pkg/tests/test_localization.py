"""Envelopes, decay profiles, HAP errors, molecules, and the bridge inequalities."""

import numpy as np
import pytest

from gaborlab.gabor import GaborSystem, frame_data
from gaborlab.localization import (
    DecayProfile,
    Envelope,
    LineGroup,
    TorusLatticeGroup,
    bridge_checks,
    column_decay_profile,
    dual_localization_envelope,
    gabor_pair,
    localization_envelope,
    molecule_envelope,
    row_decay_profile,
    self_localization_envelope,
    strong_hap_error,
    weak_hap_error,
)
from gaborlab.pointset import PointSet, RefLattice, TorusParams, jitter, lattice_points
from gaborlab.signal import Signal, box_window, gaussian_window, stft


def onb_system(L=32, width=8):
    # box translates by `width` and modulations stepping L/width: an ONB of C^L
    torus = TorusParams(L)
    lat = RefLattice(width, L // width)
    return GaborSystem(box_window(torus, width), lattice_points(lat, torus)), lat


def gaussian_pair(L=48, a=4, b=6, with_duals=True):
    torus = TorusParams(L)
    lat = RefLattice(a, b)
    sys = GaborSystem(gaussian_window(torus), lattice_points(lat, torus))
    f_duals = e_duals = None
    if with_duals:
        fd = frame_data(sys)
        f_duals = fd.duals
        e_duals = fd.duals  # F and E coincide here
    return gabor_pair(sys, gaussian_window(torus), lat, f_duals=f_duals, e_duals=e_duals)


def test_torus_group_offsets():
    group = TorusLatticeGroup(TorusParams(24), RefLattice(4, 6))
    assert group.size == 6 * 4
    # offset of an id against itself is the zero offset, distance 0
    ids = np.arange(group.size)
    offs = group.offset_ids(ids, ids)
    assert len(set(offs.tolist())) == 1
    assert group.offset_distances()[offs[0]] == 0.0


def test_line_group_metric():
    group = LineGroup(5)
    assert group.n_offsets == 9
    d = group.offset_distances()
    assert d[group.offset_ids(4, 1)] == 3.0
    assert d[group.offset_ids(1, 4)] == 3.0


def test_envelope_brute_force():
    pair = gaussian_pair(24, 4, 6, with_duals=False)
    env = localization_envelope(pair)
    mags = pair.cross_mag()
    group = pair.group
    expected = np.zeros(group.n_offsets)
    for i in range(mags.shape[0]):
        for j in range(mags.shape[1]):
            k = group.offset_ids(pair.a_ids[i], j)
            expected[k] = max(expected[k], mags[i, j])
    assert np.allclose(env.values, expected, atol=1e-14)


def test_envelope_norms_and_tail():
    vals = np.array([3.0, 4.0, 0.5])

    class FakeGroup:
        n_offsets = 3
        size = 3

        def offset_distances(self):
            return np.array([0.0, 1.0, 2.0])

    env = Envelope(group=FakeGroup(), values=vals)
    assert env.p_norm(2) == pytest.approx(np.sqrt(9 + 16 + 0.25))
    assert env.p_norm(np.inf) == 4.0
    assert env.tail_mass(1.0, 0.5) == pytest.approx(4.5)
    assert env.tail_mass(2.0, 1.0) == pytest.approx(0.25)


def test_onb_self_envelope_is_delta():
    sys, lat = onb_system()
    pair = gabor_pair(sys, sys.window, lat)
    env = self_localization_envelope(pair)
    d = pair.group.offset_distances()
    assert env.values[d == 0].max() == pytest.approx(1.0, abs=1e-12)
    assert env.values[d > 0].max() < 1e-12


def test_onb_hap_errors_vanish():
    sys, lat = onb_system()
    fd = frame_data(sys)
    pair = gabor_pair(sys, sys.window, lat, f_duals=fd.duals)
    assert strong_hap_error(pair, 0) < 1e-12
    assert weak_hap_error(pair, 0) < 1e-12


def test_full_radius_reconstruction():
    pair = gaussian_pair()
    L = 48
    assert strong_hap_error(pair, L) < 1e-9
    assert weak_hap_error(pair, L) < 1e-9


def test_column_profile_onb():
    sys, lat = onb_system()
    pair = gabor_pair(sys, sys.window, lat)
    prof = column_decay_profile(pair, 2.0, [0, 8, 16])
    assert max(prof.eps) < 1e-12


def test_profiles_nonincreasing_guard():
    with pytest.raises(AssertionError):
        DecayProfile((0, 1), (0.1, 0.2), 2.0, "column")
    DecayProfile((0, 1), (0.2, 0.1), 2.0, "column")  # fine


def test_row_profile_brute_force():
    pair = gaussian_pair(24, 4, 6, with_duals=False)
    prof = row_decay_profile(pair, 2.0, [0, 6])
    P = pair.cross_mag() ** 2
    D = pair.pair_distances()
    for N, eps in zip(prof.N_values, prof.eps):
        expected = np.where(D > N, P, 0.0).sum(axis=1).max()
        assert eps == pytest.approx(expected, rel=1e-12)


def test_dual_envelope_needs_duals():
    pair = gaussian_pair(with_duals=False)
    with pytest.raises(ValueError):
        dual_localization_envelope(pair)


def test_bridge_checks_hold_on_gaussian_lattice():
    pair = gaussian_pair()
    checks = bridge_checks(pair, radii=[0, 6, 12, 24], p=2.0, with_weak=True)
    assert len(checks) > 0
    bad = [c for c in checks if not c.ok]
    assert bad == []


def test_molecule_envelope_single_atom():
    torus = TorusParams(32)
    g = gaussian_window(torus)
    ps = PointSet(torus, np.array([[4.0, 6.0]]))
    sys = GaborSystem(g, ps)
    env = molecule_envelope(sys.atoms, ps, g, RefLattice(4, 4))
    V = np.abs(stft(Signal(torus, sys.atoms[0]), g).values)
    assert np.allclose(env.grid, np.roll(V, shift=(-4, -6), axis=(0, 1)), atol=1e-14)
    assert env.quant_offset_max == 0.0
    # recentred envelope peaks at the origin
    assert env.grid[0, 0] == pytest.approx(env.grid.max(), rel=1e-12)


def test_molecule_envelope_quantization_report():
    torus = TorusParams(32)
    g = gaussian_window(torus)
    ps = PointSet(torus, np.array([[4.25, 6.0], [8.0, 12.5 - 1e-9]]))
    env = molecule_envelope(GaborSystem(g, ps).atoms, ps, g, RefLattice(4, 4))
    assert env.quant_offset_max == pytest.approx(0.5, abs=1e-6)
    assert env.quant_error_estimate() >= env.quant_offset_max * env.grid_modulus


def test_molecule_envelope_dominates_jittered_duals():
    torus = TorusParams(48)
    lat = RefLattice(4, 6)
    ps = jitter(lattice_points(lat, torus), 0.5, 2)
    sys = GaborSystem(gaussian_window(torus), ps)
    fd = frame_data(sys)
    env = molecule_envelope(fd.duals, ps, gaussian_window(torus), lat)
    lam = np.rint(ps.points).astype(int) % 48
    for vec, (lx, lw) in zip(fd.duals, lam):
        V = np.abs(stft(Signal(torus, vec), gaussian_window(torus)).values)
        assert np.all(np.roll(V, shift=(-lx, -lw), axis=(0, 1)) <= env.grid + 1e-12)
    assert np.isfinite(env.amalgam(1.0))
    assert env.amalgam(2.0) <= env.amalgam(1.0)


def test_molecule_envelope_shape_check():
    torus = TorusParams(32)
    g = gaussian_window(torus)
    ps = PointSet(torus, np.array([[0.0, 0.0]]))
    with pytest.raises(ValueError):
        molecule_envelope(np.zeros((2, 32)), ps, g, RefLattice(4, 4))
