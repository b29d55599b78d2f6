"""The gallery of boundary constructions and their published constants."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaborlab.counterexamples import (
    CONSTRUCTIONS,
    block_duals_formula,
    column_not_row_pair,
    double_index_pair,
    dual_localized_not_self,
    harmonic_block,
    index_map_density,
    infinite_density_bessel,
    no_hap_pair,
    perturbed_basis,
    random_frame_pair,
    relations_suite,
    verify_construction,
    weak_not_strong_pair,
)
from gaborlab.frames import frame_bounds_dense
from gaborlab.localization import column_decay_profile, strong_hap_error


@pytest.mark.parametrize("name", sorted(CONSTRUCTIONS))
def test_gallery_verifies(name):
    result = verify_construction(name)
    failed = [c for c in result["checks"] if not c["ok"]]
    assert result["all_ok"], failed


def test_harmonic_block_is_unitary():
    for n in (1, 2, 5, 16):
        F = harmonic_block(n)
        assert np.allclose(F @ F.conj().T, np.eye(n), atol=1e-12)
    # first column has the flat magnitude profile 1/sqrt(n)
    assert np.allclose(np.abs(harmonic_block(7)[:, 0]), 1 / np.sqrt(7))


def test_no_hap_column_tails_exact():
    # per-block column tail at retention radius N is exactly (n - N - 1)/n
    pair = no_hap_pair(16).localization_pair()
    prof = column_decay_profile(pair, 2.0, [0, 1, 3, 7])
    for N, eps in zip(prof.N_values, prof.eps):
        expected = max((n - N - 1) / n for n in range(1, 17) if n - N - 1 > 0)
        assert eps == pytest.approx(expected, abs=1e-12)


def test_no_hap_is_onb():
    abstract = no_hap_pair(12)
    A, B = frame_bounds_dense(abstract.f_vectors)
    assert A == pytest.approx(1.0, abs=1e-12)
    assert B == pytest.approx(1.0, abs=1e-12)
    # strong error at radius 0 matches the tail exactly: sqrt(max (n-1)/n)
    err = strong_hap_error(abstract.localization_pair(), 0)
    assert err == pytest.approx(np.sqrt(11 / 12), abs=1e-12)


def test_weak_not_strong_split():
    pair = weak_not_strong_pair(16).localization_pair()
    assert strong_hap_error(pair, 0) == pytest.approx(0.5 * np.sqrt(15 / 16), abs=1e-12)
    from gaborlab.localization import weak_hap_error

    assert weak_hap_error(pair, 0) < 1e-9


def test_perturbed_basis_exact_bounds():
    # A = (1 - 5^{-1/2})^2 and B = 9/4 for every M: the per-pair 2x2 blocks
    # decouple and the extremes sit at |j| = 1 and the diagonal tail
    for M in (8, 64):
        pair = perturbed_basis(M)
        A, B = frame_bounds_dense(pair.f_vectors)
        assert A == pytest.approx((1 - 5**-0.5) ** 2, abs=1e-10)
        assert B == pytest.approx(2.25, abs=1e-10)


def test_block_duals_biorthogonal():
    # one block: every vector leans on the first coordinate by 1/(2 sqrt n)
    n = 6
    B = np.eye(n, dtype=complex)
    B[1:, 0] = 1.0 / (2.0 * np.sqrt(n))
    D = block_duals_formula(n)
    assert np.allclose(D @ B.conj().T, np.eye(n), atol=1e-12)


def test_column_not_row_tails():
    # columns hold (n-1) entries of 1/(2 sqrt n): l2 tail (n-1)/(4n); rows decay
    pair = column_not_row_pair(8).localization_pair(with_f_duals=False)
    prof = column_decay_profile(pair, 2.0, [0])
    assert prof.eps[0] == pytest.approx(7 / 32, abs=1e-12)


def test_double_index_distribution():
    pair = double_index_pair(64)
    for r in (0.0, 1.0, 2.0, 5.0):
        lo, hi = index_map_density(pair, r)
        assert lo == pytest.approx(2.0, abs=1e-12)
        assert hi == pytest.approx(2.0, abs=1e-12)


def test_dual_localized_operator_gap():
    pair = dual_localized_not_self(32, c0=0.75)
    dim = pair.f_vectors.shape[1]  # indices -M..M, so 65 for M=32
    T = pair.f_vectors.T
    gap = np.linalg.norm(np.eye(dim) - T, ord=2) ** 2
    assert gap == pytest.approx(2 - 2 * 0.75, abs=1e-12)


def test_bessel_family_constants():
    M = 8
    pair = infinite_density_bessel(M)
    A, B = frame_bounds_dense(pair.f_vectors)
    assert B == pytest.approx(1.0, abs=1e-12)
    assert A == pytest.approx((1 - 4.0**-M) / 3, abs=1e-12)
    norms = np.linalg.norm(pair.f_vectors, axis=1)
    assert norms.min() == pytest.approx(2.0**-M, rel=1e-12)
    lo, hi = index_map_density(pair, 0.0)
    assert hi == pytest.approx(M, abs=1e-12)


def test_verify_construction_unknown_name():
    with pytest.raises(KeyError):
        verify_construction("does_not_exist")


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**31 - 1))
def test_bridge_inequalities_fuzz(seed):
    rng = np.random.default_rng(seed)
    pair = random_frame_pair(rng, dim_max=16)
    size = pair.group.size
    out = relations_suite(pair, radii=[0, size // 4, size // 2], with_weak=False)
    assert out["all_ok"], out["violations"]
