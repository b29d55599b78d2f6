"""Abstract frame constructions separating the localization notions.

Each construction lives in a finite block direct sum: block n carries an
n-dimensional space with its standard basis, blocks are assembled in order
n = 1..n_max (an optional identity tail mirrors the untouched factor of the
infinite constructions and contributes zero to every tail sum).  The index
geometry is the integer line (LineGroup); retention uses closed balls of
radius N, under which the published tail constants are exact, e.g. the
harmonic-block column tail (n - N - 1)/n.

Conventions: `frame bounds` are eigenvalue-level (extremes of the frame
operator spectrum), while `riesz_bounds` are norm-level singular values of the
synthesis map -- each matches the constants its construction advertises
([1/4, 9/4] for the perturbed basis, [1/2, 3/2] for the column/row blocks).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import frames
from .localization import LineGroup, LocalizationPair, bridge_checks

__all__ = [
    "AbstractPair",
    "harmonic_block",
    "no_hap_pair",
    "weak_not_strong_pair",
    "perturbed_basis",
    "column_not_row_pair",
    "block_duals_formula",
    "double_index_pair",
    "dual_localized_not_self",
    "infinite_density_bessel",
    "index_map_density",
    "relative_measure_against",
    "relations_suite",
    "random_frame_pair",
    "CONSTRUCTIONS",
    "verify_construction",
]


@dataclass(frozen=True)
class AbstractPair:
    """(F, E, a) on the integer line: rows of f_vectors against rows of e_vectors."""

    name: str
    f_vectors: np.ndarray = field(repr=False)
    e_vectors: np.ndarray = field(repr=False)
    a_ids: np.ndarray = field(repr=False)
    block_dims: tuple = ()

    @property
    def dim(self) -> int:
        return self.f_vectors.shape[1]

    @property
    def group(self) -> LineGroup:
        return LineGroup(self.e_vectors.shape[0])

    def localization_pair(self, with_f_duals: bool = True,
                          with_e_duals: bool = False) -> LocalizationPair:
        f_duals = frames.canonical_duals(self.f_vectors) if with_f_duals else None
        e_duals = frames.canonical_duals(self.e_vectors) if with_e_duals else None
        return LocalizationPair(
            f_vectors=self.f_vectors,
            e_vectors=self.e_vectors,
            group=self.group,
            a_ids=self.a_ids,
            f_duals=f_duals,
            e_duals=e_duals,
            name=self.name,
        )

    def frame_bounds(self) -> tuple[float, float]:
        return frames.frame_bounds_dense(self.f_vectors)

    def block_slices(self):
        start = 0
        for n in self.block_dims:
            yield n, slice(start, start + n)
            start += n


def harmonic_block(n: int) -> np.ndarray:
    """Orthonormal harmonic basis of C^n: f_k(j) = exp(2*pi*i*j*k/n)/sqrt(n), 1-based."""
    jk = np.arange(1, n + 1)
    return np.exp(2j * np.pi * np.outer(jk, jk) / n) / np.sqrt(n)


def _block_diag(blocks, tail_dim: int = 0) -> tuple[np.ndarray, tuple]:
    dims = [b.shape[1] for b in blocks]
    dim = sum(dims) + tail_dim
    rows = sum(b.shape[0] for b in blocks) + tail_dim
    out = np.zeros((rows, dim), dtype=complex)
    r = c = 0
    if tail_dim:
        out[:tail_dim, :tail_dim] = np.eye(tail_dim)
        r = c = tail_dim
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out, tuple(dims)


def no_hap_pair(n_max: int, tail_dim: int = 0) -> AbstractPair:
    """Harmonic blocks against the standard basis: an ONB with no approximation decay.

    Column tails are exactly (n - N - 1)/n per block at retention radius N,
    so neither decay nor the approximation property survives n -> infinity.
    """
    F, dims = _block_diag([harmonic_block(n) for n in range(1, n_max + 1)], tail_dim)
    E = np.eye(F.shape[1], dtype=complex)
    return AbstractPair("no_hap", F, E, np.arange(F.shape[0]), (tail_dim,) * bool(tail_dim) + dims)


def weak_not_strong_pair(n_max: int) -> AbstractPair:
    """Parseval merge of harmonic and standard blocks: weak decay without strong.

    Per block, elements interleave f_i/sqrt(2) and e_i/sqrt(2), both indexed at
    e_i's position.  The merge is a Parseval frame (A = B = 1); each e_j lies in
    the retained span at radius 0 (weak error 0) while the strong error stays
    >= (1/2)*sqrt((n - N - 1)/n) on block n.
    """
    blocks = []
    for n in range(1, n_max + 1):
        H = harmonic_block(n)
        I = np.eye(n, dtype=complex)
        merged = np.empty((2 * n, n), dtype=complex)
        merged[0::2] = H / np.sqrt(2)
        merged[1::2] = I / np.sqrt(2)
        blocks.append(merged)
    F, dims = _block_diag(blocks)
    dim = F.shape[1]
    E = np.eye(dim, dtype=complex)
    a = np.repeat(np.arange(dim), 2)
    return AbstractPair("weak_not_strong", F, E, a, dims)


def perturbed_basis(M: int) -> AbstractPair:
    """Riesz basis f_j = e_j + (4 + |j|)**-0.5 * e_{-j} on indices j in [-M, M].

    Eigenvalue-level frame bounds lie in [1/4, 9/4]; the index pairs {j, -j}
    decouple into 2x2 blocks with eigenvalues (1 +- (4 + |j|)**-0.5)**2, so the
    exact lower bound is (1 - 5**-0.5)**2 ~ 0.3056 for every M >= 1 and the
    upper bound is exactly 9/4 (attained by f_0 = (3/2) e_0).
    """
    dim = 2 * M + 1
    F = np.eye(dim, dtype=complex)
    js = np.arange(-M, M + 1)
    for pos, j in enumerate(js):
        F[pos, M - j] += (4.0 + abs(j)) ** -0.5
    E = np.eye(dim, dtype=complex)
    return AbstractPair("perturbed_basis", F, E, np.arange(dim))


def column_not_row_pair(n_max: int) -> AbstractPair:
    """Riesz blocks f_1 = e_1, f_i = e_i + e_1/(2*sqrt(n)): column decay, no row decay.

    Within block n the biorthogonal duals are dual_1 = e_1 - (1/(2*sqrt(n))) *
    sum_{j>=2} e_j and dual_i = e_i; the mass sum_{i>=2} |<f_i, e_1>|^2 =
    (n-1)/(4n) sits in one reference column, so the profile indexed by the
    construction's own map fails while its transpose decays.
    """
    blocks = []
    for n in range(1, n_max + 1):
        B = np.eye(n, dtype=complex)
        B[1:, 0] = 1.0 / (2.0 * np.sqrt(n))
        blocks.append(B)
    F, dims = _block_diag(blocks)
    E = np.eye(F.shape[1], dtype=complex)
    return AbstractPair("column_not_row", F, E, np.arange(F.shape[0]), dims)


def block_duals_formula(n: int) -> np.ndarray:
    """Closed-form biorthogonal duals of one column_not_row block."""
    D = np.eye(n, dtype=complex)
    D[0, 1:] = -1.0 / (2.0 * np.sqrt(n))
    return D


def double_index_pair(M: int) -> AbstractPair:
    """ONB double-indexed onto M positions: a(2n) = a(2n+1) = n.

    The index-map density is exactly 2 at every center and radius, the
    relative measure against the even subfamily is exactly 1/2, and their
    product is 1.
    """
    dim = 2 * M
    F = np.eye(dim, dtype=complex)
    E = F[0::2].copy()
    a = np.repeat(np.arange(M), 2)
    return AbstractPair("double_index", F, E, a)


def dual_localized_not_self(M: int, c0: float = 0.75, tail_exponent: float = 1.0) -> AbstractPair:
    """Riesz basis whose duals localize perfectly while the basis itself does not.

    f_0 = sum c_i e_i with c_0 = c0 in (1/2, 1) and c_i proportional to
    |i|**(-tail_exponent) / log(2 + |i|) for 0 < |i| <= M, scaled so that
    sum c_i**2 = 1; f_j = e_j otherwise.  The perturbation I - T is rank one
    with squared operator norm exactly 2 - 2*c0 < 1, so T is invertible and F
    is a Riesz basis; biorthogonality makes the dual envelope an indicator of
    offset 0, while sum c_i diverges with M, so the self envelope has growing
    ell^1 mass.
    """
    if not 0.5 < c0 < 1.0:
        raise ValueError("need 1/2 < c0 < 1")
    if not 0.5 < tail_exponent <= 1.0:
        raise ValueError("tail exponent must lie in (1/2, 1] for divergent ell^1 mass")
    dim = 2 * M + 1
    js = np.arange(-M, M + 1)
    w = np.zeros(dim)
    nz = js != 0
    w[nz] = np.abs(js[nz]) ** (-tail_exponent) / np.log(2.0 + np.abs(js[nz]))
    w *= np.sqrt((1.0 - c0**2) / (w**2).sum())
    c = w.copy()
    c[M] = c0
    F = np.eye(dim, dtype=complex)
    F[M] = c
    E = np.eye(dim, dtype=complex)
    return AbstractPair("dual_localized_not_self", F, E, np.arange(dim))


def infinite_density_bessel(M: int, n_pos: int | None = None) -> AbstractPair:
    """Bessel family with M elements piled onto one index: density without bounds.

    F = {e_n}_{n=1..n_pos} plus {2**(-k) e_0}_{k=1..M}, all of the latter
    indexed at position 0.  The Bessel bound stays below 4/3 + 1, the envelope
    is the indicator of offset 0, the multiplicity at 0 is M, and the smallest
    vector norm is 2**(-M).
    """
    if n_pos is None:
        n_pos = M
    dim = n_pos + 1
    E = np.eye(dim, dtype=complex)
    rows = [E[k] for k in range(1, n_pos + 1)]
    a = list(range(1, n_pos + 1))
    for k in range(1, M + 1):
        rows.append(2.0 ** (-k) * E[0])
        a.append(0)
    return AbstractPair("infinite_density_bessel", np.stack(rows), E,
                        np.asarray(a, dtype=np.int64))


# -- index-map density and relative measure for abstract pairs ----------------


def index_map_density(pair: AbstractPair, radius: float) -> tuple[float, float]:
    """(min, max) over centers of |I_N(j)| / |S_N(j)| with closed balls of the radius."""
    group = pair.group
    js = np.arange(group.size)
    dist_elems = np.abs(js[:, None] - js[None, :])  # dist between reference indices
    S_sizes = (dist_elems <= radius).sum(axis=0)
    dist_map = np.abs(pair.a_ids[:, None] - js[None, :])
    I_sizes = (dist_map <= radius).sum(axis=0)
    ratios = I_sizes / S_sizes
    return float(ratios.min()), float(ratios.max())


def relative_measure_against(pair: AbstractPair, subset_vectors: np.ndarray,
                             radius: float) -> tuple[float, float]:
    """(min, max) over centers of the local average of Re<P f_i, dual_i>.

    P projects onto the span of subset_vectors (orthonormalized by QR); the
    average at center j runs over I_N(j) = {i : |a(i) - j| <= radius}.
    """
    duals = frames.canonical_duals(pair.f_vectors)
    Q = np.linalg.qr(np.asarray(subset_vectors, dtype=complex).T)[0].T
    proj = (pair.f_vectors @ Q.conj().T) @ Q
    terms = np.real(np.einsum("ij,ij->i", proj, duals.conj()))
    js = np.arange(pair.group.size)
    dist_map = np.abs(pair.a_ids[:, None] - js[None, :])
    keep = dist_map <= radius
    sizes = keep.sum(axis=0)
    ok = sizes > 0
    avgs = (terms[:, None] * keep).sum(axis=0)[ok] / sizes[ok]
    return float(avgs.min()), float(avgs.max())


# -- implication fuzzing -------------------------------------------------------


def relations_suite(pair: LocalizationPair, radii, p: float = 2.0,
                    with_weak: bool = True) -> dict:
    """Evaluate every quantitative bridge on the pair; returns checks + verdict."""
    checks = bridge_checks(pair, radii, p=p, with_weak=with_weak)
    return {
        "name": pair.name,
        "checks": checks,
        "all_ok": all(c.ok for c in checks),
        "violations": [c for c in checks if not c.ok],
    }


# -- published-constant verification (shared by the CLI and the test suite) ----


def _eq(name: str, value: float, target: float, tol: float) -> dict:
    return {"name": name, "value": float(value), "target": float(target),
            "tol": tol, "ok": bool(abs(value - target) <= tol)}


def _ge(name: str, value: float, target: float) -> dict:
    return {"name": name, "value": float(value), "target": float(target),
            "tol": None, "ok": bool(value >= target)}


def _le(name: str, value: float, target: float) -> dict:
    return {"name": name, "value": float(value), "target": float(target),
            "tol": None, "ok": bool(value <= target)}


def _verify_no_hap(size: int) -> list[dict]:
    from .localization import column_decay_profile, strong_hap_error

    pair = no_hap_pair(size)
    A, B = pair.frame_bounds()
    lp = pair.localization_pair()
    radii = [0, size // 2]
    prof = column_decay_profile(lp, 2.0, radii)
    checks = [
        _eq("frame_bound_A", A, 1.0, 1e-10),
        _eq("frame_bound_B", B, 1.0, 1e-10),
        _eq("column_tail_radius_0", prof.eps[0], (size - 1) / size, 1e-12),
        _eq("column_tail_radius_half", prof.eps[1],
            (size - size // 2 - 1) / size, 1e-12),
        _eq("strong_error_sq_equals_tail", strong_hap_error(lp, 0) ** 2,
            prof.eps[0], 1e-12),
    ]
    return checks


def _verify_weak_not_strong(size: int) -> list[dict]:
    from .localization import strong_hap_error, weak_hap_error

    pair = weak_not_strong_pair(size)
    A, B = pair.frame_bounds()
    lp = pair.localization_pair()
    strong0 = strong_hap_error(lp, 0)
    return [
        _eq("parseval_A", A, 1.0, 1e-10),
        _eq("parseval_B", B, 1.0, 1e-10),
        _eq("weak_error_radius_0", weak_hap_error(lp, 0), 0.0, 1e-9),
        _eq("strong_error_radius_0", strong0,
            0.5 * np.sqrt((size - 1) / size), 1e-12),
    ]


def _verify_perturbed_basis(size: int) -> list[dict]:
    A, B = perturbed_basis(size).frame_bounds()
    return [
        _eq("lower_bound_exact", A, (1 - 5**-0.5) ** 2, 1e-10),
        _eq("upper_bound_exact", B, 2.25, 1e-10),
        _ge("lower_bound_in_published_range", A, 0.25 - 1e-10),
        _le("upper_bound_in_published_range", B, 2.25 + 1e-10),
    ]


def _verify_column_not_row(size: int) -> list[dict]:
    pair = column_not_row_pair(size)
    s_min, s_max = frames.riesz_bounds(pair.f_vectors)
    n = size
    block = np.eye(n, dtype=complex)
    block[1:, 0] = 1.0 / (2.0 * np.sqrt(n))
    duals = frames.canonical_duals(block)
    dual_err = float(np.abs(duals - block_duals_formula(n)).max())
    col_tail = float((np.abs(block[1:, 0]) ** 2).sum())
    dual_row_tail = float((np.abs(duals[0, 1:]) ** 2).sum())
    return [
        _ge("riesz_lower_published", s_min, 0.5 - 1e-10),
        _le("riesz_upper_published", s_max, 1.5 + 1e-10),
        _eq("duals_match_closed_form", dual_err, 0.0, 1e-10),
        _eq("column_tail_largest_block", col_tail, (n - 1) / (4 * n), 1e-12),
        _eq("dual_row_tail_largest_block", dual_row_tail, (n - 1) / (4 * n), 1e-12),
    ]


def _verify_double_index(size: int) -> list[dict]:
    pair = double_index_pair(size)
    checks = []
    for r in (0, 1, 2, 5):
        lo, hi = index_map_density(pair, r)
        checks.append(_eq(f"density_min_radius_{r}", lo, 2.0, 1e-12))
        checks.append(_eq(f"density_max_radius_{r}", hi, 2.0, 1e-12))
    m_lo, m_hi = relative_measure_against(pair, pair.e_vectors, radius=3)
    checks.append(_eq("relative_measure_min", m_lo, 0.5, 1e-12))
    checks.append(_eq("relative_measure_max", m_hi, 0.5, 1e-12))
    checks.append(_eq("density_times_measure", 2.0 * m_lo, 1.0, 1e-12))
    return checks


def _verify_dual_localized_not_self(size: int) -> list[dict]:
    from .localization import dual_localization_envelope, self_localization_envelope

    c0 = 0.75
    pair = dual_localized_not_self(size, c0=c0)
    A, B = pair.frame_bounds()
    T = pair.f_vectors.T  # operator sending e_j to f_j
    pert_sq = float(np.linalg.norm(np.eye(pair.dim) - T, ord=2) ** 2)
    lp = pair.localization_pair()
    dual_env = dual_localization_envelope(lp)
    zero_off = lp.group.size - 1  # offset id of 0 on the line
    off_mask = np.arange(dual_env.values.size) != zero_off
    self_env = self_localization_envelope(lp)
    return [
        _eq("perturbation_norm_sq", pert_sq, 2.0 - 2.0 * c0, 1e-12),
        _ge("riesz_basis_lower_bound", A, 1e-6),
        _eq("dual_envelope_off_origin", float(dual_env.values[off_mask].max()), 0.0, 1e-12),
        _eq("dual_envelope_at_origin", float(dual_env.values[zero_off]), 1.0, 1e-12),
        _ge("self_envelope_l1_mass", self_env.p_norm(1.0), 2.0),
    ]


def _verify_infinite_density_bessel(size: int) -> list[dict]:
    pair = infinite_density_bessel(size)
    A, B = pair.frame_bounds()
    mult = int((pair.a_ids == 0).sum())
    min_norm = float(np.linalg.norm(pair.f_vectors, axis=1).min())
    _, dens_max = index_map_density(pair, 0)
    return [
        _eq("bessel_bound", B, 1.0, 1e-12),
        _eq("smallest_eigenvalue", A, (1 - 4.0**-size) / 3.0, 1e-12),
        _eq("multiplicity_at_origin", mult, size, 0),
        _eq("min_vector_norm", min_norm, 2.0**-size, 1e-12),
        _eq("density_max_radius_0", dens_max, float(size), 1e-12),
    ]


CONSTRUCTIONS = {
    "no_hap": (_verify_no_hap, 16),
    "weak_not_strong": (_verify_weak_not_strong, 16),
    "perturbed_basis": (_verify_perturbed_basis, 64),
    "column_not_row": (_verify_column_not_row, 16),
    "double_index": (_verify_double_index, 64),
    "dual_localized_not_self": (_verify_dual_localized_not_self, 64),
    "infinite_density_bessel": (_verify_infinite_density_bessel, 8),
}


def verify_construction(name: str, size: int | None = None) -> dict:
    """Check a named construction's published constants; returns the check list."""
    if name not in CONSTRUCTIONS:
        raise KeyError(f"unknown construction {name!r}; choose from {sorted(CONSTRUCTIONS)}")
    fn, default_size = CONSTRUCTIONS[name]
    size = default_size if size is None else int(size)
    checks = fn(size)
    return {"name": name, "size": size, "checks": checks,
            "all_ok": all(c["ok"] for c in checks)}


def random_frame_pair(rng: np.random.Generator, dim_max: int = 40) -> LocalizationPair:
    """Random localized pair for fuzzing: generic frame F, frame reference E."""
    from .errors import NotAFrameError

    while True:
        dim = int(rng.integers(4, dim_max + 1))
        mF = int(rng.integers(dim, 2 * dim + 1))
        F = rng.standard_normal((mF, dim)) + 1j * rng.standard_normal((mF, dim))
        if rng.random() < 0.5:
            E = np.linalg.qr(rng.standard_normal((dim, dim))
                             + 1j * rng.standard_normal((dim, dim)))[0]
        else:
            mE = int(rng.integers(dim, 2 * dim + 1))
            E = rng.standard_normal((mE, dim)) + 1j * rng.standard_normal((mE, dim))
        E = E / np.linalg.norm(E, axis=1, keepdims=True)
        a = rng.integers(0, E.shape[0], size=mF)
        try:
            return LocalizationPair(
                f_vectors=F,
                e_vectors=E,
                group=LineGroup(E.shape[0]),
                a_ids=a,
                f_duals=frames.canonical_duals(F),
                e_duals=frames.canonical_duals(E),
                name="fuzz",
            )
        except NotAFrameError:  # pathological draw, extremely rare
            continue
