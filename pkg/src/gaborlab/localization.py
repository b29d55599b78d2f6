"""Localization envelopes, decay profiles, and approximation-property errors.

A localized pair is a frame F = (f_i) measured against a reference family
E = (e_j) indexed by a group G, together with a map a: i -> G placing each
frame element near a reference index.  Two geometries are supported:

* TorusLatticeGroup -- reference lattice on the L x L torus (Gabor systems),
  with the torus ell-infinity metric in samples;
* LineGroup -- integer indices 0..size-1 (abstract block constructions), with
  the usual absolute-difference metric.

Retention regions are closed balls: S(j; N) = {k in G : dist(k, j) <= N}, so
the profile parameter N is a radius.  Tail sums run over offsets strictly
beyond N, which makes the block constructions' published tail constants exact
(e.g. (n - N - 1)/n for the harmonic blocks).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from . import frames
from .pointset import PointSet, RefLattice, TorusParams, lattice_ids, lattice_points
from .signal import Signal, amalgam_norm, stft

__all__ = [
    "TorusLatticeGroup",
    "LineGroup",
    "LocalizationPair",
    "Envelope",
    "DecayProfile",
    "MoleculeEnvelope",
    "BridgeCheck",
    "gabor_pair",
    "localization_envelope",
    "self_localization_envelope",
    "dual_localization_envelope",
    "column_decay_profile",
    "row_decay_profile",
    "strong_hap_error",
    "weak_hap_error",
    "strong_dual_hap_error",
    "weak_dual_hap_error",
    "molecule_envelope",
    "bridge_checks",
]

_LSTSQ_RCOND = 1e-12  # rank-revealing cutoff for weak-error projections


class TorusLatticeGroup:
    """Reference-lattice index group on the torus, metric in real samples."""

    def __init__(self, torus: TorusParams, lat: RefLattice):
        lat.validate_for(torus)
        self.torus = torus
        self.lat = lat
        self.nx = torus.L // lat.a_step
        self.nw = torus.L // lat.b_step
        self.size = self.nx * self.nw
        self.n_offsets = self.size

    def offset_ids(self, a_ids, j_ids) -> np.ndarray:
        """Flat id of the group offset a - j (elementwise, broadcasting)."""
        a_ids = np.asarray(a_ids)
        j_ids = np.asarray(j_ids)
        dkx = (a_ids // self.nw - j_ids // self.nw) % self.nx
        dkw = (a_ids % self.nw - j_ids % self.nw) % self.nw
        return dkx * self.nw + dkw

    def offset_displacements(self) -> np.ndarray:
        """(n_offsets, 2) signed real displacements (dx, domega) per offset id."""
        L = self.torus.L
        ids = np.arange(self.n_offsets)
        dx = (ids // self.nw) * self.lat.a_step
        dw = (ids % self.nw) * self.lat.b_step
        dx = np.where(dx > L / 2, dx - L, dx)
        dw = np.where(dw > L / 2, dw - L, dw)
        return np.stack([dx, dw], axis=1).astype(float)

    def offset_distances(self) -> np.ndarray:
        return np.abs(self.offset_displacements()).max(axis=1)


class LineGroup:
    """Integer index group 0..size-1 with the absolute-difference metric."""

    def __init__(self, size: int):
        self.size = int(size)
        self.n_offsets = 2 * self.size - 1

    def offset_ids(self, a_ids, j_ids) -> np.ndarray:
        return np.asarray(a_ids) - np.asarray(j_ids) + (self.size - 1)

    def offset_displacements(self) -> np.ndarray:
        d = np.arange(-(self.size - 1), self.size, dtype=float)
        return np.stack([d, np.zeros_like(d)], axis=1)

    def offset_distances(self) -> np.ndarray:
        return np.abs(np.arange(-(self.size - 1), self.size, dtype=float))


@dataclass(frozen=True)
class LocalizationPair:
    """Frame stack F, reference stack E, index group, and the map a: i -> G."""

    f_vectors: np.ndarray = field(repr=False)
    e_vectors: np.ndarray = field(repr=False)
    group: object
    a_ids: np.ndarray = field(repr=False)
    f_duals: np.ndarray | None = field(repr=False, default=None)
    e_duals: np.ndarray | None = field(repr=False, default=None)
    name: str = ""

    def __post_init__(self):
        mF = self.f_vectors.shape[0]
        if self.e_vectors.shape[0] != self.group.size:
            raise ValueError("reference stack size must match the index group")
        if self.a_ids.shape != (mF,):
            raise ValueError("need one group id per frame element")

    def cross_mag(self) -> np.ndarray:
        """|<f_i, e_j>| with caching."""
        cached = self.__dict__.get("_cross")
        if cached is None:
            cached = np.abs(frames.cross_gram(self.f_vectors, self.e_vectors))
            self.__dict__["_cross"] = cached
        return cached

    def pair_distances(self) -> np.ndarray:
        """(mF, mE) distances dist(a(i), j)."""
        cached = self.__dict__.get("_dist")
        if cached is None:
            offs = self.group.offset_ids(self.a_ids[:, None], np.arange(self.group.size)[None, :])
            cached = self.group.offset_distances()[offs]
            self.__dict__["_dist"] = cached
        return cached


def gabor_pair(sys, ref_window: Signal, lat: RefLattice, f_duals=None, e_duals=None,
               name: str = "") -> LocalizationPair:
    """Localization pair of a Gabor system against a lattice reference system.

    The reference family is the Gabor system of ref_window over the full
    lattice, enumerated time-major so flat lattice ids match the group's.
    """
    from .gabor import GaborSystem

    torus = sys.torus
    group = TorusLatticeGroup(torus, lat)
    ref_sys = GaborSystem(ref_window, lattice_points(lat, torus))
    return LocalizationPair(
        f_vectors=sys.atoms,
        e_vectors=ref_sys.atoms,
        group=group,
        a_ids=lattice_ids(sys.points, lat),
        f_duals=f_duals,
        e_duals=e_duals,
        name=name,
    )


@dataclass(frozen=True)
class Envelope:
    """Offset-indexed envelope values[k] = max over pairs at offset k."""

    group: object
    values: np.ndarray = field(repr=False)

    def p_norm(self, p: float) -> float:
        if np.isinf(p):
            return float(self.values.max()) if self.values.size else 0.0
        return float((self.values**p).sum() ** (1.0 / p))

    def tail_mass(self, p: float, radius: float) -> float:
        """Sum of values**p over offsets strictly beyond the radius."""
        mask = self.group.offset_distances() > radius
        return float((self.values[mask] ** p).sum())

    def save_csv(self, path) -> None:
        disp = self.group.offset_displacements()
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["dx", "domega", "value"])
            for (dx, dw), v in zip(disp, self.values):
                w.writerow([f"{dx:.15g}", f"{dw:.15g}", f"{v:.15g}"])


def _scatter_max_envelope(group, offset_ids: np.ndarray, mags: np.ndarray) -> Envelope:
    values = np.zeros(group.n_offsets)
    np.maximum.at(values, offset_ids.ravel(), mags.ravel())
    env = Envelope(group=group, values=values)
    # exhaustive domination audit: every pair magnitude is covered by its offset
    if not np.all(mags <= values[offset_ids] + 1e-15):
        raise AssertionError("envelope fails to dominate its own cross-Gram")
    return env


def localization_envelope(pair: LocalizationPair) -> Envelope:
    """values[k] = max_i |<f_i, e_{a(i)-k}>| over group offsets k."""
    j_ids = np.arange(pair.group.size)
    offs = pair.group.offset_ids(pair.a_ids[:, None], j_ids[None, :])
    return _scatter_max_envelope(pair.group, offs, pair.cross_mag())


def self_localization_envelope(pair: LocalizationPair) -> Envelope:
    """values[k] = max |<f_i, f_j>| over pairs with a(i) - a(j) = k."""
    mags = np.abs(frames.gram(pair.f_vectors))
    offs = pair.group.offset_ids(pair.a_ids[:, None], pair.a_ids[None, :])
    return _scatter_max_envelope(pair.group, offs, mags)


def dual_localization_envelope(pair: LocalizationPair) -> Envelope:
    """values[k] = max |<f_i, dual_j>| over pairs with a(i) - a(j) = k."""
    if pair.f_duals is None:
        raise ValueError("pair carries no duals")
    mags = np.abs(frames.cross_gram(pair.f_vectors, pair.f_duals))
    offs = pair.group.offset_ids(pair.a_ids[:, None], pair.a_ids[None, :])
    return _scatter_max_envelope(pair.group, offs, mags)


@dataclass(frozen=True)
class DecayProfile:
    """eps as a function of the retention radius N (nonincreasing by inclusion)."""

    N_values: tuple
    eps: tuple
    p: float
    kind: str

    def __post_init__(self):
        e = np.asarray(self.eps)
        if np.any(np.diff(e) > 1e-12):
            raise AssertionError("decay profile must be nonincreasing in the radius")

    def save_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "eps"])
            for n, e in zip(self.N_values, self.eps):
                w.writerow([f"{n:.15g}", f"{e:.15g}"])


def column_decay_profile(pair: LocalizationPair, p: float, radii) -> DecayProfile:
    """eps[N] = max_j sum_{i : dist(a(i), j) > N} |<f_i, e_j>|**p."""
    radii = sorted(radii)
    P = pair.cross_mag() ** p
    D = pair.pair_distances()
    eps = [float(np.where(D > N, P, 0.0).sum(axis=0).max()) for N in radii]
    return DecayProfile(tuple(radii), tuple(eps), p, "column")


def row_decay_profile(pair: LocalizationPair, p: float, radii) -> DecayProfile:
    """eps[N] = max_i sum_{j : dist(a(i), j) > N} |<f_i, e_j>|**p."""
    radii = sorted(radii)
    P = pair.cross_mag() ** p
    D = pair.pair_distances()
    eps = [float(np.where(D > N, P, 0.0).sum(axis=1).max()) for N in radii]
    return DecayProfile(tuple(radii), tuple(eps), p, "row")


def strong_hap_error(pair: LocalizationPair, radius: float) -> float:
    """max_j || e_j - sum_{i in I_N(j)} <e_j, f_i> dual_i ||."""
    if pair.f_duals is None:
        raise ValueError("pair carries no duals")
    G = frames.cross_gram(pair.f_vectors, pair.e_vectors)
    keep = pair.pair_distances() <= radius
    approx = (np.conj(G) * keep).T @ pair.f_duals
    errs = np.linalg.norm(pair.e_vectors - approx, axis=1)
    return float(errs.max())


def weak_hap_error(pair: LocalizationPair, radius: float) -> float:
    """max_j dist(e_j, span{dual_i : i in I_N(j)}) via rank-revealing least squares."""
    if pair.f_duals is None:
        raise ValueError("pair carries no duals")
    keep = pair.pair_distances() <= radius
    worst = 0.0
    for j in range(pair.group.size):
        cols = pair.f_duals[keep[:, j]]
        e = pair.e_vectors[j]
        if cols.shape[0] == 0:
            worst = max(worst, float(np.linalg.norm(e)))
            continue
        sol, *_ = np.linalg.lstsq(cols.T, e, rcond=_LSTSQ_RCOND)
        worst = max(worst, float(np.linalg.norm(e - cols.T @ sol)))
    return worst


def strong_dual_hap_error(pair: LocalizationPair, radius: float) -> float:
    """max_i || f_i - sum_{j in S_N(a(i))} <f_i, e_j> e_dual_j ||."""
    if pair.e_duals is None:
        raise ValueError("pair carries no reference duals")
    G = frames.cross_gram(pair.f_vectors, pair.e_vectors)
    keep = pair.pair_distances() <= radius
    approx = (G * keep) @ pair.e_duals
    errs = np.linalg.norm(pair.f_vectors - approx, axis=1)
    return float(errs.max())


def weak_dual_hap_error(pair: LocalizationPair, radius: float) -> float:
    """max_i dist(f_i, span{e_dual_j : j in S_N(a(i))})."""
    if pair.e_duals is None:
        raise ValueError("pair carries no reference duals")
    keep = pair.pair_distances() <= radius
    worst = 0.0
    for i in range(pair.f_vectors.shape[0]):
        cols = pair.e_duals[keep[i]]
        f = pair.f_vectors[i]
        if cols.shape[0] == 0:
            worst = max(worst, float(np.linalg.norm(f)))
            continue
        sol, *_ = np.linalg.lstsq(cols.T, f, rcond=_LSTSQ_RCOND)
        worst = max(worst, float(np.linalg.norm(f - cols.T @ sol)))
    return worst


# -- Gabor molecule envelope --------------------------------------------------


@dataclass(frozen=True)
class MoleculeEnvelope:
    """Common STFT envelope Gamma(z) = max_lam |V_gamma f_lam(z + lam)|.

    Elements' nominal locations quantize to the nearest grid point before the
    shift; quant_offset_max records the largest ell-infinity rounding offset
    and grid_modulus the largest one-sample increment of Gamma, so
    quant_offset_max * grid_modulus * 2 estimates the quantization error.
    """

    torus: TorusParams
    lat: RefLattice
    grid: np.ndarray = field(repr=False)
    quant_offset_max: float
    grid_modulus: float

    def cell_sups(self) -> np.ndarray:
        L = self.torus.L
        a, b = self.lat.a_step, self.lat.b_step
        return self.grid.reshape(L // a, a, L // b, b).max(axis=(1, 3))

    def amalgam(self, p: float) -> float:
        return amalgam_norm(self.grid, p, self.lat, self.torus)

    def amalgam_tail_fraction(self, p: float, radius: float) -> float:
        """Fraction of the amalgam p-mass in cells whose center is beyond the radius."""
        L = self.torus.L
        a, b = self.lat.a_step, self.lat.b_step
        sups = self.cell_sups() ** p
        cx = np.arange(0, L, a, dtype=float) + a / 2
        cw = np.arange(0, L, b, dtype=float) + b / 2
        cx = np.minimum(cx, L - cx)
        cw = np.minimum(cw, L - cw)
        far = np.maximum(cx[:, None], cw[None, :]) > radius
        total = float(sups.sum())
        return float(sups[far].sum() / total) if total > 0 else 0.0

    def quant_error_estimate(self) -> float:
        return 2.0 * self.quant_offset_max * self.grid_modulus


def molecule_envelope(vectors: np.ndarray, points: PointSet, gamma: Signal,
                      lat: RefLattice) -> MoleculeEnvelope:
    """Envelope of |V_gamma f_lam| recentered at each element's nominal location."""
    torus = points.torus
    L = torus.L
    vectors = np.asarray(vectors, dtype=complex)
    if vectors.shape != (len(points), L):
        raise ValueError("need one length-L vector per point")
    grid = np.zeros((L, L))
    lam_int = np.rint(points.points).astype(int) % L
    for vec, (lx, lw) in zip(vectors, lam_int):
        V = np.abs(stft(Signal(torus, vec), gamma).values)
        np.maximum(grid, np.roll(V, shift=(-lx, -lw), axis=(0, 1)), out=grid)
    quant = float(np.abs(points.points - np.rint(points.points)).max()) if len(points) else 0.0
    modulus = max(
        float(np.abs(np.roll(grid, -1, axis=0) - grid).max()),
        float(np.abs(np.roll(grid, -1, axis=1) - grid).max()),
    )
    return MoleculeEnvelope(torus=torus, lat=lat, grid=grid,
                            quant_offset_max=quant, grid_modulus=modulus)


# -- quantitative bridges between decay, envelopes, and approximation ---------


@dataclass(frozen=True)
class BridgeCheck:
    """One verified inequality lhs <= rhs (with a float-roundoff guard)."""

    name: str
    radius: float
    lhs: float
    rhs: float

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs * (1 + 1e-9) + 1e-12


def bridge_checks(pair: LocalizationPair, radii, p: float = 2.0,
                  with_weak: bool = True) -> list[BridgeCheck]:
    """Evaluate the quantitative decay/approximation bridges at each radius.

    Emitted inequalities (all exact theorems, asserted numerically):

    * strong^2 <= (1/A_F) * column_eps          (frame F, p = 2)
    * column_eps <= C_F * strong, C_F = max_j ||S_F e_j||
    * strong_dual^2 <= (1/A_E) * row_eps        (frame E, p = 2)
    * row_eps <= C_E * strong_dual, C_E = max_i ||S_E f_i||
    * weak <= strong and weak_dual <= strong_dual
    * column_eps <= K * envelope tail, row_eps <= envelope tail
      (K = max multiplicity of the index map)
    """
    checks: list[BridgeCheck] = []
    radii = sorted(radii)

    col = column_decay_profile(pair, p, radii)
    row = row_decay_profile(pair, p, radii)
    env = localization_envelope(pair)
    counts = np.bincount(pair.a_ids, minlength=pair.group.size)
    K = int(counts.max()) if counts.size else 0

    S_F = frames.frame_matrix(pair.f_vectors)
    C_F = float(np.linalg.norm(pair.e_vectors @ S_F.conj(), axis=1).max())
    A_F, B_F = frames.frame_bounds_dense(pair.f_vectors)

    have_f_frame = pair.f_duals is not None and frames.is_frame(A_F, B_F)
    have_e_frame = pair.e_duals is not None
    if have_e_frame:
        S_E = frames.frame_matrix(pair.e_vectors)
        C_E = float(np.linalg.norm(pair.f_vectors @ S_E.conj(), axis=1).max())
        A_E, B_E = frames.frame_bounds_dense(pair.e_vectors)
        have_e_frame = frames.is_frame(A_E, B_E)

    for N, col_eps, row_eps in zip(col.N_values, col.eps, row.eps):
        tail = env.tail_mass(p, N)
        checks.append(BridgeCheck("column_eps<=K*env_tail", N, col_eps, K * tail))
        checks.append(BridgeCheck("row_eps<=env_tail", N, row_eps, tail))
        if have_f_frame and p == 2.0:
            strong = strong_hap_error(pair, N)
            checks.append(BridgeCheck("strong^2<=col_eps/A", N, strong**2, col_eps / A_F))
            checks.append(BridgeCheck("col_eps<=C*strong", N, col_eps, C_F * strong))
            if with_weak:
                weak = weak_hap_error(pair, N)
                checks.append(BridgeCheck("weak<=strong", N, weak, strong))
        if have_e_frame and p == 2.0:
            strong_d = strong_dual_hap_error(pair, N)
            checks.append(BridgeCheck("strong_dual^2<=row_eps/A_E", N, strong_d**2,
                                      row_eps / A_E))
            checks.append(BridgeCheck("row_eps<=C_E*strong_dual", N, row_eps,
                                      C_E * strong_d))
            if with_weak:
                weak_d = weak_dual_hap_error(pair, N)
                checks.append(BridgeCheck("weak_dual<=strong_dual", N, weak_d, strong_d))
    return checks
