"""Finite signals, time-frequency shifts, windows, and the sampled STFT.

Signals are complex vectors indexed by Z_L.  The DFT convention is the
unnormalized forward transform fhat(k) = sum_n f(n) exp(-2*pi*i*k*n/L), i.e.
numpy.fft.fft.  Translation cyclically shifts by round(x) samples so the
operator stays exactly unitary; modulation multiplies sample n by
exp(2*pi*i*omega*n/L) and accepts real omega as-is.  The combined tf_shift
quantizes both coordinates to the nearest integer (see its docstring), so
point sets keep real coordinates while realized system elements live on the
grid.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import WindowError
from .pointset import RefLattice, TorusParams

__all__ = [
    "Signal",
    "StftGrid",
    "translate",
    "modulate",
    "tf_shift",
    "gaussian_window",
    "box_window",
    "cosine_bump_window",
    "stft",
    "mp_norm",
    "amalgam_norm",
]


@dataclass(frozen=True)
class Signal:
    """A complex vector on Z_L."""

    torus: TorusParams
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=complex)
        if arr.shape != (self.torus.L,):
            raise ValueError(f"expected {self.torus.L} samples, got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.samples))

    def inner(self, other: "Signal") -> complex:
        """<self, other> = sum self * conj(other)."""
        return complex(np.vdot(other.samples, self.samples))


def translate(f: Signal, x: float) -> Signal:
    """Cyclic shift by round(x) samples: (T_x f)(n) = f(n - round(x))."""
    return Signal(f.torus, np.roll(f.samples, int(np.rint(x))))


def modulate(f: Signal, omega: float) -> Signal:
    """(M_omega f)(n) = exp(2*pi*i*omega*n/L) f(n); omega may be real."""
    L = f.torus.L
    phase = np.exp(2j * np.pi * omega * np.arange(L) / L)
    return Signal(f.torus, phase * f.samples)


def tf_shift(f: Signal, x: float, omega: float) -> Signal:
    """Time-frequency shift M_omega T_x with both offsets quantized to the grid.

    Fractional time shifts would require an interpolation kernel; fractional
    frequencies would place a phase seam somewhere on the cycle (exp(2*pi*i*
    omega*n/L) is not L-periodic in n unless omega is an integer), leaking
    energy across the whole frequency axis and breaking the covariance
    T_x M_omega = e^{-2*pi*i*x*omega/L} M_omega T_x.  Both are discretization
    artifacts with no continuum counterpart, so the shift rounds each
    coordinate to the nearest integer -- the residual is jitter absorbed into
    the point set -- and stays exactly unitary and exactly covariant.
    """
    return modulate(translate(f, x), float(np.rint(omega)))


def gaussian_window(torus: TorusParams) -> Signal:
    """Periodized Gaussian of width sqrt(L) samples, unit ell^2 norm.

    Periodization of 2**0.25 * exp(-pi t**2) sampled at spacing 1/sqrt(L);
    eight wraps on each side leave the tail far below double precision.  The
    result is real, positive, even on the torus, and self-dual: |fft(g)| equals
    sqrt(L) * g to ~1e-8.
    """
    L = torus.L
    n = np.arange(L, dtype=float)
    g = np.zeros(L)
    for k in range(-8, 9):
        g += np.exp(-np.pi * (n + k * L) ** 2 / L)
    g /= np.linalg.norm(g)
    return Signal(torus, g.astype(complex))


def box_window(torus: TorusParams, width: int) -> Signal:
    """Normalized indicator of `width` consecutive samples centered at 0.

    Requires width | L.  With the lattice width x (L/width) the translates and
    modulates of this window form an orthonormal basis of C^L.
    """
    L = torus.L
    if width < 1 or L % width:
        raise WindowError(f"box width must divide L={L}, got {width}")
    n = np.arange(L)
    g = np.where((n + width // 2) % L < width, 1.0 / np.sqrt(width), 0.0)
    return Signal(torus, g.astype(complex))


def cosine_bump_window(torus: TorusParams) -> Signal:
    """Half-overlap cosine bump supported on L/2 samples, unit ell^2 norm.

    Discretizes phi(x) = ((exp(2*pi*i*x) + 1) / 2) * chi_[-1/2,1/2](x) at scale
    L/2 samples per unit.  Squared magnitudes of the translates by L/4 add up
    to an exact constant at every sample (cos^2 + sin^2).  Requires 4 | L.
    """
    L = torus.L
    if L % 4:
        raise WindowError(f"cosine bump needs 4 | L, got L={L}")
    n = np.arange(L)
    n_signed = ((n + L // 2) % L) - L // 2
    x = 2.0 * n_signed / L
    phi = np.where(np.abs(n_signed) <= L // 4, (np.exp(2j * np.pi * x) + 1.0) / 2.0, 0.0)
    phi /= np.linalg.norm(phi)
    return Signal(torus, phi)


@dataclass(frozen=True)
class StftGrid:
    """Sampled STFT values[x, omega] = <f, M_omega T_x phi> on the full L x L grid."""

    torus: TorusParams
    values: np.ndarray = field(repr=False)
    window_norm: float = 1.0

    def __post_init__(self):
        L = self.torus.L
        arr = np.asarray(self.values, dtype=complex)
        if arr.shape != (L, L):
            raise ValueError(f"expected ({L}, {L}) grid, got {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def energy(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def save_csv(self, path) -> None:
        L = self.torus.L
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "omega", "re", "im"])
            for x in range(L):
                row = self.values[x]
                for om in range(L):
                    v = row[om]
                    w.writerow([x, om, f"{v.real:.15g}", f"{v.imag:.15g}"])


def stft(f: Signal, window: Signal) -> StftGrid:
    """Full-grid STFT of f against the window, one FFT per time slot.

    values[x, k] = sum_n f(n) conj(window(n - x)) exp(-2*pi*i*k*n/L), which is
    <f, M_k T_x window>.  The total grid energy equals L * ||f||^2 * ||window||^2.
    """
    if f.torus.L != window.torus.L:
        raise ValueError("signal and window live on different tori")
    L = f.torus.L
    idx = (np.arange(L)[None, :] - np.arange(L)[:, None]) % L  # idx[x, n] = n - x
    prods = f.samples[None, :] * np.conj(window.samples[idx])
    values = np.fft.fft(prods, axis=1)
    return StftGrid(f.torus, values, window_norm=window.norm)


def mp_norm(f: Signal, p: float) -> float:
    """Modulation-norm surrogate: ell^p norm of the Gaussian-window STFT grid."""
    if p < 1:
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    mag = np.abs(stft(f, gaussian_window(f.torus)).values)
    if np.isinf(p):
        return float(mag.max())
    return float((mag**p).sum() ** (1.0 / p))


def amalgam_norm(grid: np.ndarray, p: float, lat: RefLattice, torus: TorusParams) -> float:
    """Amalgam-norm surrogate of a nonnegative grid: ell^p of per-cell suprema.

    Cells are the a_step x b_step tiles of the L x L grid anchored at lattice
    points.  p = inf returns the global max.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    lat.validate_for(torus)
    L = torus.L
    grid = np.asarray(grid, dtype=float)
    if grid.shape != (L, L):
        raise ValueError(f"expected ({L}, {L}) grid, got {grid.shape}")
    a, b = lat.a_step, lat.b_step
    sups = grid.reshape(L // a, a, L // b, b).max(axis=(1, 3))
    if np.isinf(p):
        return float(sups.max())
    return float((sups**p).sum() ** (1.0 / p))
