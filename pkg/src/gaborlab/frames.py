"""Frame linear algebra on stacks of vectors.

Everything here works on plain (m, dim) complex arrays whose rows are the
frame vectors; the Gabor layer and the abstract counterexample constructions
both delegate to these routines.  Frame bounds are the extreme eigenvalues of
the frame operator S f = sum_i <f, f_i> f_i.

The dense path (eigendecomposition / Cholesky) is used up to dim <= 512; above
that, power iteration with a certified residual and conjugate-gradient dual
solves take over.  Both dual paths enforce the same residual contract
||S * dual_i - f_i|| < 1e-9 * ||f_i||.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import LinearOperator, cg

from .errors import IterativeSolveError, NotAFrameError

__all__ = [
    "DENSE_LIMIT",
    "FRAME_TOL_FACTOR",
    "frame_matrix",
    "apply_frame_operator",
    "gram",
    "cross_gram",
    "frame_bounds_dense",
    "frame_bounds_iterative",
    "frame_bounds",
    "riesz_bounds",
    "canonical_duals",
    "parseval_vectors",
    "is_frame",
]

DENSE_LIMIT = 512
FRAME_TOL_FACTOR = 1e-10  # A > 1e-10 * B counts as a frame
DUAL_RESIDUAL_TOL = 1e-9


def _as_stack(vectors) -> np.ndarray:
    arr = np.asarray(vectors, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected an (m, dim) stack of vectors, got shape {arr.shape}")
    return arr


def frame_matrix(vectors) -> np.ndarray:
    """Dense frame operator S = sum_i f_i f_i^H as a (dim, dim) array."""
    V = _as_stack(vectors)
    return V.T @ V.conj()


def apply_frame_operator(vectors, f: np.ndarray) -> np.ndarray:
    """S f computed as synthesis(analysis(f)) without materializing S."""
    V = _as_stack(vectors)
    return V.T @ (V.conj() @ f)


def gram(vectors) -> np.ndarray:
    """Gram matrix G[i, j] = <f_i, f_j>."""
    V = _as_stack(vectors)
    return V @ V.conj().T


def cross_gram(f_vectors, e_vectors) -> np.ndarray:
    """Cross-Gram G[i, j] = <f_i, e_j>."""
    F = _as_stack(f_vectors)
    E = _as_stack(e_vectors)
    if F.shape[1] != E.shape[1]:
        raise ValueError("vector stacks have different ambient dimensions")
    return F @ E.conj().T


def frame_bounds_dense(vectors) -> tuple[float, float]:
    """(A, B) as the extreme eigenvalues of the dense frame operator."""
    V = _as_stack(vectors)
    if V.shape[0] == 0:
        return 0.0, 0.0
    w = scipy.linalg.eigvalsh(frame_matrix(V))
    return float(max(w[0], 0.0)), float(max(w[-1], 0.0))


def _power_iteration(matvec, dim: int, tol: float, maxiter: int) -> tuple[float, np.ndarray, float]:
    """Largest eigenvalue of a Hermitian PSD operator by power iteration.

    Returns (theta, v, residual) once ||A v - theta v|| <= tol * max(1, theta).
    """
    rng = np.random.default_rng(0x5EED)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    theta = 0.0
    for _ in range(maxiter):
        Av = matvec(v)
        theta = float(np.real(np.vdot(v, Av)))
        resid = float(np.linalg.norm(Av - theta * v))
        if resid <= tol * max(1.0, abs(theta)):
            return theta, v, resid
        nrm = np.linalg.norm(Av)
        if nrm == 0.0:  # operator annihilates v: 0 is an exact eigenvalue here
            return 0.0, v, 0.0
        v = Av / nrm
    raise IterativeSolveError(
        f"power iteration did not certify residual {tol:g} in {maxiter} steps",
        ritz_values=(theta,),
    )


def frame_bounds_iterative(vectors, tol: float = 1e-8, maxiter: int = 20000) -> tuple[float, float]:
    """(A, B) via power iteration on S and on B*Id - S, certified to `tol`."""
    V = _as_stack(vectors)
    dim = V.shape[1]
    if V.shape[0] == 0:
        return 0.0, 0.0
    matvec = lambda f: V.T @ (V.conj() @ f)
    B, _, _ = _power_iteration(matvec, dim, tol, maxiter)
    shifted = lambda f: B * f - matvec(f)
    mu, _, _ = _power_iteration(shifted, dim, tol, maxiter)
    return float(max(B - mu, 0.0)), float(B)


def frame_bounds(vectors, method: str = "auto") -> tuple[float, float]:
    """Frame bounds (A, B); method is 'dense', 'iterative', or 'auto'."""
    V = _as_stack(vectors)
    if method == "auto":
        method = "dense" if V.shape[1] <= DENSE_LIMIT else "iterative"
    if method == "dense":
        return frame_bounds_dense(V)
    if method == "iterative":
        return frame_bounds_iterative(V)
    raise ValueError(f"unknown method {method!r}")


def is_frame(A: float, B: float) -> bool:
    return B > 0 and A > FRAME_TOL_FACTOR * B


def riesz_bounds(vectors) -> tuple[float, float]:
    """Extreme singular values of the synthesis map c -> sum_i c_i f_i.

    These are norm-level constants: s_min * ||c|| <= ||sum c_i f_i|| <= s_max * ||c||.
    (The eigenvalue-level frame bounds are their squares when m = dim.)
    """
    V = _as_stack(vectors)
    s = scipy.linalg.svdvals(V)
    return float(s[-1]), float(s[0])


def _check_dual_residuals(S_apply, duals, vectors) -> np.ndarray:
    R = np.stack([S_apply(d) for d in duals]) - vectors
    denom = np.maximum(np.linalg.norm(vectors, axis=1), 1e-300)
    return np.linalg.norm(R, axis=1) / denom


def canonical_duals(vectors, method: str = "auto") -> np.ndarray:
    """Canonical dual vectors S^{-1} f_i as an (m, dim) stack.

    Raises NotAFrameError when the lower frame bound is numerically zero, and
    IterativeSolveError if the residual contract cannot be certified.
    """
    V = _as_stack(vectors)
    m, dim = V.shape
    if method == "auto":
        method = "dense" if dim <= DENSE_LIMIT else "cg"

    if method == "dense":
        S = frame_matrix(V)
        A, B = frame_bounds_dense(V)
        if not is_frame(A, B):
            raise NotAFrameError(f"lower bound {A:.3e} vanishes relative to B={B:.3e}")
        factor = scipy.linalg.cho_factor(S)
        X = scipy.linalg.cho_solve(factor, V.T)  # S X = V^T, columns are duals
        # one round of iterative refinement keeps ill-conditioned systems in contract
        for _ in range(3):
            rel = _check_dual_residuals(lambda d: S @ d, X.T, V)
            if rel.max() < DUAL_RESIDUAL_TOL:
                return X.T
            X -= scipy.linalg.cho_solve(factor, S @ X - V.T)
        raise IterativeSolveError(
            f"dual residual {rel.max():.3e} exceeds contract {DUAL_RESIDUAL_TOL:g}",
            ritz_values=(A, B),
        )

    if method == "cg":
        A, B = frame_bounds_iterative(V)
        if not is_frame(A, B):
            raise NotAFrameError(f"lower bound {A:.3e} vanishes relative to B={B:.3e}")
        matvec = lambda f: V.T @ (V.conj() @ f)
        op = LinearOperator((dim, dim), matvec=matvec, dtype=complex)
        duals = np.empty_like(V)
        for i in range(m):
            b = V[i]
            x, info = cg(op, b, rtol=1e-12, atol=0.0)
            if info != 0:
                raise IterativeSolveError(f"cg failed for element {i} (info={info})",
                                          ritz_values=(A, B))
            duals[i] = x
        rel = _check_dual_residuals(matvec, duals, V)
        if rel.max() >= DUAL_RESIDUAL_TOL:
            raise IterativeSolveError(
                f"dual residual {rel.max():.3e} exceeds contract {DUAL_RESIDUAL_TOL:g}",
                ritz_values=(A, B),
            )
        return duals

    raise ValueError(f"unknown method {method!r}")


def parseval_vectors(vectors) -> np.ndarray:
    """Canonical Parseval frame S^{-1/2} f_i (dense eigendecomposition)."""
    V = _as_stack(vectors)
    S = frame_matrix(V)
    w, U = scipy.linalg.eigh(S)
    A, B = float(max(w[0], 0.0)), float(max(w[-1], 0.0))
    if not is_frame(A, B):
        raise NotAFrameError(f"lower bound {A:.3e} vanishes relative to B={B:.3e}")
    inv_sqrt = (U * (1.0 / np.sqrt(w))) @ U.conj().T
    return (inv_sqrt @ V.T).T
