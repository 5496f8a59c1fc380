"""Small dense linear-algebra primitives used by the estimators.

Everything here is deterministic: fixed starting vectors, explicit
residual tolerances, and lowest-index tie-breaking, so that repeated
runs and permuted inputs behave predictably.
"""

from __future__ import annotations

import numpy as np

from .exceptions import ConvergenceError
from .validation import check_symmetric_matrix

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000


def top_k_indices(values: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest entries, ties resolved to lower indices.

    Selection is by value (not magnitude); callers pass ``abs(...)``
    when magnitude screening is wanted. The result is sorted ascending.
    """
    values = np.asarray(values, dtype=np.float64)
    if not 1 <= k <= values.shape[0]:
        raise ValueError(f"k must be in [1, {values.shape[0]}], got {k}")
    order = np.argsort(-values, kind="stable")
    return np.sort(order[:k])


def hard_threshold(y, k_prime: int) -> np.ndarray:
    """Keep the k_prime largest-magnitude entries of y, zero the rest.

    Equal magnitudes are kept lowest-index first.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise ValueError(f"y must be one-dimensional, got shape {y.shape}")
    n = y.shape[0]
    if not 1 <= k_prime <= n:
        raise ValueError(f"k_prime must be in [1, {n}], got {k_prime}")
    keep = top_k_indices(np.abs(y), k_prime)
    out = np.zeros_like(y)
    out[keep] = y[keep]
    return out


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude entry positive (ties: lowest index)."""
    pivot = int(np.argmax(np.abs(vec)))
    if vec[pivot] < 0:
        return -vec
    return vec


def top_eigvec(
    a,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> tuple[float, np.ndarray]:
    """Eigenpair of the algebraically largest eigenvalue of a symmetric matrix.

    Plain power iteration targets the largest-magnitude eigenvalue, so
    the matrix is shifted by a Gershgorin bound to make the most
    positive eigenvalue dominant, and the shift is removed from the
    reported eigenvalue. The start vector is the normalized all-ones
    vector, falling back to e_1 if that lands in the null space of the
    shifted matrix. The returned eigenvector is unit norm with its
    largest-magnitude entry positive (ties to the lowest index).

    Parameters
    ----------
    a : array_like
        Symmetric matrix with finite entries.
    tol : float
        Residual tolerance on ``||A v - lambda v||_2``.
    max_iter : int
        Iteration budget before ``ConvergenceError``.

    Returns
    -------
    (eigenvalue, eigenvector)
    """
    a = check_symmetric_matrix(a, "a")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0]), np.ones(1)

    diag = np.diag(a)
    radii = np.abs(a).sum(axis=1) - np.abs(diag)
    shift = max(0.0, float(-(diag - radii).min()))
    b = a + shift * np.eye(n)
    if not b.any():
        # a == -shift * I: every unit vector is a top eigenvector.
        return -shift, _fix_sign(np.full(n, 1.0 / np.sqrt(n)))

    x = np.full(n, 1.0 / np.sqrt(n))
    next_start = 0
    residual = np.inf
    for it in range(max_iter):
        y = b @ x
        ny = float(np.linalg.norm(y))
        if ny < 1e-300:
            # Current vector lies in the null space of the shifted
            # matrix; advance through basis starts (b != 0, so one of
            # them survives).
            if next_start >= n:
                break
            x = np.zeros(n)
            x[next_start] = 1.0
            next_start += 1
            continue
        x = y / ny
        if it % 4 == 0 or it >= max_iter - 1:
            ax = a @ x
            lam = float(x @ ax)
            residual = float(np.linalg.norm(ax - lam * x))
            if residual <= tol:
                return lam, _fix_sign(x)
    raise ConvergenceError(
        f"power iteration did not reach residual {tol:g} within "
        f"{max_iter} iterations (last residual {residual:g})",
        residual=residual,
    )


def dense_top_eigvec(a) -> tuple[float, np.ndarray]:
    """Eigenpair of the algebraically largest eigenvalue via a dense solve.

    Same contract and sign convention as :func:`top_eigvec`; backed by
    LAPACK, whose residuals sit at machine precision, well inside the
    power-iteration tolerance. Preferred for the small restricted
    blocks the estimators work on.
    """
    a = check_symmetric_matrix(a, "a")
    if a.shape[0] == 1:
        return float(a[0, 0]), np.ones(1)
    try:
        eigvals, eigvecs = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"dense eigensolve failed: {exc}") from exc
    return float(eigvals[-1]), _fix_sign(eigvecs[:, -1].copy())


def spectral_norm(
    a,
    tol: float = 1e-8,
    max_iter: int = DEFAULT_MAX_ITER,
) -> float:
    """Largest singular value of a symmetric matrix.

    Power iteration on A @ A, which for symmetric A converges to the
    squared spectral norm; convergence is declared when the residual
    on the squared problem drops below ``tol * max(1, sigma^2)``.
    """
    a = check_symmetric_matrix(a, "a")
    if a.shape[0] == 1:
        return abs(float(a[0, 0]))
    a2 = a @ a
    a2 = 0.5 * (a2 + a2.T)
    if not a2.any():
        return 0.0
    n = a.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    next_start = 0
    mu = 0.0
    residual = np.inf
    for it in range(max_iter):
        y = a2 @ x
        ny = float(np.linalg.norm(y))
        if ny < 1e-300:
            if next_start >= n:
                break
            x = np.zeros(n)
            x[next_start] = 1.0
            next_start += 1
            continue
        x = y / ny
        if it % 4 == 0 or it >= max_iter - 1:
            ax = a2 @ x
            mu = float(x @ ax)
            residual = float(np.linalg.norm(ax - mu * x))
            if residual <= tol * max(1.0, mu):
                return float(np.sqrt(max(mu, 0.0)))
    raise ConvergenceError(
        f"singular-value iteration did not reach tolerance {tol:g} within "
        f"{max_iter} iterations (last residual {residual:g})",
        residual=residual,
    )
