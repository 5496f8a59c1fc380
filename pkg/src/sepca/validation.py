"""Input validation helpers shared across the package.

All checks raise ``ValueError`` with a message naming the offending
argument; algorithmic failures use :mod:`sepca.exceptions` instead.
"""

from __future__ import annotations

import numpy as np


def as_float_vector(x, name: str = "x") -> np.ndarray:
    """Coerce to a finite 1-D float64 array."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    return arr


def check_symmetric_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate a square, finite, exactly symmetric float64 matrix.

    Symmetry is required bit-for-bit: the constructors in
    :mod:`sepca.model` mirror the upper triangle, so anything built
    there passes. Hand-built inputs must be symmetrized first.
    """
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    if not np.array_equal(arr, arr.T):
        raise ValueError(f"{name} must be exactly symmetric")
    return arr


def check_unit_vector(x, name: str = "vector", tol: float = 1e-8) -> np.ndarray:
    """Validate a finite unit-norm 1-D vector within ``tol``."""
    arr = as_float_vector(x, name)
    nrm = float(np.linalg.norm(arr))
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"{name} must have unit norm, got ||{name}|| = {nrm!r}")
    return arr


def check_sparsity(k: int, n: int, name: str = "k") -> int:
    """Validate an integer sparsity level in 1..n."""
    if not isinstance(k, (int, np.integer)):
        raise ValueError(f"{name} must be an integer, got {type(k).__name__}")
    k = int(k)
    if not 1 <= k <= n:
        raise ValueError(f"{name} must be in [1, {n}], got {k}")
    return k


def check_index_set(indices, n: int, name: str = "support") -> np.ndarray:
    """Validate distinct integer indices in [0, n); returns them sorted."""
    arr = np.asarray(indices)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.floor(arr)):
            raise ValueError(f"{name} must contain integers")
    arr = arr.astype(np.intp)
    if arr.size != np.unique(arr).size:
        raise ValueError(f"{name} contains duplicate indices")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ValueError(f"{name} has indices outside [0, {n})")
    return np.sort(arr)


def as_rng(rng) -> np.random.Generator:
    """Accept a Generator, a seed, or None (fixed default seed 0)."""
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is None:
        return np.random.default_rng(0)
    return np.random.default_rng(rng)
