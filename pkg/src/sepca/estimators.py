"""Support-recovery estimators and truncated-power refinement.

All estimators consume only the centered matrix ``gamma`` (sample
second moment minus identity, or its population surrogate) and a
sparsity budget ``k``; the spike strength is never an input. Three
screening rules are provided:

* diagonal screening: the k largest diagonal entries;
* single-peak screening: the k largest magnitudes in the column of
  the largest diagonal entry;
* iterative spectral reselection: grow the support one coordinate per
  round, each round re-scoring every coordinate by ``|gamma @ e|``
  where ``e`` is the current restricted top eigenvector.

In every case the direction estimate is the zero-padded top
eigenvector of the restricted block. Refinement repeats
multiply / keep-k' / normalize steps from any unit initializer.

Tie-breaking everywhere resolves to the lowest index so that runs are
byte-reproducible.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegenerateIterateError
from .linalg import dense_top_eigvec, hard_threshold, top_k_indices
from .model import SpikedModel
from .validation import check_sparsity, check_symmetric_matrix, check_unit_vector

ALGORITHMS = ("dt", "single-peak", "sep")

OPERATOR_MODES = ("centered", "uncentered")


@dataclass(frozen=True)
class RoundRecord:
    """One reselection round: support, restricted eigenpair, and (when a
    generating model is supplied) the spike energy the support captured."""

    p: int
    support: np.ndarray
    eigenvalue: float
    eigenvector: np.ndarray = field(repr=False)
    captured_energy: float | None = None


@dataclass(frozen=True)
class EstimationResult:
    """Estimated direction and support.

    ``v_hat`` is unit norm and zero off ``support``; ``support`` holds
    exactly the requested number of indices, sorted. ``trace`` is a
    per-round log, populated only by the iterative estimator on
    request.
    """

    v_hat: np.ndarray = field(repr=False)
    support: np.ndarray
    trace: tuple[RoundRecord, ...] | None = None

    def __post_init__(self):
        v = np.asarray(self.v_hat, dtype=np.float64)
        s = np.asarray(self.support, dtype=np.intp)
        if abs(float(np.linalg.norm(v)) - 1.0) > 1e-10:
            raise ValueError("estimated direction must be unit norm")
        off = np.ones(v.shape[0], dtype=bool)
        off[s] = False
        if np.any(v[off] != 0.0):
            raise ValueError("estimated direction must vanish off the support")
        v.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "v_hat", v)
        object.__setattr__(self, "support", s)


@dataclass(frozen=True)
class RefinementResult:
    """All refinement iterates w^(0..T); each is unit norm and, from
    t >= 1 on, k'-sparse."""

    iterates: tuple[np.ndarray, ...] = field(repr=False)
    operator_mode: str
    k_prime: int

    @property
    def w_final(self) -> np.ndarray:
        return self.iterates[-1]

    @property
    def n_iterations(self) -> int:
        return len(self.iterates) - 1


def _padded_eigvec(gamma: np.ndarray, support: np.ndarray):
    """Top eigenpair of the restricted block, zero-padded to R^n."""
    block = gamma[np.ix_(support, support)]
    eigval, vec = dense_top_eigvec(block)
    padded = np.zeros(gamma.shape[0])
    padded[support] = vec
    return eigval, padded


def dt_estimate(gamma, k: int) -> EstimationResult:
    """Diagonal screening: support = k largest diagonal entries.

    The diagonal of the centered matrix is positively biased by the
    per-coordinate spike energy, so large diagonals flag support
    coordinates once sampling noise has concentrated.
    """
    gamma = check_symmetric_matrix(gamma, "gamma")
    k = check_sparsity(k, gamma.shape[0])
    support = top_k_indices(np.diag(gamma), k)
    _, v_hat = _padded_eigvec(gamma, support)
    return EstimationResult(v_hat=v_hat, support=support)


def single_peak_estimate(gamma, k: int) -> EstimationResult:
    """Single-peak screening via the column of the largest diagonal.

    The column indexed by the peak coordinate is proportional to the
    spike plus noise, so its large-magnitude entries mark the support
    with a margin boosted by the leading amplitude.
    """
    gamma = check_symmetric_matrix(gamma, "gamma")
    k = check_sparsity(k, gamma.shape[0])
    j_max = int(np.argmax(np.diag(gamma)))
    support = top_k_indices(np.abs(gamma[:, j_max]), k)
    _, v_hat = _padded_eigvec(gamma, support)
    return EstimationResult(v_hat=v_hat, support=support)


def sep_estimate(
    gamma,
    k: int,
    record_trace: bool = False,
    model: SpikedModel | None = None,
) -> EstimationResult:
    """Iterative spectral reselection of a size-k support.

    Starts from the single largest-magnitude diagonal entry. At round
    p the top eigenvector of the current restricted block is zero
    padded, multiplied through the full matrix, and the p+1 largest
    magnitudes of the response - selected fresh over all coordinates,
    with no carry-over guarantee - become the next support. The final
    direction is the restricted top eigenvector on the size-k support.

    Parameters
    ----------
    gamma : array_like
        Centered symmetric matrix.
    k : int
        Support budget.
    record_trace : bool
        Keep per-round supports and eigenpairs.
    model : SpikedModel, optional
        When given alongside ``record_trace``, each round also records
        the true spike energy captured by the selected support.
    """
    gamma = check_symmetric_matrix(gamma, "gamma")
    k = check_sparsity(k, gamma.shape[0])

    support = top_k_indices(np.abs(np.diag(gamma)), 1)
    trace: list[RoundRecord] = []

    def _log(p, sup, eigval, vec):
        captured = None
        if model is not None:
            captured = float(np.sum(model.spike[sup] ** 2))
        trace.append(
            RoundRecord(p=p, support=sup, eigenvalue=eigval, eigenvector=vec, captured_energy=captured)
        )

    for p in range(1, k):
        eigval, e_padded = _padded_eigvec(gamma, support)
        if record_trace:
            _log(p, support, eigval, e_padded)
        # The response only sees the restricted eigenvector's support.
        u = gamma[:, support] @ e_padded[support]
        support = top_k_indices(np.abs(u), p + 1)

    eigval, v_hat = _padded_eigvec(gamma, support)
    if record_trace:
        _log(k, support, eigval, v_hat)
    return EstimationResult(
        v_hat=v_hat,
        support=support,
        trace=tuple(trace) if record_trace else None,
    )


def tpower_refine(
    gamma,
    w0,
    k_prime: int,
    n_iterations: int,
    operator_mode: str = "centered",
) -> RefinementResult:
    """Truncated power refinement from a unit initializer.

    Each step multiplies by the chosen operator, keeps the k' largest
    magnitudes, and renormalizes. The centered mode applies ``gamma``
    itself; the uncentered mode applies ``gamma + I`` (the raw second
    moment), whose identity component carries the previous iterate
    into every update.

    Raises
    ------
    DegenerateIterateError
        If a truncated iterate is the zero vector, which signals a
        sample size far below any working regime.
    """
    gamma = check_symmetric_matrix(gamma, "gamma")
    w = check_unit_vector(w0, "w0")
    n = gamma.shape[0]
    if w.shape[0] != n:
        raise ValueError(f"w0 has length {w.shape[0]}, expected {n}")
    k_prime = check_sparsity(k_prime, n, name="k_prime")
    if not isinstance(n_iterations, (int, np.integer)) or n_iterations < 0:
        raise ValueError(f"n_iterations must be a nonnegative integer, got {n_iterations!r}")
    if operator_mode not in OPERATOR_MODES:
        raise ValueError(f"operator_mode must be one of {OPERATOR_MODES}, got {operator_mode!r}")

    operator = gamma
    if operator_mode == "uncentered":
        operator = gamma.copy()
        operator[np.diag_indices_from(operator)] += 1.0

    iterates = [w]
    for _ in range(int(n_iterations)):
        nz = np.flatnonzero(w)
        y = operator[:, nz] @ w[nz]
        z = hard_threshold(y, k_prime)
        norm_z = float(np.linalg.norm(z))
        if norm_z == 0.0:
            raise DegenerateIterateError(
                "truncated iterate collapsed to zero and cannot be normalized"
            )
        if not np.isfinite(norm_z):
            raise ValueError("refinement iterate contains NaN or Inf entries")
        w = z / norm_z
        iterates.append(w)
    return RefinementResult(
        iterates=tuple(iterates),
        operator_mode=operator_mode,
        k_prime=k_prime,
    )


def result_with_refinement(result: EstimationResult, refinement: RefinementResult) -> EstimationResult:
    """Repackage a refined iterate as an estimation result (support =
    nonzeros of the final iterate)."""
    w = refinement.w_final
    return dataclasses.replace(
        result,
        v_hat=w,
        support=np.flatnonzero(w).astype(np.intp),
        trace=result.trace,
    )
