"""Single-spike covariance model: construction and sampling.

The model is a centered Gaussian with covariance ``I + theta * v v^T``
for a unit, k-sparse spike ``v``. Samples are drawn via the rank-one
update ``x = z + sqrt(theta) * g * v`` with ``z ~ N(0, I)`` and
``g ~ N(0, 1)`` independent, which realizes the covariance exactly at
O(n) cost per sample; an n x n factorization would buy nothing here.

The centered second-moment matrix ``Sigma_hat - I`` is the common
input of every estimator in :mod:`sepca.estimators`; its population
counterpart ``theta * v v^T`` supports noiseless tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .profiles import SpikeProfile
from .validation import as_rng, check_index_set, check_symmetric_matrix


@dataclass(frozen=True)
class SpikedModel:
    """A unit spike embedded in R^n together with its strength.

    Attributes
    ----------
    n : int
        Ambient dimension.
    k : int
        Number of nonzero spike coordinates.
    theta : float
        Spike strength, >= 0. Zero gives the isotropic model.
    spike : ndarray of shape (n,)
        Unit vector with exactly k nonzeros.
    support : ndarray of shape (k,)
        Sorted indices of the nonzero coordinates.
    """

    n: int
    k: int
    theta: float
    spike: np.ndarray = field(repr=False)
    support: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.spike, dtype=np.float64)
        s = np.asarray(self.support, dtype=np.intp)
        if self.n < 1 or not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.theta < 0 or not np.isfinite(self.theta):
            raise ValueError(f"theta must be finite and >= 0, got {self.theta}")
        if v.shape != (self.n,):
            raise ValueError(f"spike must have shape ({self.n},)")
        if s.shape != (self.k,):
            raise ValueError(f"support must have shape ({self.k},)")
        if abs(float(np.linalg.norm(v)) - 1.0) > 1e-12:
            raise ValueError("spike must have unit norm")
        nz = np.flatnonzero(v)
        if nz.size != self.k or not np.array_equal(nz, np.sort(s)):
            raise ValueError("spike must be nonzero exactly on the support")
        v.setflags(write=False)
        s = np.sort(s)
        s.setflags(write=False)
        object.__setattr__(self, "spike", v)
        object.__setattr__(self, "support", s)


def embed_spike(
    profile: SpikeProfile,
    n: int,
    support=None,
    signs=None,
    theta: float = 1.0,
    rng=None,
) -> SpikedModel:
    """Place a profile's amplitudes into R^n as a signed unit spike.

    The i-th largest amplitude lands on ``support[i]`` with sign
    ``signs[i]``. When ``support`` is omitted a uniformly random
    k-subset is drawn from ``rng`` (seed 0 when that is omitted too);
    omitted ``signs`` default to all +1. Placement and signs do not
    affect any sorted-magnitude quantity downstream.

    Parameters
    ----------
    profile : SpikeProfile
    n : int
        Ambient dimension, at least profile.k.
    support : sequence of int, optional
        k distinct indices in [0, n); order pairs indices with the
        sorted amplitudes.
    signs : sequence of +-1, optional
    theta : float
        Spike strength for the resulting model.
    rng : Generator, int, or None
        Used only when ``support`` is omitted.

    Returns
    -------
    SpikedModel
    """
    k = profile.k
    if k > n:
        raise ValueError(f"profile size k={k} exceeds dimension n={n}")
    if np.any(profile.weights <= 0):
        raise ValueError("embedding requires strictly positive profile weights")
    if support is None:
        support = np.sort(as_rng(rng).choice(n, size=k, replace=False))
    support_arr = np.asarray(support, dtype=np.intp)
    if support_arr.ndim != 1 or support_arr.shape[0] != k:
        raise ValueError(f"support must list exactly k={k} indices")
    check_index_set(support_arr, n, name="support")
    if signs is None:
        signs_arr = np.ones(k)
    else:
        signs_arr = np.asarray(signs, dtype=np.float64)
        if signs_arr.shape != (k,) or not np.all(np.abs(signs_arr) == 1.0):
            raise ValueError(f"signs must be a length-{k} sequence of +-1")

    v = np.zeros(n)
    v[support_arr] = signs_arr * profile.amplitudes
    return SpikedModel(n=n, k=k, theta=float(theta), spike=v, support=np.sort(support_arr))


@dataclass(frozen=True)
class SampleSet:
    """m samples from a spiked model, one per row."""

    m: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        x = np.asarray(self.data, dtype=np.float64)
        if self.m < 1:
            raise ValueError(f"need m >= 1 samples, got {self.m}")
        if x.ndim != 2 or x.shape[0] != self.m:
            raise ValueError(f"data must have shape ({self.m}, n), got {x.shape}")
        x.setflags(write=False)
        object.__setattr__(self, "data", x)

    @property
    def n(self) -> int:
        return self.data.shape[1]


def draw_samples(model: SpikedModel, m: int, rng) -> SampleSet:
    """Draw m i.i.d. samples with covariance exactly I + theta * v v^T.

    The draw order is fixed (ambient noise first, then the spike
    factors), so the result is a pure function of (model, m, rng state).
    """
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ValueError(f"sample count m must be a positive integer, got {m!r}")
    gen = as_rng(rng)
    z = gen.standard_normal((int(m), model.n))
    g = gen.standard_normal(int(m))
    x = z + np.sqrt(model.theta) * np.outer(g, model.spike)
    return SampleSet(m=int(m), data=x)


def centered_gamma(samples: SampleSet) -> np.ndarray:
    """Sample second-moment matrix minus the identity.

    Computes ``(1/m) sum_i x_i x_i^T - I`` with the upper triangle
    mirrored onto the lower one, so the output is symmetric
    bit-for-bit.
    """
    if not isinstance(samples, SampleSet):
        samples = SampleSet(m=np.asarray(samples).shape[0], data=samples)
    x = samples.data
    g = x.T @ x
    upper = np.triu(g, k=1)
    g = upper + upper.T + np.diag(np.diag(g))
    g /= samples.m
    g[np.diag_indices_from(g)] -= 1.0
    return g


def population_gamma(model: SpikedModel) -> np.ndarray:
    """Noiseless surrogate ``theta * v v^T`` (the centered matrix at m = inf)."""
    v = model.spike
    # outer(v, v) is bitwise symmetric, so no mirroring is needed here.
    return model.theta * np.outer(v, v)


def noise_matrix(gamma: np.ndarray, model: SpikedModel) -> np.ndarray:
    """Sampling fluctuation ``gamma - theta * v v^T`` around the rank-one signal."""
    gamma = check_symmetric_matrix(gamma, "gamma")
    if gamma.shape[0] != model.n:
        raise ValueError(f"gamma has dimension {gamma.shape[0]}, model has n={model.n}")
    return gamma - population_gamma(model)
