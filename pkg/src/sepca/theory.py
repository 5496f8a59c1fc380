"""Structure-function calculus and theory-side diagnostics.

The structure function of a unit k-sparse spike is the inverse of the
cumulative energy of its top p coordinates, p = 1..k. Two scalar
functionals of it drive the sample-complexity comparisons:

* ``A = max_p p * s(p)^2``, and
* ``B = min_p max(p^2 * s(p)^2, k * s(p))``,

with ``A <= B`` holding exactly for every valid profile. Both are
evaluated by exhaustive scans over p; asymptotic closed forms are used
only as slope oracles in tests, never in this module.

The diagnostics check, per realization, a restricted-eigenvector
alignment inequality and the scaling of noise-block spectral norms.
Tolerances are fixed constants here: deterministic inequalities get a
1e-10 slack, Monte Carlo medians are compared at +-25%.

Internally the prefix sums and functional scans run in extended
precision so that reported values are correctly rounded float64; the
dominance gap between A and B can genuinely be at the 1e-12 scale and
must not be swamped by accumulation error.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import spectral_norm, top_eigvec
from .model import SpikedModel, draw_samples
from .profiles import SpikeProfile, make_profile
from .validation import as_rng, check_index_set, check_symmetric_matrix

INEQUALITY_SLACK = 1e-10
_MONOTONE_RTOL = 1e-10


@dataclass(frozen=True)
class StructureFunction:
    """Inverse cumulative energies s(1) >= ... >= s(k) = 1.

    ``s[p-1]`` holds s(p). Valid instances are non-increasing, end at
    1, and have p * s(p) non-decreasing; construction enforces all
    three (with a tiny relative tolerance for rounding).
    """

    k: int
    s: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.s, dtype=np.float64)
        if arr.shape != (self.k,):
            raise ValueError(f"s must have shape ({self.k},), got {arr.shape}")
        if abs(float(arr[-1]) - 1.0) > 1e-12:
            raise ValueError(f"s(k) must equal 1, got {arr[-1]!r}")
        if not (1.0 - 1e-12 <= float(arr[0]) <= self.k * (1 + 1e-12)):
            raise ValueError(f"s(1) must lie in [1, k], got {arr[0]!r}")
        if np.any(np.diff(arr) > _MONOTONE_RTOL * arr[:-1]):
            raise ValueError("s must be non-increasing")
        p = np.arange(1, self.k + 1)
        ps = p * arr
        if np.any(np.diff(ps) < -_MONOTONE_RTOL * ps[:-1]):
            raise ValueError("p * s(p) must be non-decreasing")
        arr.setflags(write=False)
        object.__setattr__(self, "s", arr)

    def __call__(self, p: int) -> float:
        if not 1 <= p <= self.k:
            raise ValueError(f"p must be in [1, {self.k}], got {p}")
        return float(self.s[p - 1])


def structure_function(profile_or_vector) -> StructureFunction:
    """Structure function of a profile or of a raw vector.

    A raw vector is normalized to unit energy, its exact zeros are
    dropped, and the squared magnitudes are sorted; the result depends
    only on the multiset of nonzero magnitudes, so any embedding of a
    profile reproduces the profile's structure function.
    """
    if isinstance(profile_or_vector, SpikeProfile):
        weights = profile_or_vector.weights
    else:
        v = np.asarray(profile_or_vector, dtype=np.float64).ravel()
        if v.size == 0 or not np.all(np.isfinite(v)):
            raise ValueError("input vector must be non-empty and finite")
        energy = v * v
        total = float(energy.sum())
        if total <= 0.0:
            raise ValueError("cannot take the structure function of the zero vector")
        weights = np.sort(energy[energy > 0])[::-1] / total
    k = weights.shape[0]
    prefix = np.cumsum(weights.astype(np.longdouble))
    s = (np.longdouble(1.0) / prefix).astype(np.float64)
    # Unit total energy makes the final value exactly 1; pin it so the
    # identity survives the normalization rounding above.
    s[-1] = 1.0
    return StructureFunction(k=k, s=s)


@dataclass(frozen=True)
class ComplexityPair:
    """The two sample-complexity functionals of a structure function,
    with the optimizing p for each (1-indexed)."""

    A: float
    B: float
    argmax_p: int
    argmin_p: int

    def __post_init__(self):
        if self.A > self.B * (1 + 1e-9) + 1e-9:
            raise ValueError(f"dominance violated: A={self.A!r} > B={self.B!r}")


def complexity_pair(s: StructureFunction) -> ComplexityPair:
    """Exhaustive evaluation of both functionals over p = 1..k."""
    sl = s.s.astype(np.longdouble)
    p = np.arange(1, s.k + 1, dtype=np.longdouble)
    ps2 = p * sl * sl
    inner = np.maximum(p * p * sl * sl, np.longdouble(s.k) * sl)
    i_max = int(np.argmax(ps2))
    i_min = int(np.argmin(inner))
    return ComplexityPair(
        A=float(ps2[i_max]),
        B=float(inner[i_min]),
        argmax_p=i_max + 1,
        argmin_p=i_min + 1,
    )


def power_law_max_ps2(k: int, alpha: float) -> float:
    """max_p p * s(p)^2 for the exact power-law energy profile j**(-alpha).

    Exhaustive scan over the normalized profile; no closed form is
    substituted.
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    profile = make_profile("power-law-energy", int(k), alpha=float(alpha))
    s = structure_function(profile)
    sl = s.s.astype(np.longdouble)
    p = np.arange(1, int(k) + 1, dtype=np.longdouble)
    return float((p * sl * sl).max())


@dataclass(frozen=True)
class InequalityCheck:
    """One evaluated instance of a deterministic inequality."""

    lhs: float
    rhs: float
    satisfied: bool
    label: str = ""


@dataclass(frozen=True)
class DiagnosticReport:
    """A batch of inequality checks with summary counts."""

    entries: tuple[InequalityCheck, ...]

    @property
    def n_total(self) -> int:
        return len(self.entries)

    @property
    def n_satisfied(self) -> int:
        return sum(1 for e in self.entries if e.satisfied)

    @property
    def n_violations(self) -> int:
        return self.n_total - self.n_satisfied


def dk_alignment_check(gamma, model: SpikedModel, support) -> InequalityCheck:
    """Restricted-eigenvector alignment inequality on one support.

    Evaluates ``|<v, e_S>| >= ||v_S|| * sqrt((1 - (||W_SS|| /
    (theta * ||v_S||^2 - ||W_SS||))^2)_+)`` where ``e_S`` is the top
    eigenvector of the restricted block and ``W_SS`` the restricted
    noise; the right-hand side is zero once the noise reaches the
    signal eigenvalue.

    The denominator is the sin-theta separation ``lambda_1(signal) -
    lambda_2(perturbed block)`` bounded below via Weyl's inequality,
    which is what makes the bound hold for every realization; using
    the bare signal eigenvalue instead is tempting but false once the
    noise is comparable to it (small-sample regimes reach that). With
    this form callers may demand zero violations.
    """
    gamma = check_symmetric_matrix(gamma, "gamma")
    s = check_index_set(support, model.n, name="support")
    if s.size == 0:
        raise ValueError("support must be non-empty")
    v_s = model.spike[s]
    energy = float(v_s @ v_s)
    if energy <= 0.0:
        raise ValueError("support carries no spike energy; the bound is vacuous")

    block = gamma[np.ix_(s, s)]
    _, e_s = top_eigvec(block)
    lhs = abs(float(v_s @ e_s))

    w_block = block - model.theta * np.outer(v_s, v_s)
    w_norm = spectral_norm(w_block)
    gap = model.theta * energy - w_norm
    if gap <= 0.0:
        rhs = 0.0
    else:
        rhs = float(np.sqrt(energy) * np.sqrt(max(0.0, 1.0 - (w_norm / gap) ** 2)))
    return InequalityCheck(
        lhs=lhs,
        rhs=rhs,
        satisfied=lhs >= rhs - INEQUALITY_SLACK,
        label=f"p={s.size}",
    )


def noise_block_scaling(
    model: SpikedModel,
    m: int,
    p_values,
    n_subsets: int = 100,
    rng=None,
) -> list[tuple[int, float]]:
    """Median spectral norm of random principal noise blocks.

    For each block size p, draws ``n_subsets`` uniformly random index
    sets of size p, each evaluated on a freshly sampled data set, and
    reports the median of ``||W_SS||``. Medians across p (or across
    calls with different m) expose the sqrt(p / m) scaling of the
    noise.
    """
    if n_subsets < 30:
        raise ValueError(f"need at least 30 subsets for a stable median, got {n_subsets}")
    gen = as_rng(rng)
    rows: list[tuple[int, float]] = []
    for p in p_values:
        p = int(p)
        if not 1 <= p <= model.n:
            raise ValueError(f"block size p={p} outside [1, {model.n}]")
        norms = np.empty(n_subsets)
        for i in range(n_subsets):
            s = np.sort(gen.choice(model.n, size=p, replace=False))
            samples = draw_samples(model, m, gen)
            x_s = samples.data[:, s]
            sigma_block = x_s.T @ x_s
            upper = np.triu(sigma_block, k=1)
            sigma_block = upper + upper.T + np.diag(np.diag(sigma_block))
            sigma_block /= samples.m
            v_s = model.spike[s]
            w_block = sigma_block - np.eye(p) - model.theta * np.outer(v_s, v_s)
            norms[i] = spectral_norm(w_block)
        rows.append((p, float(np.median(norms))))
    return rows


def energy_floor_trace(trace, model: SpikedModel) -> list[tuple[int, float, float]]:
    """Captured vs. ideal spike energy along a recorded reselection trace.

    Returns (p, captured, target) per round, where target is the best
    possible energy of any size-p support (the inverse structure
    function). Purely diagnostic; the ratio captured/target is the
    empirical per-round retention fraction.
    """
    if not trace:
        raise ValueError("trace is absent; rerun the estimator with record_trace=True")
    s = structure_function(model.spike)
    rows = []
    for rec in trace:
        captured = float(np.sum(model.spike[rec.support] ** 2))
        target = 1.0 / s(rec.p)
        rows.append((rec.p, captured, target))
    return rows
