"""Spike energy profiles.

A profile is the sorted sequence of squared magnitudes carried by the
nonzero coordinates of a unit spike vector. Profiles are the only
place where signal shape enters the toolkit: the model module embeds
them into R^n, and the theory module derives everything else from the
sorted squared magnitudes.

Supported kinds
---------------
``flat``
    All k squared magnitudes equal.
``power-law-amplitude``
    Amplitudes a_j = j**(-alpha) + offset for j = 1..k, then squared
    and normalized. The offset applies on the amplitude scale, before
    squaring.
``exponential-amplitude``
    Amplitudes a_j = exp(-rate * j) + offset for j = 1..k, squared and
    normalized.
``power-law-energy``
    Squared magnitudes proportional to j**(-alpha) directly.
``custom``
    Explicit nonnegative weights, sorted and normalized here.

The two power-law kinds are deliberately distinct: an offset applied
to amplitudes and a decay applied to energies produce different
profiles, and conflating them silently changes every downstream
structure quantity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PROFILE_KINDS = (
    "flat",
    "power-law-amplitude",
    "exponential-amplitude",
    "power-law-energy",
    "custom",
)

_SUM_TOL = 1e-12


@dataclass(frozen=True)
class SpikeProfile:
    """Sorted squared magnitudes of a unit spike's nonzero entries.

    Attributes
    ----------
    k : int
        Support size.
    weights : ndarray of shape (k,)
        Squared magnitudes, non-increasing, nonnegative, summing to 1
        within 1e-12.
    """

    k: int
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if self.k < 1:
            raise ValueError(f"profile size k must be >= 1, got {self.k}")
        if w.shape != (self.k,):
            raise ValueError(f"weights must have shape ({self.k},), got {w.shape}")
        if np.any(w < 0):
            raise ValueError("profile weights must be nonnegative")
        if abs(float(w.sum()) - 1.0) > _SUM_TOL:
            raise ValueError(f"profile weights must sum to 1, got {w.sum()!r}")
        if np.any(np.diff(w) > 0):
            raise ValueError("profile weights must be sorted non-increasing")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def amplitudes(self) -> np.ndarray:
        """Sorted nonnegative amplitudes sqrt(weights)."""
        return np.sqrt(self.weights)


def _normalize_sorted(raw: np.ndarray) -> np.ndarray:
    raw = np.asarray(raw, dtype=np.float64)
    if np.any(raw < 0):
        raise ValueError("weights must be nonnegative")
    total = float(raw.sum())
    if not np.isfinite(total) or total <= 0.0:
        raise ValueError("weights must sum to a positive finite value")
    w = raw / total
    return np.sort(w)[::-1]


def make_profile(kind: str, k: int, **params) -> SpikeProfile:
    """Construct a normalized, sorted spike energy profile.

    Parameters
    ----------
    kind : str
        One of ``flat``, ``power-law-amplitude``, ``exponential-amplitude``,
        ``power-law-energy``, ``custom``.
    k : int
        Support size, at least 1.
    **params
        Kind-specific parameters: ``alpha`` and optional ``offset``
        (default 0.1) for power-law-amplitude; ``rate`` and optional
        ``offset`` for exponential-amplitude; ``alpha`` for
        power-law-energy; ``weights`` for custom.

    Returns
    -------
    SpikeProfile
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    k = int(k)
    if kind not in PROFILE_KINDS:
        raise ValueError(f"unknown profile kind {kind!r}; expected one of {PROFILE_KINDS}")

    def _take(allowed):
        extra = set(params) - set(allowed)
        if extra:
            raise ValueError(f"unexpected parameters for kind {kind!r}: {sorted(extra)}")

    j = np.arange(1, k + 1, dtype=np.float64)
    if kind == "flat":
        _take(())
        raw = np.ones(k)
    elif kind == "power-law-amplitude":
        _take(("alpha", "offset"))
        alpha = float(params["alpha"])
        offset = float(params.get("offset", 0.1))
        if offset < 0:
            raise ValueError(f"offset must be nonnegative, got {offset}")
        amp = j ** (-alpha) + offset
        raw = amp * amp
    elif kind == "exponential-amplitude":
        _take(("rate", "offset"))
        rate = float(params["rate"])
        offset = float(params.get("offset", 0.1))
        if offset < 0:
            raise ValueError(f"offset must be nonnegative, got {offset}")
        amp = np.exp(-rate * j) + offset
        raw = amp * amp
    elif kind == "power-law-energy":
        _take(("alpha",))
        alpha = float(params["alpha"])
        raw = j ** (-alpha)
    else:  # custom
        _take(("weights",))
        raw = np.asarray(params["weights"], dtype=np.float64)
        if raw.ndim != 1 or raw.shape[0] != k:
            raise ValueError(f"custom weights must be a length-{k} sequence")

    w = _normalize_sorted(raw)
    return SpikeProfile(k=k, weights=w)
