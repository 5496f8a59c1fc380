"""Evaluation metrics: direction error and support recall."""

from __future__ import annotations

import numpy as np

from .validation import check_unit_vector


def sin_angle(u, v) -> float:
    """Sine of the principal angle between two unit vectors.

    Equals ``sqrt(max(0, 1 - (u.v)^2))``, but is evaluated as the norm
    of the component of one vector orthogonal to the other: the direct
    formula bottoms out at sqrt(machine epsilon) ~ 1.5e-8 once the
    inner product rounds to just below 1, whereas the residual form
    resolves angles down to machine precision. Both evaluation orders
    are averaged so the result is symmetric in its arguments bit for
    bit; flipping the sign of either argument leaves it unchanged.
    """
    u = check_unit_vector(u, "u")
    v = check_unit_vector(v, "v")
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    c = float(u @ v)
    r_uv = float(np.linalg.norm(v - c * u))
    r_vu = float(np.linalg.norm(u - c * v))
    return min(1.0, 0.5 * (r_uv + r_vu))


def support_recall(s, s_star) -> float:
    """Fraction of true support indices present in the estimate."""
    true = set(int(i) for i in np.asarray(s_star).ravel())
    if not true:
        raise ValueError("true support must be non-empty")
    got = set(int(i) for i in np.asarray(s).ravel())
    return len(got & true) / len(true)
