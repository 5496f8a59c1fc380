"""Estimator classes with the scikit-learn fit/transform contract.

These wrap the functional estimators so the algorithms drop into
pipelines, grid searches, and anything else that speaks
``get_params`` / ``fit`` / ``transform``. ``fit`` consumes a sample
matrix of shape (m, n), builds the centered second-moment matrix, and
stores the estimated direction and support; ``transform`` projects
data onto the estimated direction.

Samples are assumed centered, matching the model the estimators are
analyzed under; no mean is subtracted here.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from . import estimators as est
from .model import centered_gamma


def _check_samples(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError(f"expected a 2-D sample matrix, got shape {x.shape}")
    if x.shape[0] < 1:
        raise ValueError("need at least one sample")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample matrix contains NaN or Inf entries")
    return x


class _SparseSpikeEstimator(TransformerMixin, BaseEstimator):
    """Shared fit/transform machinery; subclasses pick the screening rule."""

    def __init__(self, k=1, refine_iterations=0, refine_k=None,
                 refine_operator="centered"):
        self.k = k
        self.refine_iterations = refine_iterations
        self.refine_k = refine_k
        self.refine_operator = refine_operator

    def _estimate(self, gamma) -> est.EstimationResult:
        raise NotImplementedError

    def fit(self, X, y=None):
        """Estimate the sparse leading direction of ``X``'s second moment.

        Sets ``component_`` (unit n-vector), ``support_`` (sorted
        indices), ``eigenvalue_`` (restricted top eigenvalue before
        refinement), and ``n_features_in_``.
        """
        X = _check_samples(X)
        gamma = centered_gamma(X)
        result = self._estimate(gamma)
        block = gamma[np.ix_(result.support, result.support)]
        e_restricted = result.v_hat[result.support]
        self.eigenvalue_ = float(e_restricted @ (block @ e_restricted))
        if self.refine_iterations:
            refined = est.tpower_refine(
                gamma, result.v_hat,
                self.refine_k if self.refine_k is not None else self.k,
                self.refine_iterations, self.refine_operator,
            )
            result = est.result_with_refinement(result, refined)
        self.component_ = result.v_hat
        self.support_ = result.support
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        """Project samples onto the estimated direction, shape (m, 1)."""
        if not hasattr(self, "component_"):
            raise AttributeError("this estimator is not fitted yet; call fit first")
        X = _check_samples(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        return (X @ self.component_)[:, None]


class DiagonalThresholding(_SparseSpikeEstimator):
    """Support from the k largest diagonal entries of the centered matrix."""

    def _estimate(self, gamma):
        return est.dt_estimate(gamma, self.k)


class SinglePeak(_SparseSpikeEstimator):
    """Support from the largest-magnitude entries of the peak column."""

    def _estimate(self, gamma):
        return est.single_peak_estimate(gamma, self.k)


class SpectralEnergyPursuit(_SparseSpikeEstimator):
    """Support grown by iterative restricted-eigenvector reselection."""

    def _estimate(self, gamma):
        return est.sep_estimate(gamma, self.k)
