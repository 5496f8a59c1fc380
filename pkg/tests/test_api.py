import numpy as np
import pytest
from sklearn.base import clone

from sepca.api import DiagonalThresholding, SinglePeak, SpectralEnergyPursuit
from sepca.metrics import sin_angle, support_recall
from sepca.model import draw_samples, embed_spike
from sepca.profiles import make_profile

ESTIMATORS = [DiagonalThresholding, SinglePeak, SpectralEnergyPursuit]


def _samples(n=40, k=4, theta=3.0, m=400, seed=2):
    model = embed_spike(make_profile("power-law-amplitude", k, alpha=0.5, offset=0.1),
                        n, theta=theta, rng=seed)
    x = draw_samples(model, m, np.random.default_rng(seed)).data
    return model, x


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_fit_recovers_easy_instance(cls):
    model, x = _samples()
    estimator = cls(k=4).fit(x)
    assert estimator.component_.shape == (40,)
    assert abs(np.linalg.norm(estimator.component_) - 1.0) <= 1e-10
    assert support_recall(estimator.support_, model.support) >= 0.75
    assert sin_angle(estimator.component_, model.spike) < 0.5
    assert estimator.n_features_in_ == 40


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_transform_projects_onto_component(cls):
    _, x = _samples()
    estimator = cls(k=4).fit(x)
    z = estimator.transform(x[:7])
    assert z.shape == (7, 1)
    assert np.allclose(z[:, 0], x[:7] @ estimator.component_)


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_get_params_round_trip_and_clone(cls):
    est = cls(k=3, refine_iterations=2, refine_k=5, refine_operator="uncentered")
    params = est.get_params()
    assert params["k"] == 3
    assert params["refine_iterations"] == 2
    dup = clone(est)
    assert dup.get_params() == params
    dup.set_params(k=6)
    assert dup.k == 6 and est.k == 3


def test_refinement_changes_support_size():
    _, x = _samples()
    est = SpectralEnergyPursuit(k=4, refine_iterations=3, refine_k=6).fit(x)
    assert len(est.support_) <= 6
    assert np.count_nonzero(est.component_) <= 6


def test_unfitted_transform_raises():
    with pytest.raises(AttributeError):
        DiagonalThresholding(k=2).transform(np.zeros((3, 5)))


def test_fit_validates_input():
    with pytest.raises(ValueError):
        DiagonalThresholding(k=2).fit(np.zeros((4, 4, 4)))
    with pytest.raises(ValueError):
        DiagonalThresholding(k=2).fit(np.array([[np.inf, 0.0], [0.0, 1.0]]))


def test_transform_checks_feature_count():
    _, x = _samples()
    est = DiagonalThresholding(k=4).fit(x)
    with pytest.raises(ValueError):
        est.transform(np.zeros((2, 7)))


def test_pipeline_composition():
    from sklearn.pipeline import Pipeline

    _, x = _samples()
    pipe = Pipeline([("spca", SpectralEnergyPursuit(k=4))])
    z = pipe.fit_transform(x)
    assert z.shape == (x.shape[0], 1)
