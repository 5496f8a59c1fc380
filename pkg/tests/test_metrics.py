import numpy as np
import pytest

from sepca.metrics import sin_angle, support_recall


def test_identical_vectors_give_zero():
    e1 = np.array([1.0, 0.0, 0.0])
    assert sin_angle(e1, e1) == 0.0
    v = np.array([0.6, 0.8])
    assert sin_angle(v, v) <= 1e-15


def test_resolves_tiny_angles_below_sqrt_eps():
    u = np.array([1.0, 0.0])
    tiny = 1e-10
    v = np.array([np.sqrt(1 - tiny ** 2), tiny])
    assert np.isclose(sin_angle(u, v), tiny, rtol=1e-3)


def test_orthogonal_vectors_give_one():
    assert sin_angle(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 1.0


def test_forty_five_degrees():
    u = np.array([1.0, 0.0])
    v = np.array([1.0, 1.0]) / np.sqrt(2)
    # direct evaluation: sqrt(1 - cos^2) with cos = 1/sqrt(2)
    assert np.isclose(sin_angle(u, v), 1 / np.sqrt(2), atol=1e-15)


def test_exact_symmetry_and_sign_invariance():
    rng = np.random.default_rng(21)
    for _ in range(50):
        u = rng.normal(size=7)
        u /= np.linalg.norm(u)
        v = rng.normal(size=7)
        v /= np.linalg.norm(v)
        s = sin_angle(u, v)
        assert sin_angle(-u, v) == s
        assert sin_angle(v, u) == s
        assert sin_angle(-v, -u) == s


def test_rejects_non_unit_inputs():
    with pytest.raises(ValueError):
        sin_angle(np.array([2.0, 0.0]), np.array([1.0, 0.0]))


def test_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        sin_angle(np.array([1.0, 0.0]), np.array([1.0, 0.0, 0.0]))


def test_recall_full_and_disjoint():
    assert support_recall([1, 2, 3], [1, 2, 3]) == 1.0
    assert support_recall([4, 5, 6], [1, 2, 3]) == 0.0


def test_recall_partial():
    assert support_recall([1, 2, 3, 9], [1, 2, 3, 4]) == 0.75


def test_recall_rejects_empty_truth():
    with pytest.raises(ValueError):
        support_recall([1], [])
