import numpy as np
import pytest

from sepca.profiles import PROFILE_KINDS, SpikeProfile, make_profile


def test_flat_k4_is_uniform():
    p = make_profile("flat", 4)
    assert np.array_equal(p.weights, np.full(4, 0.25))


def test_power_law_amplitude_k40_matches_simulation_profile():
    # offset applies to amplitudes before squaring
    p = make_profile("power-law-amplitude", 40, alpha=0.5, offset=0.1)
    j = np.arange(1, 41, dtype=float)
    amp = j ** -0.5 + 0.1
    expected = np.sort(amp * amp)[::-1]
    expected /= expected.sum()
    assert np.allclose(p.weights, expected, rtol=0, atol=1e-15)
    assert np.all(np.diff(p.weights) <= 0)
    assert abs(p.weights.sum() - 1.0) <= 1e-12


def test_power_law_energy_alpha1_k2():
    # normalization of (1, 1/2) gives (2/3, 1/3)
    p = make_profile("power-law-energy", 2, alpha=1.0)
    assert np.allclose(p.weights, [2 / 3, 1 / 3], rtol=0, atol=1e-15)


def test_exponential_amplitude_shape():
    p = make_profile("exponential-amplitude", 6, rate=1.0, offset=0.1)
    j = np.arange(1, 7, dtype=float)
    amp = np.exp(-j) + 0.1
    expected = amp * amp / np.sum(amp * amp)
    assert np.allclose(p.weights, expected, rtol=0, atol=1e-15)


def test_custom_weights_sorted_and_normalized():
    p = make_profile("custom", 3, weights=[1.0, 4.0, 3.0])
    assert np.allclose(p.weights, [0.5, 0.375, 0.125])


@pytest.mark.parametrize("kind,params", [
    ("flat", {}),
    ("power-law-amplitude", {"alpha": 0.5}),
    ("exponential-amplitude", {"rate": 2.0}),
    ("power-law-energy", {"alpha": 1.5}),
])
def test_default_offsets_and_validity(kind, params):
    p = make_profile(kind, 7, **params)
    assert p.k == 7
    assert np.all(p.weights >= 0)
    assert abs(p.weights.sum() - 1.0) <= 1e-12


@pytest.mark.parametrize("bad_call", [
    lambda: make_profile("flat", 0),
    lambda: make_profile("flat", -2),
    lambda: make_profile("power-law-amplitude", 3, alpha=0.5, offset=-0.1),
    lambda: make_profile("exponential-amplitude", 3, rate=1.0, offset=-1.0),
    lambda: make_profile("custom", 3, weights=[0.0, 0.0, 0.0]),
    lambda: make_profile("custom", 3, weights=[1.0, -0.5, 0.5]),
    lambda: make_profile("custom", 3, weights=[1.0, 1.0]),
    lambda: make_profile("no-such-kind", 3),
    lambda: make_profile("flat", 3, alpha=1.0),
])
def test_invalid_inputs_raise(bad_call):
    with pytest.raises(ValueError):
        bad_call()


def test_profile_type_rejects_unsorted_and_unnormalized():
    with pytest.raises(ValueError):
        SpikeProfile(k=2, weights=np.array([0.3, 0.7]))
    with pytest.raises(ValueError):
        SpikeProfile(k=2, weights=np.array([0.7, 0.7]))


def test_random_profiles_satisfy_invariants():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        k = int(rng.integers(1, 65))
        w = rng.uniform(0.0, 1.0, size=k) + 1e-12
        p = make_profile("custom", k, weights=w)
        assert np.all(p.weights >= 0)
        assert np.all(np.diff(p.weights) <= 0)
        assert abs(p.weights.sum() - 1.0) <= 1e-12


def test_kind_list_is_stable():
    assert set(PROFILE_KINDS) == {
        "flat", "power-law-amplitude", "exponential-amplitude",
        "power-law-energy", "custom",
    }
