import numpy as np
import pytest

from sepca.exceptions import ConvergenceError
from sepca.linalg import (
    dense_top_eigvec,
    hard_threshold,
    spectral_norm,
    top_eigvec,
    top_k_indices,
)


def _sym(rng, n, scale=1.0):
    a = rng.normal(size=(n, n)) * scale
    return (a + a.T) / 2


class TestTopEigvec:
    def test_diagonal(self):
        lam, v = top_eigvec(np.diag([3.0, 1.0]))
        assert np.isclose(lam, 3.0, atol=1e-10)
        assert np.allclose(v, [1.0, 0.0], atol=1e-10)

    def test_rank_one(self):
        rng = np.random.default_rng(0)
        u = rng.normal(size=5)
        u /= np.linalg.norm(u)
        lam, v = top_eigvec(3.0 * np.outer(u, u))
        assert np.isclose(lam, 3.0, atol=1e-9)
        assert np.isclose(abs(v @ u), 1.0, atol=1e-9)

    def test_sign_convention_largest_entry_positive(self):
        u = np.array([0.2, -0.9, 0.1, 0.3])
        u /= np.linalg.norm(u)
        _, v = top_eigvec(2.0 * np.outer(u, u))
        assert v[np.argmax(np.abs(v))] > 0

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_closed_form_2x2(self, seed):
        rng = np.random.default_rng(seed)
        a, b, d = rng.normal(size=3)
        mat = np.array([[a, b], [b, d]])
        lam, v = top_eigvec(mat)
        # characteristic-polynomial oracle for the larger root
        mean = (a + d) / 2
        disc = np.sqrt(((a - d) / 2) ** 2 + b ** 2)
        lam_true = mean + disc
        assert abs(lam - lam_true) < 1e-10
        assert np.linalg.norm(mat @ v - lam * v) < 1e-10

    def test_targets_algebraically_largest_not_largest_magnitude(self):
        lam, v = top_eigvec(np.diag([2.0, -5.0]))
        assert np.isclose(lam, 2.0, atol=1e-10)
        assert np.allclose(v, [1.0, 0.0], atol=1e-10)

    def test_residual_contract(self):
        rng = np.random.default_rng(42)
        mat = _sym(rng, 12)
        lam, v = top_eigvec(mat, tol=1e-11)
        assert np.linalg.norm(mat @ v - lam * v) <= 1e-11
        assert np.isclose(np.linalg.norm(v), 1.0, atol=1e-12)

    def test_matches_dense_solver(self):
        # a planted spike keeps the gap healthy; near-degenerate gaps
        # legitimately end in ConvergenceError instead
        rng = np.random.default_rng(7)
        for _ in range(20):
            u = rng.normal(size=9)
            u /= np.linalg.norm(u)
            mat = _sym(rng, 9) + 6.0 * np.outer(u, u)
            lam, v = top_eigvec(mat)
            w = np.linalg.eigvalsh(mat)
            assert abs(lam - w[-1]) < 1e-9

    def test_start_vector_in_null_space_recovers(self):
        # shifted matrix annihilates both all-ones and e_1
        mat = np.array([
            [-1.0, 0.0, 0.0],
            [0.0, 0.0, -1.0],
            [0.0, -1.0, 0.0],
        ])
        lam, v = top_eigvec(mat)
        assert np.isclose(lam, 1.0, atol=1e-10)
        assert np.isclose(abs(v @ np.array([0, 1, -1]) / np.sqrt(2)), 1.0, atol=1e-8)

    def test_zero_matrix(self):
        lam, v = top_eigvec(np.zeros((3, 3)))
        assert lam == 0.0
        assert np.isclose(np.linalg.norm(v), 1.0)

    def test_one_by_one(self):
        lam, v = top_eigvec(np.array([[-2.5]]))
        assert lam == -2.5
        assert np.array_equal(v, [1.0])

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            top_eigvec(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            top_eigvec(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_nonconvergence_reports_residual(self):
        rng = np.random.default_rng(5)
        mat = _sym(rng, 6)
        with pytest.raises(ConvergenceError) as err:
            top_eigvec(mat, tol=1e-30, max_iter=3)
        assert err.value.residual is not None


class TestDenseTopEigvec:
    @pytest.mark.parametrize("seed", range(10))
    def test_agrees_with_power_iteration_contract(self, seed):
        rng = np.random.default_rng(seed)
        mat = _sym(rng, 7)
        lam, v = dense_top_eigvec(mat)
        assert abs(lam - np.linalg.eigvalsh(mat)[-1]) < 1e-12
        assert np.linalg.norm(mat @ v - lam * v) < 1e-10
        assert v[np.argmax(np.abs(v))] > 0
        assert np.isclose(np.linalg.norm(v), 1.0, atol=1e-12)

    def test_matches_power_iteration_on_gapped_matrix(self):
        rng = np.random.default_rng(3)
        u = rng.normal(size=6)
        u /= np.linalg.norm(u)
        mat = _sym(rng, 6, scale=0.2) + 4.0 * np.outer(u, u)
        lam_d, v_d = dense_top_eigvec(mat)
        lam_p, v_p = top_eigvec(mat)
        assert abs(lam_d - lam_p) < 1e-9
        assert np.allclose(v_d, v_p, atol=1e-8)

    def test_one_by_one(self):
        lam, v = dense_top_eigvec(np.array([[-1.5]]))
        assert lam == -1.5
        assert np.array_equal(v, [1.0])


class TestHardThreshold:
    def test_keeps_two_largest_magnitudes(self):
        out = hard_threshold(np.array([3.0, -5.0, 2.0, 0.0]), 2)
        assert np.array_equal(out, [3.0, -5.0, 0.0, 0.0])

    def test_k_equals_n_is_identity(self):
        y = np.array([1.0, -2.0, 0.5])
        assert np.array_equal(hard_threshold(y, 3), y)

    def test_tie_keeps_lowest_index(self):
        assert np.array_equal(hard_threshold(np.array([2.0, -2.0]), 1), [2.0, 0.0])

    @pytest.mark.parametrize("k", [0, 5, -1])
    def test_out_of_range_k(self, k):
        with pytest.raises(ValueError):
            hard_threshold(np.array([1.0, 2.0, 3.0, 4.0]), k)


class TestTopKIndices:
    def test_ties_resolve_to_lowest_indices(self):
        vals = np.array([1.0, 3.0, 3.0, 2.0, 3.0])
        assert np.array_equal(top_k_indices(vals, 2), [1, 2])

    def test_sorted_output(self):
        vals = np.array([5.0, 1.0, 9.0, 7.0])
        assert np.array_equal(top_k_indices(vals, 3), [0, 2, 3])


class TestSpectralNorm:
    @pytest.mark.parametrize("seed", range(6))
    def test_matches_svd(self, seed):
        rng = np.random.default_rng(seed)
        mat = _sym(rng, 8)
        assert np.isclose(spectral_norm(mat), np.linalg.svd(mat, compute_uv=False)[0],
                          rtol=1e-7, atol=1e-9)

    def test_zero_matrix(self):
        assert spectral_norm(np.zeros((4, 4))) == 0.0

    def test_negative_dominant_eigenvalue(self):
        mat = np.diag([1.0, -7.0])
        assert np.isclose(spectral_norm(mat), 7.0, atol=1e-8)
