import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_instance, random_orthogonal
from softkm import InvalidInput, center, numerical_rank, simplex_complement_basis, truncated_svd


class TestCenter:
    def test_two_point_line(self):
        X = center(np.array([[-1.0, 1.0]]))
        assert X.mean == pytest.approx([0.0])
        np.testing.assert_allclose(X.centered, [[-1.0, 1.0]])

    def test_mean_and_reconstruction(self):
        X = center(np.array([[1.0, 3.0], [2.0, 4.0]]))
        np.testing.assert_allclose(X.mean, [2.0, 3.0])
        np.testing.assert_allclose(X.centered, [[-1.0, 1.0], [-1.0, 1.0]])
        np.testing.assert_allclose(X.values, X.centered + X.mean[:, None])

    def test_identical_columns_center_to_zero(self):
        X = center(np.full((3, 5), 7.5))
        np.testing.assert_allclose(X.centered, 0.0, atol=1e-12)

    def test_rows_sum_to_zero(self):
        X = center(random_instance(3, 6, 40, scale=10.0))
        rowsums = X.centered.sum(axis=1)
        mags = np.abs(X.values).max(axis=1)
        assert np.all(np.abs(rowsums) <= 1e-10 * 40 * np.maximum(mags, 1.0))

    def test_idempotent(self):
        X = center(random_instance(4, 5, 30))
        Y = center(X.centered)
        np.testing.assert_allclose(Y.mean, 0.0, atol=1e-12)
        np.testing.assert_allclose(Y.centered, X.centered, atol=1e-12)

    def test_empty_matrix_rejected(self):
        with pytest.raises(InvalidInput):
            center(np.zeros((0, 3)))

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidInput):
            center(np.array([[1.0, np.nan]]))

    def test_one_dim_input_is_single_row(self):
        X = center([1.0, 2.0, 3.0])
        assert X.values.shape == (1, 3)

    def test_immutable(self):
        X = center(np.array([[1.0, 2.0]]))
        with pytest.raises(ValueError):
            X.values[0, 0] = 9.0


class TestSimplexComplementBasis:
    def test_k2(self):
        B = simplex_complement_basis(2)
        np.testing.assert_allclose(B, [[0.7071067811865475], [-0.7071067811865475]],
                                   atol=1e-15)

    def test_k3(self):
        B = simplex_complement_basis(3)
        s2, s6 = 1 / np.sqrt(2), 1 / np.sqrt(6)
        np.testing.assert_allclose(B[:, 0], [s2, -s2, 0.0], atol=1e-15)
        np.testing.assert_allclose(B[:, 1], [s6, s6, -2 * s6], atol=1e-15)

    @pytest.mark.parametrize("k", list(range(2, 33)))
    def test_orthonormal_and_ones_orthogonal(self, k):
        B = simplex_complement_basis(k)
        assert B.shape == (k, k - 1)
        assert np.abs(B.T @ B - np.eye(k - 1)).max() <= 1e-10
        assert np.abs(np.ones(k) @ B).max() <= 1e-12

    def test_rows_span_complement(self):
        # B B^T is the centering projector I - ones ones^T / k
        k = 7
        B = simplex_complement_basis(k)
        P = np.eye(k) - np.full((k, k), 1.0 / k)
        np.testing.assert_allclose(B @ B.T, P, atol=1e-12)

    @pytest.mark.parametrize("k", [1, 0, -2])
    def test_small_k_rejected(self, k):
        with pytest.raises(InvalidInput):
            simplex_complement_basis(k)


class TestTruncatedSvd:
    def test_diagonal(self):
        A = np.diag([3.0, 2.0, 1.0])
        U, s, V = truncated_svd(A, 2)
        np.testing.assert_allclose(s, [3.0, 2.0])
        resid = A - U @ np.diag(s) @ V.T
        assert np.sum(resid ** 2) == pytest.approx(1.0, rel=1e-12)

    def test_identity_full(self):
        U, s, V = truncated_svd(np.eye(4), 4)
        np.testing.assert_allclose(s, np.ones(4))
        np.testing.assert_allclose(U @ V.T, np.eye(4), atol=1e-12)

    def test_residual_is_tail_energy(self):
        A = random_instance(11, 6, 10)
        full = np.linalg.svd(A, compute_uv=False)
        for m in (1, 3, 5):
            U, s, V = truncated_svd(A, m)
            np.testing.assert_allclose(s, full[:m], rtol=1e-12)
            resid = float(np.sum((A - U @ np.diag(s) @ V.T) ** 2))
            tail = float(np.sum(full[m:] ** 2))
            assert abs(resid - tail) <= 1e-8 * max(tail, 1.0)

    def test_orthonormal_factors(self):
        A = random_instance(13, 8, 12)
        U, s, V = truncated_svd(A, 4)
        np.testing.assert_allclose(U.T @ U, np.eye(4), atol=1e-10)
        np.testing.assert_allclose(V.T @ V, np.eye(4), atol=1e-10)
        assert np.all(np.diff(s) <= 1e-12)

    def test_sign_pinning(self):
        A = random_instance(17, 7, 9)
        U, s, V = truncated_svd(A, 3)
        for j in range(3):
            assert U[np.argmax(np.abs(U[:, j])), j] > 0
        # flipping the data still reconstructs, signs stay pinned
        U2, s2, V2 = truncated_svd(-A, 3)
        for j in range(3):
            assert U2[np.argmax(np.abs(U2[:, j])), j] > 0

    @pytest.mark.parametrize("m", [0, 7, -1])
    def test_rank_out_of_range(self, m):
        with pytest.raises(InvalidInput):
            truncated_svd(np.eye(5), m)


class TestNumericalRank:
    def test_zero_matrix(self):
        assert numerical_rank(np.zeros((4, 6))) == 0

    def test_outer_product(self):
        u = np.arange(1.0, 5.0)
        assert numerical_rank(np.outer(u, u)) == 1

    def test_centering_projector(self):
        H = np.eye(3) - np.full((3, 3), 1.0 / 3.0)
        assert numerical_rank(H) == 2

    def test_scale_invariant(self):
        A = random_instance(5, 4, 9)
        assert numerical_rank(A) == numerical_rank(1e6 * A) == numerical_rank(1e-6 * A)

    def test_orthogonal_invariance(self):
        A = random_instance(7, 5, 8)
        for seed in range(5):
            Q = random_orthogonal(seed, 5)
            assert numerical_rank(Q @ A) == numerical_rank(A)

    def test_near_rank_deficient(self):
        A = np.diag([1.0, 1e-3, 1e-14])
        assert numerical_rank(A) == 2
        assert numerical_rank(A, tau=1e-4) == 2
        assert numerical_rank(A, tau=1e-2) == 1

    def test_bad_tau(self):
        with pytest.raises(InvalidInput):
            numerical_rank(np.eye(2), tau=0.0)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10_000))
def test_center_rows_sum_to_zero_property(d, seed):
    X = center(random_instance(seed, d, 17, scale=3.0))
    assert np.abs(X.centered.sum(axis=1)).max() <= 1e-9
