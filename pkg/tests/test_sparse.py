import cvxpy as cp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cellsp.complex import build_b1, build_b2
from cellsp.errors import IllPosedSamplingError
from cellsp.sparse import (
    SampleSet,
    basis_pursuit,
    basis_pursuit_admm,
    gram_rank_logdet,
    maxdet_select,
    reconstruct_from_samples,
    shrinkage_threshold,
    soft_threshold,
    sparsity_mse_curve,
    support_of,
)
from cellsp.spectral import spectral_basis

from .oracles import best_subset_logdet
from .strategies import complexes


def orthonormal(n, seed):
    q, _ = np.linalg.qr(np.random.default_rng(seed).standard_normal((n, n)))
    return q


def cvxpy_bp(y, v, eps):
    s = cp.Variable(v.shape[1])
    prob = cp.Problem(cp.Minimize(cp.norm1(s)), [cp.norm2(y - v @ s) <= eps])
    prob.solve(solver=cp.CLARABEL)
    return s.value, prob.value


class TestBasisPursuit:
    def test_eps_zero_is_analysis(self, rng):
        v = orthonormal(6, 0)
        y = rng.standard_normal(6)
        np.testing.assert_allclose(basis_pursuit(y, v, 0.0).coefficients, v.T @ y, atol=1e-12)

    def test_scaled_column(self):
        v = orthonormal(5, 1)
        code = basis_pursuit(2 * v[:, 3], v, 1.0)
        np.testing.assert_allclose(code.coefficients, np.eye(5)[3], atol=1e-12)
        assert list(code.support) == [3]
        assert code.residual == pytest.approx(1.0)

    def test_zero_signal(self):
        code = basis_pursuit(np.zeros(4), orthonormal(4, 2), 0.5)
        np.testing.assert_array_equal(code.coefficients, 0)

    def test_eps_above_norm(self, rng):
        y = rng.standard_normal(4)
        code = basis_pursuit(y, orthonormal(4, 3), np.linalg.norm(y) * 1.01)
        np.testing.assert_array_equal(code.coefficients, 0)

    def test_negative_eps(self):
        with pytest.raises(ValueError):
            basis_pursuit(np.ones(2), np.eye(2), -1.0)

    @given(st.integers(2, 12), st.integers(0, 2**32 - 1), st.floats(0.0, 0.95))
    def test_closed_form_kkt(self, n, seed, frac):
        rng = np.random.default_rng(seed)
        v = orthonormal(n, seed)
        y = rng.standard_normal(n)
        eps = frac * np.linalg.norm(y)
        code = basis_pursuit(y, v, eps)
        s = code.coefficients
        assert code.residual <= eps + 1e-10
        if eps > 0:
            # active constraint; stationarity: V^T (y - V s) = mu * sign(s) on the support, |.| <= mu off it
            assert code.residual == pytest.approx(eps, rel=1e-9, abs=1e-12)
            g = v.T @ (y - v @ s)
            on = np.abs(s) > 1e-12
            mu = np.max(np.abs(g))
            np.testing.assert_allclose(g[on], mu * np.sign(s[on]), atol=1e-9)
            assert np.all(np.abs(g[~on]) <= mu + 1e-9)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_cvxpy_orthonormal(self, seed):
        rng = np.random.default_rng(seed)
        v = orthonormal(10, seed)
        y = rng.standard_normal(10)
        eps = 0.4 * np.linalg.norm(y)
        ref, obj = cvxpy_bp(y, v, eps)
        code = basis_pursuit(y, v, eps)
        assert np.abs(code.coefficients).sum() == pytest.approx(obj, abs=1e-6)
        np.testing.assert_allclose(code.coefficients, ref, atol=1e-4)  # interior-point accuracy

    @pytest.mark.parametrize("seed", range(3))
    def test_admm_matches_cvxpy_restricted_basis(self, seed):
        rng = np.random.default_rng(seed)
        v = orthonormal(12, seed)[:, :7] @ np.diag(rng.uniform(0.5, 2.0, 7))
        y = rng.standard_normal(12)
        eps = 0.8 * np.linalg.norm(y - v @ np.linalg.lstsq(v, y, rcond=None)[0]) + 0.3 * np.linalg.norm(y)
        ref, obj = cvxpy_bp(y, v, eps)
        code = basis_pursuit(y, v, eps)
        assert code.residual <= eps + 1e-6
        assert np.abs(code.coefficients).sum() == pytest.approx(obj, rel=1e-5, abs=1e-6)

    def test_admm_on_orthonormal_matches_closed_form(self, rng):
        v = orthonormal(8, 7)
        y = rng.standard_normal(8)
        eps = 0.5 * np.linalg.norm(y)
        np.testing.assert_allclose(basis_pursuit_admm(y, v, eps), basis_pursuit(y, v, eps).coefficients, atol=1e-6)


class TestShrinkage:
    def test_threshold_solves_residual_equation(self, rng):
        c = rng.standard_normal(9)
        for eps in (0.1, 0.5, 1.0, 2.0):
            tau = shrinkage_threshold(c, eps)
            assert np.sum(np.minimum(np.abs(c), tau) ** 2) == pytest.approx(min(eps**2, np.sum(c**2)))

    def test_soft_threshold(self):
        np.testing.assert_allclose(soft_threshold(np.array([-3.0, 0.5, 2.0]), 1.0), [-2.0, 0.0, 1.0])

    def test_support_tolerance(self):
        assert list(support_of(np.array([1.0, 1e-7, -0.5, 0.0]))) == [0, 2]
        assert support_of(np.zeros(3)).size == 0


class TestSparsityCurve:
    def test_eps_zero_and_max(self, rng):
        v = orthonormal(6, 4)
        batch = rng.standard_normal((6, 5))
        rows = sparsity_mse_curve(batch, v, [np.max(np.linalg.norm(batch, axis=0)), 0.0])
        assert rows[0][0] == 0.0
        assert rows[0][2] < 1e-25
        assert rows[0][1] == np.mean([support_of(v.T @ batch[:, i]).size for i in range(5)])
        assert rows[1][1] == 0

    def test_sparse_batch(self, rng):
        v = orthonormal(20, 5)
        coeffs = np.zeros((20, 30))
        for j in range(30):
            coeffs[rng.choice(20, 5, replace=False), j] = rng.choice([-1, 1], 5) * rng.uniform(1, 2, 5)
        rows = sparsity_mse_curve(v @ coeffs, v, [1e-3])
        assert rows[0][1] <= 5 + 1

    def test_empty_grid(self):
        with pytest.raises(ValueError):
            sparsity_mse_curve(np.ones((2, 1)), np.eye(2), [])


class TestMaxDet:
    def test_single_column(self, rng):
        u = rng.standard_normal((7, 1))
        assert maxdet_select(u, 1).indices == (int(np.argmax(np.abs(u[:, 0]))),)

    def test_identity_columns(self):
        assert maxdet_select(np.eye(5)[:, :2], 2).indices == (0, 1)

    def test_too_many(self):
        with pytest.raises(ValueError):
            maxdet_select(np.eye(3), 4)

    @pytest.mark.parametrize("seed", range(10))
    def test_against_exhaustive(self, seed):
        u = np.linalg.qr(np.random.default_rng(seed).standard_normal((8, 3)))[0]
        picked = list(maxdet_select(u, 3).indices)
        _, logdet = gram_rank_logdet(u[picked])
        assert np.exp(logdet) >= 0.3 * np.exp(best_subset_logdet(u, 3))

    @given(st.integers(0, 2**32 - 1), st.integers(1, 5))
    def test_monotone_and_full_rank(self, seed, F):
        u = np.linalg.qr(np.random.default_rng(seed).standard_normal((10, F)))[0]
        order = maxdet_select(u, 10).indices
        assert sorted(order) == list(range(10))
        keys = [gram_rank_logdet(u[list(order[:m])]) for m in range(1, 11)]
        assert keys[F - 1][0] == F
        for a, b in zip(keys[F - 1 :], keys[F:]):
            assert b[1] >= a[1] - 1e-9


class TestReconstruction:
    @given(complexes(max_vertices=12), st.integers(0, 2**32 - 1))
    def test_noiseless_exact(self, c, seed):
        b = spectral_basis(build_b1(c), build_b2(c))
        rng = np.random.default_rng(seed)
        F = int(rng.integers(1, c.num_edges + 1))
        u = b.eigenvectors[:, :F]
        s = u @ rng.standard_normal(F)
        samples = maxdet_select(u, F)
        rec = reconstruct_from_samples(samples, s[list(samples.indices)], u)
        assert np.linalg.norm(rec - s) <= 1e-9 * max(np.linalg.norm(s), 1e-300)

    def test_single_sample(self, rng):
        u = np.ones((4, 1)) / 2
        rec = reconstruct_from_samples(SampleSet((2,), 1), np.array([1.5]), u)
        np.testing.assert_allclose(rec, 1.5)

    def test_rank_deficient(self):
        u = np.eye(4)[:, :2]
        with pytest.raises(IllPosedSamplingError):
            reconstruct_from_samples(SampleSet((2, 3), 2), np.zeros(2), u)

    def test_value_count_mismatch(self):
        with pytest.raises(ValueError):
            reconstruct_from_samples(SampleSet((0, 1), 2), np.zeros(3), np.eye(4)[:, :2])

    def test_noise_mse_decreases_with_samples(self):
        rng = np.random.default_rng(0)
        u = np.linalg.qr(rng.standard_normal((40, 6)))[0]
        order = maxdet_select(u, 40).indices
        mse = []
        for m in (6, 16, 40):
            idx = list(order[:m])
            errs = []
            for _ in range(100):
                s = u @ rng.standard_normal(6)
                y = s[idx] + 0.1 * rng.standard_normal(m)
                errs.append(np.mean((reconstruct_from_samples(SampleSet(tuple(idx), 6), y, u) - s) ** 2))
            mse.append(np.mean(errs))
        assert mse[0] > mse[1] > mse[2]
