from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from toricmle.errors import (
    DimensionMismatch,
    InvalidData,
    NonPositiveP,
    RankDeficient,
    ZeroScaling,
    ZeroTheta,
)
from toricmle.fixtures import (
    VERONESE_EXAMPLE_DATA,
    WORKER_COUNTS,
    WORKER_MLE,
    four_cycle_model,
    from_s_first,
    veronese_example_model,
)
from toricmle.model import (
    DataVector,
    birch_residual,
    evaluate_map,
    jacobian,
    likelihood_residual,
    log_likelihood,
    sufficient_statistics,
    validate_model,
)

from conftest import models, random_model


class TestValidateModel:
    def test_rational_normal_curve(self):
        m = validate_model([[0, 1, 2, 3, 4]], [1] * 5)
        assert (m.d, m.n) == (2, 5)
        assert m.A_bar[-1].tolist() == [1] * 5

    def test_rank_deficient(self):
        with pytest.raises(RankDeficient):
            validate_model([[0, 1, 2], [0, 1, 2]])

    def test_zero_scaling(self):
        with pytest.raises(ZeroScaling):
            validate_model([[0, 1, 2]], [1, 0, 1])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            validate_model([[0, 1, 2]], [1, 1])
        with pytest.raises(DimensionMismatch):
            validate_model([[0, 0.5, 2]])

    def test_constant_row_is_rank_deficient(self):
        # a row of ones duplicates the homogenizing row
        with pytest.raises(RankDeficient):
            validate_model([[1, 1, 1], [0, 1, 2]])

    def test_rational_scalings(self):
        m = validate_model([[0, 1, 2]], ["1/2", Fraction(3), 2])
        assert m.c == (Fraction(1, 2), 3, 2)
        assert m.c_float.tolist() == [0.5, 3.0, 2.0]

    def test_negative_exponents_accepted(self):
        m = validate_model([[-1, 0, 1]])
        p = evaluate_map(m, [2.0, 1.0])
        assert p == pytest.approx([0.5, 1.0, 2.0])


class TestEvaluateMap:
    def test_ones(self, vstat):
        assert evaluate_map(vstat, [1, 1, 1]).tolist() == [1.0] * 6

    def test_scaled_ones(self):
        m = veronese_example_model([1, 2, 1, 2, 2, 1])
        assert evaluate_map(m, [1, 1, 1]).tolist() == [1, 2, 1, 2, 2, 1]

    def test_curve_by_hand(self):
        # s * t**j with s=2, t=3; theta is ordered (t, s)
        m = validate_model([[0, 1, 2]])
        assert evaluate_map(m, [3.0, 2.0]) == pytest.approx([2, 6, 18], rel=1e-14)

    def test_zero_theta(self):
        m = validate_model([[-1, 0, 1]])
        with pytest.raises(ZeroTheta):
            evaluate_map(m, [0.0, 1.0])
        # zero is fine under nonnegative exponents
        m2 = validate_model([[0, 1, 2]])
        assert evaluate_map(m2, [0.0, 2.0]).tolist() == [2.0, 0.0, 0.0]

    def test_negative_theta(self):
        m = validate_model([[0, 1, 2]])
        assert evaluate_map(m, [-2.0, 1.0]) == pytest.approx([1, -2, 4])

    @given(models())
    @settings(max_examples=40, deadline=None)
    def test_all_ones_returns_c(self, model):
        assert np.array_equal(evaluate_map(model, np.ones(model.d)), model.c_float)


class TestStatistics:
    def test_segre_symmetry(self):
        from toricmle.families import segre_model

        m = segre_model(2, 2)
        assert sufficient_statistics(m, [1, 1, 1, 1]) == [Fraction(1, 2), Fraction(1, 2), 1]

    def test_veronese_example_constants(self, vstat):
        b = sufficient_statistics(vstat, VERONESE_EXAMPLE_DATA)
        # 27 = u_plus, rows (t1, t2, ones) carry 22 and 20
        assert [x * 27 for x in b] == [22, 20, 27]

    def test_zero_total_rejected(self):
        with pytest.raises(InvalidData):
            DataVector((0, 0, 0))
        with pytest.raises(InvalidData):
            DataVector((1, -1, 3))


class TestBirchResidual:
    def test_saturated(self):
        # n distinct vertices of a simplex: every p is a Birch point of itself
        m = validate_model(np.eye(4, 5, k=1, dtype=int))
        u = [3, 1, 4, 1, 5]
        p = np.array(u) / sum(u)
        assert birch_residual(m, u, p) <= 1e-16

    def test_worker_mle(self):
        assert birch_residual(four_cycle_model(), WORKER_COUNTS, WORKER_MLE) <= 1e-6

    def test_sum_violation(self, rng):
        m = random_model(rng)
        u = rng.integers(1, 10, m.n)
        p = rng.uniform(0.1, 1, m.n)
        assert birch_residual(m, u, p) >= abs(p.sum() - 1)


def _residual_oracle(model, u, theta):
    # explicit loops; shares nothing with the vectorized path
    A = model.A_bar.tolist()
    c = [float(x) for x in model.c]
    up = sum(u)
    p = []
    for j in range(model.n):
        v = c[j]
        for i in range(model.d):
            v *= theta[i] ** A[i][j]
        p.append(v)
    return [up * sum(A[i][j] * p[j] for j in range(model.n)) - sum(A[i][j] * u[j] for j in range(model.n))
            for i in range(model.d)]


class TestLikelihoodResidual:
    def test_printed_polynomials(self, vstat):
        u = VERONESE_EXAMPLE_DATA
        rng = np.random.default_rng(1)
        for _ in range(5):
            s, t1, t2 = rng.uniform(0.1, 2, 3)
            printed = [
                27 * s * t1**2 + 27 * s * t1 * t2 + 27 * s * t2**2 + 27 * s * t1 + 27 * s * t2 + 27 * s - 27,
                54 * s * t1**2 + 27 * s * t1 * t2 + 27 * s * t1 - 22,
                27 * s * t1 * t2 + 54 * s * t2**2 + 27 * s * t2 - 20,
            ]
            F = likelihood_residual(vstat, u, from_s_first((s, t1, t2)))
            # ours is ordered (t1, t2, ones)
            assert F == pytest.approx([printed[1], printed[2], printed[0]], rel=1e-12, abs=1e-12)

    def test_zero_at_saturated_mle(self):
        m = validate_model([[0, 1, 0], [0, 0, 1]])
        u = [2, 3, 5]
        # p = s * (1, t1, t2) = u / u_plus
        theta = [3 / 2, 5 / 2, 0.2]
        assert np.abs(likelihood_residual(m, u, theta)).max() < 1e-13

    def test_against_loop_oracle(self, rng):
        for _ in range(20):
            m = random_model(rng)
            u = rng.integers(0, 20, m.n).tolist()
            u[0] += 1
            theta = rng.uniform(0.2, 2.0, m.d)
            assert likelihood_residual(m, u, theta) == pytest.approx(_residual_oracle(m, u, theta), rel=1e-10, abs=1e-9)

    def test_zero_residual_implies_birch(self, rng):
        from toricmle.ips import ips_solve

        m = random_model(rng)
        u = rng.integers(1, 20, m.n)
        theta = ips_solve(m, u).theta_hat
        p = evaluate_map(m, theta)
        assert abs(p.sum() - 1) < 1e-9
        assert birch_residual(m, u, p) < 1e-9


def _fd_jacobian(model, u, theta, h=1e-6):
    J = np.empty((model.d, model.d))
    for k in range(model.d):
        e = np.zeros(model.d)
        e[k] = h
        J[:, k] = (likelihood_residual(model, u, theta + e) - likelihood_residual(model, u, theta - e)) / (2 * h)
    return J


class TestJacobian:
    def test_spd_at_ones(self, rng):
        for _ in range(10):
            m = random_model(rng)
            m = m.with_scaling([1] * m.n)
            u = rng.integers(1, 10, m.n)
            J = jacobian(m, u, np.ones(m.d))
            assert np.allclose(J, J.T)
            assert np.linalg.eigvalsh(J).min() > 0

    def test_finite_differences(self, rng):
        for _ in range(20):
            m = random_model(rng)
            u = rng.integers(1, 10, m.n)
            theta = rng.uniform(0.3, 2.0, m.d)
            J = jacobian(m, u, theta)
            assert np.linalg.norm(J - _fd_jacobian(m, u, theta)) <= 1e-5 * np.linalg.norm(J)

    def test_two_state_by_hand(self):
        # A = (0 1): p0 = c0 s, p1 = c1 t s with theta = (t, s)
        c0, c1, t, s = 2.0, 3.0, 0.7, 1.3
        m = validate_model([[0, 1]], [c0, c1])
        u = [4, 6]
        up = 10
        expected = up * np.array([[c1 * s, c1 * t], [c1 * s, c0 + c1 * t]])
        assert jacobian(m, u, [t, s]) == pytest.approx(expected, rel=1e-14)

    def test_zero_theta(self):
        m = validate_model([[0, 1]])
        with pytest.raises(ZeroTheta):
            jacobian(m, [1, 1], [0.0, 1.0])

    @given(models())
    @settings(max_examples=30, deadline=None)
    def test_gram_matrix_positive_definite(self, model):
        p = np.random.default_rng(0).uniform(0.01, 1, model.n)
        G = (model.A_bar_float * p) @ model.A_bar_float.T
        assert np.linalg.eigvalsh(G).min() > 0


class TestLogLikelihood:
    def test_saturated_maximum(self, rng):
        u = np.array([3, 1, 4, 1, 5])
        m = validate_model(np.eye(4, 5, k=1, dtype=int))
        best = log_likelihood(m, u, u / u.sum())
        for _ in range(50):
            q = rng.dirichlet(np.ones(5))
            assert log_likelihood(m, u, q) <= best + 1e-12

    def test_scale_invariant(self, rng):
        m = random_model(rng)
        u = rng.integers(1, 10, m.n)
        p = rng.uniform(0.1, 1, m.n)
        assert log_likelihood(m, u, 7.5 * p) == pytest.approx(log_likelihood(m, u, p), rel=1e-12)

    def test_worker_mle_beats_uniform(self):
        m = four_cycle_model()
        assert log_likelihood(m, WORKER_COUNTS, WORKER_MLE) >= log_likelihood(m, WORKER_COUNTS, np.full(16, 1 / 16))

    def test_nonpositive(self):
        m = validate_model([[0, 1]])
        with pytest.raises(NonPositiveP):
            log_likelihood(m, [1, 1], [0.0, 1.0])
