import mpmath
import numpy as np
import pytest

from drivenchain.errors import FloquetResonanceError, NoUniqueSteadyStateError
from drivenchain.lyap import (
    matrix_exp,
    propagate_period,
    solve_continuous_lyapunov,
    solve_discrete_lyapunov,
)
from drivenchain.models import ChainParams, assemble_structure, build_bath_vectors, build_xy_form


def taylor_exp_oracle(a, terms=60, dps=50):
    """Plain Taylor series in 50-digit arithmetic; independent of the
    scaling-and-squaring path."""
    with mpmath.workdps(dps):
        m = mpmath.matrix(a.tolist())
        acc = mpmath.eye(m.rows)
        term = mpmath.eye(m.rows)
        for k in range(1, terms + 1):
            term = term * m / k
            acc += term
        return np.array(acc.tolist(), dtype=complex)


class TestMatrixExp:
    def test_zero_matrix(self):
        assert np.abs(matrix_exp(np.zeros((3, 3))) - np.eye(3)).max() == 0

    def test_diagonal(self):
        out = matrix_exp(np.diag([1.0, -2.0]))
        assert np.abs(out - np.diag([np.e, np.exp(-2.0)])).max() < 1e-14

    def test_against_taylor_oracle(self, rng):
        a = rng.standard_normal((8, 8))
        a *= 3.0 / np.linalg.norm(a, 2)
        expected = taylor_exp_oracle(a)
        got = matrix_exp(a)
        assert np.abs(got - expected).max() / np.abs(expected).max() < 1e-11

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            matrix_exp(np.zeros((2, 3)))

    def test_rejects_non_finite(self):
        bad = np.zeros((2, 2))
        bad[0, 1] = np.inf
        with pytest.raises(ValueError):
            matrix_exp(bad)


class TestContinuousLyapunov:
    def test_identity_damping(self):
        y = np.array([[0.0, 4.0], [-4.0, 0.0]])
        c = solve_continuous_lyapunov(np.eye(2), y)
        assert np.abs(c.c - np.array([[0, 2j], [-2j, 0]])).max() < 1e-12

    def test_zero_noise(self):
        x = np.array([[1.0, 0.3], [0.0, 2.0]])
        c = solve_continuous_lyapunov(x, np.zeros((2, 2)))
        assert np.abs(c.c).max() < 1e-14

    def test_random_stable_residual(self, rng):
        a = rng.standard_normal((10, 10))
        x = a @ a.T + 0.5 * np.eye(10)  # positive definite => stable
        w = rng.standard_normal((10, 10))
        y = w - w.T
        c = solve_continuous_lyapunov(x, y)
        assert np.abs(x @ c.c + c.c @ x.T - 1j * y).max() <= 1e-10
        assert np.abs(c.c + c.c.T).max() < 1e-12

    def test_unstable_matrix_reports_eigenvalue(self):
        x = np.diag([1.0, -0.5])
        with pytest.raises(NoUniqueSteadyStateError, match="eigenvalue"):
            solve_continuous_lyapunov(x, np.zeros((2, 2)))


class TestDiscreteLyapunov:
    def test_zero_propagator(self, rng):
        r = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        c = solve_discrete_lyapunov(np.zeros((4, 4)), r)
        assert np.abs(c.c + r).max() < 1e-12

    def test_scalar_propagator(self, rng):
        alpha = 0.6
        w = rng.standard_normal((6, 6))
        r = (w - w.T) + 0j
        c = solve_discrete_lyapunov(alpha * np.eye(6), r)
        assert np.abs(c.c - r / (alpha**2 - 1.0)).max() < 1e-12

    def test_resonant_pair_detected(self):
        with pytest.raises(FloquetResonanceError):
            solve_discrete_lyapunov(np.eye(3), np.zeros((3, 3)))


def _structure(n=4, gamma=0.5, h=0.75):
    params = ChainParams(n_sites=n, gamma=gamma, h=h)
    s = assemble_structure(build_xy_form(params), build_bath_vectors(params))
    return s.x, s.y


class TestPropagatePeriod:
    def test_zero_noise_means_zero_p(self):
        x, _ = _structure()
        prop = propagate_period(x, np.zeros_like(x), 0.8)
        assert np.abs(prop.p).max() < 1e-14
        assert np.abs(prop.q - matrix_exp(-x * 0.8)).max() < 1e-12

    def test_short_time_expansion(self):
        x, y = _structure()
        tau = 1e-8
        prop = propagate_period(x, y, tau)
        assert np.abs(prop.q - (np.eye(8) - x * tau)).max() < 1e-14
        assert np.abs(prop.p - (-y * tau)).max() < 1e-14

    def test_rejects_nonpositive_tau(self):
        x, y = _structure()
        with pytest.raises(ValueError):
            propagate_period(x, y, 0.0)

    def test_against_rk4_oracle(self):
        x, y = _structure()
        tau, steps = 0.7, 10_000
        dt = tau / steps
        q = np.eye(8)
        p = np.zeros((8, 8))

        def rhs(state):
            qq, pp = state
            qinv_t = np.linalg.solve(qq.T, np.eye(8))
            return -x @ qq, -x @ pp - y @ qinv_t

        for _ in range(steps):
            k1 = rhs((q, p))
            k2 = rhs((q + 0.5 * dt * k1[0], p + 0.5 * dt * k1[1]))
            k3 = rhs((q + 0.5 * dt * k2[0], p + 0.5 * dt * k2[1]))
            k4 = rhs((q + dt * k3[0], p + dt * k3[1]))
            q = q + dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
            p = p + dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        prop = propagate_period(x, y, tau)
        assert np.abs(prop.q - q).max() < 1e-8
        assert np.abs(prop.p - p).max() < 1e-8

    def test_semigroup_property(self):
        x, y = _structure()
        t1, t2 = 0.35, 0.6
        q_sum = propagate_period(x, y, t1 + t2).q
        q_split = propagate_period(x, y, t2).q @ propagate_period(x, y, t1).q
        assert np.abs(q_sum - q_split).max() < 1e-10

    def test_p_composition_identity(self):
        x, y = _structure()
        t1, t2 = 0.4, 0.9
        p1 = propagate_period(x, y, t1)
        p2 = propagate_period(x, y, t2)
        combined = propagate_period(x, y, t1 + t2)
        q1_inv_t = np.linalg.solve(p1.q.T, np.eye(8))
        expected_p = p2.q @ p1.p + p2.p @ q1_inv_t
        assert np.abs(combined.p - expected_p).max() < 1e-10

    def test_lyapunov_is_long_time_limit_of_covariance_flow(self):
        # Integrate dC/dt = -XC - CX^T + iY from C(0) = 0 by RK4 and
        # compare with the algebraic steady solution.
        x, y = _structure()
        c_star = solve_continuous_lyapunov(x, y).c
        c = np.zeros((8, 8), dtype=complex)
        t_end, steps = 60.0, 60_000
        dt = t_end / steps

        def rhs(cc):
            return -x @ cc - cc @ x.T + 1j * y

        for _ in range(steps):
            k1 = rhs(c)
            k2 = rhs(c + 0.5 * dt * k1)
            k3 = rhs(c + 0.5 * dt * k2)
            k4 = rhs(c + dt * k3)
            c = c + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        assert np.abs(c - c_star).max() < 1e-6

    def test_q_condition_diagnostic(self):
        x, y = _structure()
        prop = propagate_period(x, y, 0.5)
        assert prop.q_condition >= 1.0
