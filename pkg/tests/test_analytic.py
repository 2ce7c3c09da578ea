import math

import numpy as np
import pytest

from cavityduet.analytic import (
    CASE_A,
    CASE_B,
    CASE_C,
    InitialBloch,
    bloch_solution,
    concurrence_case_a,
    concurrence_case_b,
    concurrence_case_c,
    concurrence_single_excitation,
    populations_solution,
    zero_times,
)
from cavityduet.geometry import ModeGeometry, SystemParams, coupling_pair, effective_params
from cavityduet.linalg import integrate
from cavityduet.reduced_model import bloch_rhs

GEOM = ModeGeometry(1.0, 1.0)


def params_at(r12, delta=50.0):
    g1, g2 = coupling_pair(GEOM, r12)
    return effective_params(g1, g2, SystemParams(delta=delta))


def params_special():
    """Separation where delta12 = 2*omega12 exactly."""
    c = math.sqrt(2.0) - 1.0
    return params_at(math.acos(c) / (2.0 * math.pi))


def rk4_bloch(init, p, gamma, t_end, steps=4000):
    b0 = np.array([init.u0, init.v0, init.w0, 0.0, 1.0, 0.0])
    return integrate(lambda t, b: bloch_rhs(b, p, gamma), 0.0, b0, t_end, steps)


class TestInitialBloch:
    def test_unit_ball_enforced(self):
        with pytest.raises(ValueError):
            InitialBloch(1.0, 1.0, 0.0)

    def test_drive_components(self):
        p = params_at(0.1)
        a, b = CASE_A.drive_components(p)
        assert a == pytest.approx(-p.delta12)
        assert b == pytest.approx(2.0 * p.omega12)


class TestBlochSolution:
    @pytest.mark.parametrize("init", [CASE_A, CASE_B, CASE_C])
    @pytest.mark.parametrize("r12", [0.0, 0.07, 0.18])
    @pytest.mark.parametrize("gamma", [0.0, 0.01])
    def test_matches_rk4(self, init, r12, gamma):
        p = params_at(r12)
        t_end = 4.0 * np.pi / p.alpha
        ts, bs = rk4_bloch(init, p, gamma, t_end)
        u, v, w = bloch_solution(ts, init, p, gamma)
        assert np.max(np.abs(bs[:, 0] - u)) < 1e-9
        assert np.max(np.abs(bs[:, 1] - v)) < 1e-9
        assert np.max(np.abs(bs[:, 2] - w)) < 1e-9

    def test_initial_condition(self):
        p = params_at(0.12)
        init = InitialBloch(0.3, 0.5, -0.2)
        u, v, w = bloch_solution(0.0, init, p, 0.1)
        assert (float(u), float(v), float(w)) == pytest.approx((0.3, 0.5, -0.2))

    def test_norm_decay(self):
        p = params_at(0.15)
        gamma = 0.06
        t = np.linspace(0.0, 50.0, 300)
        u, v, w = bloch_solution(t, CASE_B, p, gamma)
        assert np.max(np.abs(u * u + v * v + w * w - np.exp(-2 * gamma * t))) < 1e-10

    def test_case_c_locked_at_equal_couplings(self):
        # Bloch vector parallel to the pseudofield: no precession at all
        p = params_at(0.0)
        t = np.linspace(0.0, 100.0, 50)
        u, v, w = bloch_solution(t, CASE_C, p, 0.0)
        assert np.max(np.abs(u - 1.0)) < 1e-12
        assert np.max(np.abs(v)) < 1e-12
        assert np.max(np.abs(w)) < 1e-12

    def test_zero_alpha_pure_decay(self):
        # degenerate pseudofield (no precession axis): the Bloch vector
        # just shrinks under damping
        from cavityduet.geometry import EffectiveParams

        p = EffectiveParams(delta1=0.0, delta2=0.0, omega12=0.0)
        assert p.alpha == 0.0
        t = np.array([0.0, 5.0])
        u, v, w = bloch_solution(t, InitialBloch(0.4, 0.0, 0.6), p, 0.1)
        assert u[1] == pytest.approx(0.4 * np.exp(-0.5))
        assert w[1] == pytest.approx(0.6 * np.exp(-0.5))

    def test_node_separation_precesses_about_z(self):
        # atom 2 at a node: omega12 vanishes but the differential Stark
        # shift survives, so u, v rotate about z while w only decays
        p = params_at(0.25)
        assert abs(p.omega12) < 1e-15
        assert p.alpha == pytest.approx(abs(p.delta12))
        t = np.array([0.0, 5.0])
        u, v, w = bloch_solution(t, InitialBloch(0.4, 0.0, 0.6), p, 0.1)
        assert w[1] == pytest.approx(0.6 * np.exp(-0.5))
        assert np.hypot(u[1], v[1]) == pytest.approx(0.4 * np.exp(-0.5))


class TestPopulations:
    def test_matches_rk4(self):
        gamma = 0.25
        rhs = lambda t, y: np.array([
            gamma - gamma * (y[0] + y[2]),
            -gamma * y[1] + 2 * gamma * y[2],
            -2 * gamma * y[2],
        ])
        ts, ys = integrate(rhs, 0.0, np.array([0.1, 0.6, 0.3]), 8.0, 2000)
        r11, rpp, r44 = populations_solution(ts, 0.1, 0.6, 0.3, gamma)
        assert np.max(np.abs(ys[:, 0] - r11)) < 1e-10
        assert np.max(np.abs(ys[:, 1] - rpp)) < 1e-10
        assert np.max(np.abs(ys[:, 2] - r44)) < 1e-10

    def test_trace_preserved(self):
        t = np.linspace(0, 10, 50)
        r11, rpp, r44 = populations_solution(t, 0.2, 0.5, 0.3, 0.3)
        assert np.max(np.abs(r11 + rpp + r44 - 1.0)) < 1e-12

    def test_rejects_bad_total(self):
        with pytest.raises(ValueError):
            populations_solution(0.0, 0.5, 0.5, 0.5, 0.1)


class TestCaseFormulas:
    def test_case_a_peaks_at_one_for_equal_couplings(self):
        p = params_at(0.0)
        t_peak = 0.5 * np.pi / p.alpha
        assert concurrence_case_a(t_peak, p, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_case_a_matches_general_formula(self):
        p = params_at(0.18)
        t = np.linspace(0, 6 * np.pi / p.alpha, 200)
        direct = concurrence_case_a(t, p, 0.02)
        general = concurrence_single_excitation(t, CASE_A, p, 0.02)
        # the general formula takes sqrt(1 - w^2) with w = 1 at t = 0, so
        # a 1-ulp rounding of w shows up as ~sqrt(eps) there
        assert np.max(np.abs(direct - general)) < 1e-7
        assert np.max(np.abs(direct[1:] - general[1:])) < 1e-12

    def test_case_b_floor_at_special_separation(self):
        # delta12 = 2*omega12: the minimum over a period is 1/sqrt(2)
        p = params_special()
        t = np.linspace(0, np.pi / p.alpha, 100001)
        c = concurrence_case_b(t, p, 0.0)
        assert np.min(c) == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-9)

    def test_case_b_matches_general_formula(self):
        p = params_at(0.11)
        t = np.linspace(0, 4 * np.pi / p.alpha, 150)
        assert np.max(np.abs(
            concurrence_case_b(t, p, 0.01)
            - concurrence_single_excitation(t, CASE_B, p, 0.01))) < 1e-12

    def test_case_c_constant_at_equal_couplings(self):
        p = params_at(0.0)
        t = np.linspace(0, 200.0, 100)
        assert np.max(np.abs(concurrence_case_c(t, p, 0.0) - 1.0)) < 1e-12

    def test_case_c_quenches_at_special_separation(self):
        p = params_special()
        t_quench = np.pi / p.alpha
        assert concurrence_case_c(t_quench, p, 0.0) == pytest.approx(0.0, abs=1e-8)

    def test_case_c_matches_general_formula(self):
        p = params_at(0.2)
        t = np.linspace(0, 4 * np.pi / p.alpha, 150)
        assert np.max(np.abs(
            concurrence_case_c(t, p, 0.03)
            - concurrence_single_excitation(t, CASE_C, p, 0.03))) < 1e-12

    def test_damping_envelope(self):
        p = params_at(0.0)
        gamma = 0.05
        t = 2.5 * np.pi / p.alpha
        undamped = concurrence_case_b(np.array([t]), p, 0.0)
        damped = concurrence_case_b(np.array([t]), p, gamma)
        assert damped[0] == pytest.approx(np.exp(-gamma * t) * undamped[0])

    def test_general_formula_requires_pure_state(self):
        p = params_at(0.1)
        with pytest.raises(ValueError, match="Wootters"):
            concurrence_single_excitation(1.0, InitialBloch(0.1, 0.0, 0.0), p, 0.0)


class TestZeroTimes:
    def test_case_a_equal_couplings(self):
        p = params_at(0.0)
        zt = zero_times("A", p, 3.5 * np.pi / p.alpha)
        want = np.array([0, 1, 2, 3]) * np.pi / p.alpha
        assert zt == pytest.approx(want)
        assert np.max(concurrence_case_a(zt, p, 0.0)) < 1e-12

    def test_case_a_unequal_couplings_twice_as_long(self):
        p = params_at(0.18)
        zt = zero_times("A", p, 4.5 * np.pi / p.alpha)
        want = np.array([0, 2, 4]) * np.pi / p.alpha
        assert zt == pytest.approx(want)
        # midpoints are no longer zeros
        assert concurrence_case_a(np.pi / p.alpha, p, 0.0) > 0.9

    def test_case_b_zeros_only_at_equal_couplings(self):
        p0 = params_at(0.0)
        zt = zero_times("B", p0, 4 * np.pi / p0.alpha)
        assert zt == pytest.approx(np.array([0.5, 1.5, 2.5, 3.5]) * np.pi / p0.alpha)
        assert zero_times("B", params_at(0.18), 100.0).size == 0

    def test_case_c_zeros_only_at_special_separation(self):
        p = params_special()
        zt = zero_times("C", p, 4 * np.pi / p.alpha)
        assert zt == pytest.approx(np.array([1, 3]) * np.pi / p.alpha)
        assert zero_times("C", params_at(0.1), 100.0).size == 0

    def test_unknown_case(self):
        with pytest.raises(ValueError):
            zero_times("D", params_at(0.0), 1.0)
