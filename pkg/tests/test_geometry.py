import math

import numpy as np
import pytest

from cavityduet.geometry import (
    AtomPlacement,
    EffectiveParams,
    ModeGeometry,
    SystemParams,
    coupling_at,
    coupling_pair,
    effective_params,
)

GEOM = ModeGeometry(g0=1.0, wavelength=1.0)


class TestModeGeometry:
    def test_wavenumber(self):
        assert ModeGeometry(1.0, 2.0).k == pytest.approx(math.pi)

    def test_positive_requirements(self):
        with pytest.raises(ValueError):
            ModeGeometry(0.0, 1.0)
        with pytest.raises(ValueError):
            ModeGeometry(1.0, -1.0)

    def test_coupling_at_antinode(self):
        assert coupling_at(GEOM, 0.0, 0.0) == pytest.approx(1.0)

    def test_coupling_at_node(self):
        assert coupling_at(GEOM, 0.0, 0.25) == pytest.approx(0.0, abs=1e-15)

    def test_coupling_sign_past_node(self):
        # the standing wave changes sign between antinodes
        assert coupling_at(GEOM, 0.0, 0.5) == pytest.approx(-1.0)

    def test_gaussian_radial_falloff(self):
        g = coupling_at(ModeGeometry(1.0, 1.0, waist=2.0), 2.0, 0.0)
        assert g == pytest.approx(math.exp(-1.0))

    def test_coupling_pair(self):
        g1, g2 = coupling_pair(GEOM, 0.18)
        assert g1 == 1.0
        assert g2 == pytest.approx(math.cos(2 * math.pi * 0.18))

    def test_quarter_wavelength_decouples_atom2(self):
        _, g2 = coupling_pair(GEOM, 0.25)
        assert abs(g2) < 1e-15


class TestAtomPlacement:
    def test_separation(self):
        assert AtomPlacement(z1=0.0, z2=0.18).r12 == pytest.approx(0.18)

    def test_radial_validation(self):
        with pytest.raises(ValueError):
            AtomPlacement(r1=-0.1)


class TestSystemParams:
    def test_dispersive_check(self):
        assert SystemParams(delta=50.0).dispersive_valid(1.0)
        assert not SystemParams(delta=5.0).dispersive_valid(1.0)

    def test_negative_rates_rejected(self):
        with pytest.raises(ValueError):
            SystemParams(delta=10.0, gamma=-0.1)


class TestEffectiveParams:
    def test_stark_shifts_and_exchange(self):
        p = effective_params(1.0, 0.5, SystemParams(delta=50.0))
        assert p.delta1 == pytest.approx(1.0 / 50.0)
        assert p.delta2 == pytest.approx(0.25 / 50.0)
        assert p.omega12 == pytest.approx(0.5 / 50.0)
        assert p.delta12 == pytest.approx(p.delta1 - p.delta2)

    def test_alpha_quadrature(self):
        p = EffectiveParams(delta1=0.05, delta2=0.02, omega12=0.02)
        assert p.alpha == pytest.approx(math.hypot(0.04, 0.03))

    def test_equal_couplings_degenerate(self):
        p = effective_params(1.0, 1.0, SystemParams(delta=40.0))
        assert p.delta12 == 0.0
        assert p.alpha == pytest.approx(2.0 * p.omega12)

    def test_pseudofield(self):
        p = EffectiveParams(delta1=0.03, delta2=0.01, omega12=0.015)
        assert p.pseudofield == pytest.approx((-0.03, 0.0, 0.02))

    def test_theta_at_equal_couplings(self):
        p = effective_params(1.0, 1.0, SystemParams(delta=30.0))
        assert p.theta == pytest.approx(-math.pi / 2)

    def test_zero_detuning_rejected(self):
        with pytest.raises(ValueError, match="detuning is zero"):
            effective_params(1.0, 1.0, SystemParams(delta=0.0))

    def test_special_separation_condition(self):
        # at cos(k r12) = sqrt(2) - 1 the differential shift equals 2*omega12
        c = math.sqrt(2.0) - 1.0
        r12 = math.acos(c) / (2.0 * math.pi)
        g1, g2 = coupling_pair(GEOM, r12)
        p = effective_params(g1, g2, SystemParams(delta=50.0))
        assert p.delta12 == pytest.approx(2.0 * p.omega12, rel=1e-12)
