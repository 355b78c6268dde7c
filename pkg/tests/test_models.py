import math

import pytest

from effpot import models, thermal
from effpot.models import FieldContent
from effpot.thermal import PotentialQuery, Statistics

PI = math.pi


class TestSusyPotential:
    def test_empty_content_returns_tree_level(self):
        fc = FieldContent(T=1.0, Q=1.0)
        assert models.susy_finite_T_potential(fc, 1.7) == 1.7

    def test_single_massless_scalar(self):
        fc = FieldContent(scalar_masses=(0.0,), T=1.0)
        v = models.susy_finite_T_potential(fc, 0.0)
        oracle = thermal.thermal_quadrature(
            PotentialQuery(Statistics.BOSON, 0.0, 1.0, 3)).value
        assert v == pytest.approx(oracle / (64.0 * PI ** 2), rel=1e-12)

    def test_additivity(self):
        fa = FieldContent(scalar_masses=(0.5,), fermion_masses=(1.0,), T=1.2, Q=2.0)
        fb = FieldContent(gauge_masses=(0.8,), T=1.2, Q=2.0)
        fab = FieldContent(scalar_masses=(0.5,), gauge_masses=(0.8,),
                           fermion_masses=(1.0,), T=1.2, Q=2.0)
        v0 = 0.3
        va = models.susy_finite_T_potential(fa, v0)
        vb = models.susy_finite_T_potential(fb, v0)
        vab = models.susy_finite_T_potential(fab, v0)
        assert vab == pytest.approx(va + vb - v0, rel=1e-12)

    def test_susy_cancellation_probe(self):
        # two scalars against one fermion (2 d.o.f.) at equal mass: the
        # T = 0 Coleman-Weinberg pieces cancel identically, the thermal
        # pieces do not -- finite temperature breaks supersymmetry
        m = 1.3
        t0 = (2.0 * models.cw_zero_temperature(m, 2.0)
              - 2.0 * models.cw_zero_temperature(m, 2.0))
        assert abs(t0) < 1e-12
        fc = FieldContent(scalar_masses=(m, m), fermion_masses=(m,), Q=2.0, T=1.0)
        v = models.susy_finite_T_potential(fc, 0.0)
        vb = thermal.thermal_quadrature(PotentialQuery(Statistics.BOSON, m, 1.0, 3)).value
        vf = thermal.thermal_quadrature(PotentialQuery(Statistics.FERMION, m, 1.0, 3)).value
        assert v == pytest.approx((2.0 * vb - 2.0 * vf) / (64.0 * PI ** 2), rel=1e-10)
        assert abs(v) > 1e-6

    def test_validation(self):
        with pytest.raises(ValueError):
            FieldContent(scalar_masses=(-1.0,))
        with pytest.raises(ValueError):
            FieldContent(Q=-1.0)


class TestSmGauge:
    def test_massless_value(self):
        fc = FieldContent(gauge_masses=(0.0,), T=1.0)
        v = models.sm_gauge_one_loop(fc)
        assert v == pytest.approx(3.0 * (-PI ** 4 / 45.0) / (2.0 * PI ** 2), rel=1e-9)

    def test_heavy_suppression(self):
        fc = FieldContent(gauge_masses=(40.0,), T=1.0)
        assert abs(models.sm_gauge_one_loop(fc)) < 1e-10

    def test_single_mass_equals_jb(self):
        fc = FieldContent(gauge_masses=(1.0,), T=1.0)
        v = models.sm_gauge_one_loop(fc)
        assert v == pytest.approx(3.0 * thermal.jb_integral(1.0) / (2.0 * PI ** 2),
                                  rel=1e-11)

    def test_requires_gauge_masses(self):
        with pytest.raises(ValueError):
            models.sm_gauge_one_loop(FieldContent())
