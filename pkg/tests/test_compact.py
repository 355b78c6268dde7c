import math

import pytest

from effpot import compact, thermal
from effpot.compact import (
    CASIMIR_NORMALIZATION,
    BoundaryCondition,
    CompactQuery,
)
from effpot.thermal import PotentialQuery, Statistics, Strategy

PI = math.pi
PER, ANTI = BoundaryCondition.PERIODIC, BoundaryCondition.ANTIPERIODIC


class TestCasimirValues:
    def test_periodic_massless(self):
        r = compact.compact_potential(CompactQuery(PER, 0.0, 1.0, 3))
        assert r.value == pytest.approx(-PI ** 2 / 90.0, rel=1e-10)

    def test_antiperiodic_massless(self):
        r = compact.compact_potential(CompactQuery(ANTI, 0.0, 1.0, 3))
        assert r.value == pytest.approx(7.0 * PI ** 2 / 720.0, rel=1e-10)

    def test_seven_eighths_ratio(self):
        vp = compact.compact_potential(CompactQuery(PER, 0.0, 1.0, 3)).value
        va = compact.compact_potential(CompactQuery(ANTI, 0.0, 1.0, 3)).value
        assert vp < 0.0 and va > 0.0
        assert abs(va / vp) == pytest.approx(7.0 / 8.0, rel=1e-8)

    @pytest.mark.parametrize("L", [0.5, 1.0, 2.0])
    def test_l_scaling(self, L):
        base = compact.compact_potential(CompactQuery(PER, 0.0, 1.0, 3)).value
        v = compact.compact_potential(CompactQuery(PER, 0.0, L, 3)).value
        assert v == pytest.approx(base / L ** 4, rel=1e-9)


class TestDelegation:
    @pytest.mark.parametrize("strategy", [Strategy.QUADRATURE, Strategy.BESSEL_SERIES])
    def test_thermal_counterpart(self, strategy):
        # the compact value is the thermal one at T = 1/L up to the module
        # normalization constant, for every strategy
        q = CompactQuery(PER, 1.0, 0.3, 3, strategy)
        coq = compact.compact_potential(q).value
        tq = thermal.evaluate(PotentialQuery(Statistics.BOSON, 1.0, 1.0 / 0.3, 3,
                                             strategy)).value
        assert coq == pytest.approx(CASIMIR_NORMALIZATION * tq, rel=1e-12)

    def test_antiperiodic_maps_to_fermion_tower(self):
        q = CompactQuery(ANTI, 0.7, 1.1, 2, Strategy.QUADRATURE)
        coq = compact.compact_potential(q).value
        tq = thermal.thermal_quadrature(
            PotentialQuery(Statistics.FERMION, 0.7, 1.0 / 1.1, 2)).value
        assert coq == pytest.approx(CASIMIR_NORMALIZATION * tq, rel=1e-12)


class TestClosedForms:
    def test_d3_periodic_massless(self):
        # Casimir-normalized massless limit of the printed d=3 boson form
        v = compact.compact_closed_d3(PER, 0.0, 1.0)
        assert v == pytest.approx(-PI ** 2 / 90.0, rel=1e-12)

    def test_d3_periodic_vs_oracle(self):
        for mL in (0.1, 0.3):
            c = compact.compact_closed_d3(PER, mL, 1.0)
            o = compact.compact_potential(CompactQuery(PER, mL, 1.0, 3)).value
            assert abs(c - o) < 1e-3 * abs(o)

    def test_d2_periodic_vs_highT_path(self):
        # both forms implement the same printed truncation at small mL
        m, L = 0.05, 1.0
        c = compact.compact_closed_d2(PER, m, L)
        q = CompactQuery(PER, m, L, 2, Strategy.HIGH_T_EXPANSION)
        from effpot.laurent import assert_finite
        h = assert_finite(compact.compact_highT(q), 1e-10)
        assert c == pytest.approx(h, rel=1e-6)

    def test_d2_antiperiodic_structure(self):
        # m^3/(6 pi) - m^2 T log2/(2 pi) - 3 pi T^3 zeta'(-2), T = 1/L,
        # halved by the Casimir normalization
        from effpot import specfun
        m, L = 1.0, 1.0
        zp = specfun.riemann_zeta_deriv(-2.0)
        expected = 0.5 * (m ** 3 / (6.0 * PI) - m * m * math.log(2.0) / (2.0 * PI)
                          - 3.0 * PI * zp)
        assert compact.compact_closed_d2(ANTI, m, L) == pytest.approx(expected, rel=1e-13)


class TestTopologicalMass:
    def test_periodic_value(self):
        assert compact.topological_mass(PER, 1.0, 1.0) == pytest.approx(1.0 / 24.0)

    def test_antiperiodic_value(self):
        assert compact.topological_mass(ANTI, 1.0, 1.0) == pytest.approx(-1.0 / 48.0)

    @pytest.mark.parametrize("L", [0.5, 1.0, 3.0])
    def test_scaling(self, L):
        v = compact.topological_mass(PER, 1.0, L)
        assert v * L * L == pytest.approx(1.0 / 24.0)

    @pytest.mark.parametrize("bc", [PER, ANTI])
    def test_finite_difference_route(self, bc):
        closed = compact.topological_mass(bc, 1.0, 1.0)
        fd = compact.topological_mass_fd(bc, 1.0, 1.0)
        assert fd == pytest.approx(closed, rel=1e-4)

    def test_finite_difference_other_coupling(self):
        closed = compact.topological_mass(PER, 2.0, 0.5)
        fd = compact.topological_mass_fd(PER, 2.0, 0.5)
        assert fd == pytest.approx(closed, rel=1e-4)


class TestRandallSundrum:
    def test_quoted_constant(self):
        from effpot import specfun
        v = compact.rs_massless_casimir(1.0)
        assert v == pytest.approx(-3.0 * specfun.riemann_zeta(5.0) / (64.0 * PI ** 4),
                                  rel=1e-13)
        assert v == pytest.approx(-4.99e-4, rel=2e-3)

    def test_rc_scaling(self):
        assert compact.rs_massless_casimir(2.0) == pytest.approx(
            compact.rs_massless_casimir(1.0) / 16.0, rel=1e-13)

    @pytest.mark.parametrize("rc", [1.0, 2.0])
    def test_tower_oracle(self, rc):
        assert compact.rs_massless_casimir(rc) == pytest.approx(
            compact.rs_tower_oracle(rc), rel=1e-6)


class TestValidation:
    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            CompactQuery(PER, 1.0, -1.0, 3)
        with pytest.raises(ValueError):
            compact.topological_mass(PER, -1.0, 1.0)
        with pytest.raises(ValueError):
            compact.rs_massless_casimir(0.0)
