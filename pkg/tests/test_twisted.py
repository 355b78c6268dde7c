import math
import warnings

import pytest

from effpot import compact, twisted
from effpot.compact import BoundaryCondition, CompactQuery
from effpot.laurent import assert_finite
from effpot.thermal import QuadConfig, SeriesConfig, Strategy
from effpot.twisted import TwistQuery

PI = math.pi

# regression anchor, pinned at first implementation from the oracle itself
OMEGA_QUARTER_ANCHOR = 0.0031610513062973393


class TestReductions:
    @pytest.mark.parametrize("m,L,d", [(1.0, 1.0, 3), (0.5, 2.0, 2), (2.0, 0.7, 4)])
    def test_periodic_limit(self, m, L, d):
        t = twisted.twisted_quadrature(TwistQuery(m, L, d, 0.0))
        c = compact.compact_potential(
            CompactQuery(BoundaryCondition.PERIODIC, m, L, d)).value
        assert t == pytest.approx(c, rel=1e-10)

    @pytest.mark.parametrize("m,L,d", [(1.0, 1.0, 3), (0.5, 2.0, 2)])
    def test_antiperiodic_limit(self, m, L, d):
        t = twisted.twisted_quadrature(TwistQuery(m, L, d, 0.5))
        c = compact.compact_potential(
            CompactQuery(BoundaryCondition.ANTIPERIODIC, m, L, d)).value
        assert t == pytest.approx(c, rel=1e-10)

    def test_bessel_reductions(self):
        t = twisted.twisted_bessel(TwistQuery(1.0, 1.0, 3, 0.0))
        c = compact.compact_potential(
            CompactQuery(BoundaryCondition.PERIODIC, 1.0, 1.0, 3,
                         Strategy.BESSEL_SERIES)).value
        assert t == pytest.approx(c, rel=1e-10)
        t5 = twisted.twisted_bessel(TwistQuery(1.0, 1.0, 3, 0.5))
        c5 = compact.compact_potential(
            CompactQuery(BoundaryCondition.ANTIPERIODIC, 1.0, 1.0, 3,
                         Strategy.BESSEL_SERIES)).value
        assert t5 == pytest.approx(c5, rel=1e-9)

    def test_periodicity_wrap(self):
        # omega = 0.999 equals omega = -0.001 + 1 by construction of the
        # domain restriction
        a = twisted.twisted_quadrature(TwistQuery(1.0, 1.0, 3, 0.999))
        b = twisted.twisted_quadrature(TwistQuery(1.0, 1.0, 3, -0.001 + 1.0))
        assert a == b

    @pytest.mark.parametrize("omega", [0.1, 0.3])
    def test_reflection(self, omega):
        a = twisted.twisted_quadrature(TwistQuery(1.0, 1.0, 3, omega))
        b = twisted.twisted_quadrature(TwistQuery(1.0, 1.0, 3, 1.0 - omega))
        assert abs(a - b) < 1e-12 * max(1.0, abs(a))
        ab = twisted.twisted_bessel(TwistQuery(1.0, 1.0, 3, omega))
        bb = twisted.twisted_bessel(TwistQuery(1.0, 1.0, 3, 1.0 - omega))
        assert abs(ab - bb) < 1e-12 * max(1.0, abs(ab))


class TestStrategyAgreement:
    @pytest.mark.parametrize("omega", [0.1, 0.25, 0.4])
    @pytest.mark.parametrize("mL", [0.3, 1.0, 3.0])
    @pytest.mark.parametrize("d", [2, 3])
    def test_bessel_vs_quadrature(self, omega, mL, d):
        q = twisted.twisted_quadrature(TwistQuery(mL, 1.0, d, omega))
        b = twisted.twisted_bessel(TwistQuery(mL, 1.0, d, omega))
        assert abs(b - q) < 1e-8 * abs(q)

    def test_omega_quarter_anchor(self):
        v = twisted.twisted_quadrature(TwistQuery(1.0, 1.0, 3, 0.25))
        assert v == pytest.approx(OMEGA_QUARTER_ANCHOR, rel=1e-11)


class TestPhasedPoisson:
    @pytest.mark.parametrize("lam", [0.1, 1.0, 10.0])
    @pytest.mark.parametrize("beta", [0.0, PI / 3.0, PI])
    def test_two_sided_agreement(self, lam, beta):
        lhs, rhs = twisted.phased_poisson(lam, beta)
        assert abs(lhs - rhs) < 1e-12

    def test_reduces_to_theta(self):
        from effpot.thermal import poisson_theta
        lhs, rhs = twisted.phased_poisson(1.0, 0.0)
        tl, tr = poisson_theta(1.0)
        assert lhs == pytest.approx(tl, rel=1e-14)
        assert rhs == pytest.approx(tr, rel=1e-14)


class TestHighT:
    @pytest.mark.parametrize("omega", [0.1, 0.25, 0.4])
    def test_matches_oracle(self, omega):
        q = TwistQuery(1.0, 0.3, 3, omega)
        lv = twisted.twisted_highT(q)
        h = assert_finite(lv, 1e-10)
        oracle = twisted.twisted_quadrature(q)
        assert abs(h - oracle) < 1e-3 * abs(oracle)

    @pytest.mark.parametrize("omega", [0.1, 0.25, 0.4])
    @pytest.mark.parametrize("mL", [(0.1, 1.0), (1.0, 1.0), (10.0, 0.2)])
    def test_pole_cancellation(self, omega, mL):
        m, L = mL
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            lv = twisted.twisted_highT(TwistQuery(m, L, 3, omega))
        assert abs(lv.pole) < 1e-12 * max(1.0, abs(lv.finite))

    def test_continuous_at_antiperiodic_point(self):
        # omega -> 1/2 joins the antiperiodic expansion smoothly
        q = TwistQuery(0.5, 0.4, 3, 0.5)
        h = assert_finite(twisted.twisted_highT(q), 1e-10)
        oracle = twisted.twisted_quadrature(q)
        assert h == pytest.approx(oracle, rel=1e-9)

    @pytest.mark.parametrize("omega", [0.1, 0.3, 0.45])
    def test_polylog_vs_hurwitz_route(self, omega):
        q = TwistQuery(1.0, 0.3, 3, omega)
        a = assert_finite(twisted.twisted_highT(q), 1e-10)
        b = assert_finite(twisted.twisted_highT(q, pair_route="hurwitz"), 1e-10)
        assert a == pytest.approx(b, rel=1e-11)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            twisted.twisted_highT(TwistQuery(1.0, 1.0, 3, 0.0))
        with pytest.raises(ValueError):
            twisted.twisted_highT(TwistQuery(1.0, 1.0, 2, 0.25))

    def test_massless_bernoulli_form(self):
        # V(m=0) = (pi^2/3) B_4(omega) / L^4 under the module normalization
        omega, L = 0.25, 1.0
        b4 = omega ** 4 - 2.0 * omega ** 3 + omega ** 2 - 1.0 / 30.0
        v = assert_finite(twisted.twisted_highT(TwistQuery(0.0, L, 3, omega)), 1e-12)
        assert v == pytest.approx(PI ** 2 * b4 / (3.0 * L ** 4), rel=1e-12)
        oracle = twisted.twisted_quadrature(TwistQuery(0.0, L, 3, omega))
        assert v == pytest.approx(oracle, rel=1e-9)


class TestClosedD3:
    def test_deviates_from_oracle_as_flagged(self):
        # the printed cos(beta) term is mangled; the transcription must
        # disagree with the oracle (the ledger flags it, acceptance rests
        # on the oracle)
        q = TwistQuery(1.0, 0.5, 3, 0.25)
        c = twisted.twisted_closed_d3(1.0, 0.5, 0.25)
        oracle = twisted.twisted_quadrature(q)
        assert abs(c - oracle) > 1e-3 * abs(oracle)

    def test_beta_symmetry_breakage_deferred_to_oracle(self):
        # the exact potential is omega <-> 1-omega symmetric; the printed
        # formula is not (its k=0 block carries a bare beta^2/alpha^2)
        c1 = twisted.twisted_closed_d3(1.0, 0.5, 0.3)
        c2 = twisted.twisted_closed_d3(1.0, 0.5, 0.7)
        assert abs(c1 - c2) > 1e-6 * max(abs(c1), abs(c2))
        o1 = twisted.twisted_quadrature(TwistQuery(1.0, 0.5, 3, 0.3))
        o2 = twisted.twisted_quadrature(TwistQuery(1.0, 0.5, 3, 0.7))
        assert o1 == pytest.approx(o2, rel=1e-12)

    def test_m4_coefficient_terms_vanish_with_mass(self):
        # the psi/log sector carries a plain m^4 and vanishes as m -> 0;
        # the alpha-dependent blocks tend to their L^-4 limits
        L, omega = 1.0, 0.25
        beta = 2.0 * PI * omega
        tiny = twisted.twisted_closed_d3(1e-4, L, omega)
        limit = 0.5 * (-beta ** 3 / (6.0 * PI * L ** 4)
                       + 2.0 * math.cos(beta) / (PI ** 2 * L ** 4))
        assert tiny == pytest.approx(limit, abs=1e-8)

    def test_validation(self):
        with pytest.raises(ValueError):
            twisted.twisted_closed_d3(0.0, 1.0, 0.25)
        with pytest.raises(ValueError):
            twisted.twisted_closed_d3(1.0, 1.0, 0.0)


class TestScherkSchwarz:
    def test_equal_twists_vanish(self):
        assert twisted.scherk_schwarz_potential(1.0, 1.0, 3, 0.3, 0.3) == 0.0

    def test_massless_periodic_minus_antiperiodic(self):
        v = twisted.scherk_schwarz_potential(0.0, 1.0, 3, 0.0, 0.5)
        L = 2.0 * PI
        per = compact.compact_potential(
            CompactQuery(BoundaryCondition.PERIODIC, 0.0, L, 3)).value
        anti = compact.compact_potential(
            CompactQuery(BoundaryCondition.ANTIPERIODIC, 0.0, L, 3)).value
        assert v == pytest.approx(per - anti, rel=1e-10)

    def test_swap_antisymmetry(self):
        a = twisted.scherk_schwarz_potential(0.5, 1.0, 3, 0.2, 0.45)
        b = twisted.scherk_schwarz_potential(0.5, 1.0, 3, 0.45, 0.2)
        assert a == pytest.approx(-b, rel=1e-12)

    def test_bessel_strategy_agrees(self):
        qa = twisted.scherk_schwarz_potential(0.5, 0.5, 3, 0.1, 0.35)
        qb = twisted.scherk_schwarz_potential(0.5, 0.5, 3, 0.1, 0.35,
                                              strategy=Strategy.BESSEL_SERIES)
        assert qa == pytest.approx(qb, rel=1e-8)


class TestSsMassCorrection:
    def test_constant_profile_gives_zero(self):
        out = twisted.ss_mass_correction(lambda phi: 4.0, 0.0, 1e-2, 1.0, 0.0, 0.5, 3)
        assert out == pytest.approx(0.0, abs=1e-10)

    def test_quadratic_profile_first_derivative_oracle(self):
        # M^2 = phi^2 at phi0 = 0: d2V/dphi2 = 2 dV/dM2 at M2 = 0,
        # checked against one-sided differencing of V in M2.  V carries an
        # M^3 piece, so the plain difference quotient has an O(sqrt(h))
        # error removed here by one Richardson step in sqrt(h).
        R, qB, qF, d = 1.0, 0.0, 0.5, 3
        got = twisted.ss_mass_correction(lambda p: p * p, 0.0, 1e-2, R, qB, qF, d)
        v0 = twisted.scherk_schwarz_potential(0.0, R, d, qB, qF)

        def quotient(h):
            vh = twisted.scherk_schwarz_potential(math.sqrt(h), R, d, qB, qF)
            return (vh - v0) / h

        r = math.sqrt(10.0)
        dv_dm2 = (r * quotient(1e-6) - quotient(1e-5)) / (r - 1.0)
        assert got == pytest.approx(2.0 * dv_dm2, rel=5e-4)

    def test_linearity_in_coupling(self):
        R, qB, qF, d = 1.0, 0.0, 0.5, 3
        m1 = twisted.ss_mass_correction(lambda p: 0.5 * p * p, 0.0, 1e-2, R, qB, qF, d)
        m2 = twisted.ss_mass_correction(lambda p: 1.0 * p * p, 0.0, 1e-2, R, qB, qF, d)
        assert m2 == pytest.approx(2.0 * m1, rel=1e-4)
