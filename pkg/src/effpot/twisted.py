"""Effective potential with twisted boundary conditions on the circle.

Fields identified up to a phase, phi(x, 0) = e^(-i w) phi(x, L), carry
the shifted tower omega_n = (n + omega) 2 pi / L with omega = w / (2 pi)
in [0, 1); omega = 0 is the periodic and omega = 1/2 the antiperiodic
compact case.  Strategies:

* ``twisted_quadrature`` -- the two complex logs combined analytically
  into log(1 - 2 e^(-aL) cos(2 pi omega) + e^(-2aL)) and integrated; the
  module oracle.
* ``twisted_bessel``     -- cosine-weighted exponentially convergent
  Bessel-K series.
* ``twisted_highT``      -- Hurwitz-zeta semi-analytic assembly (d odd)
  with the separated k = 0 Poisson mode kept unexpanded; returned as
  Laurent data for the pole-cancellation check.
* ``twisted_closed_d3``  -- literal transcription of the printed d = 3
  pole-cancelled expression (its cos(beta) term deviates from the
  assembly; the discrepancy ledger reports it and the oracle arbitrates).

All values carry the same CASIMIR_NORMALIZATION = 1/2 as the compact
module, so the omega -> 0, 1/2 reductions are exact identities.

Convention: beta = 2 pi omega, forced by omega = 1/2 having to reproduce
the antiperiodic case through cos(2 pi omega q) = (-1)^q.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from . import specfun, thermal
from .compact import CASIMIR_NORMALIZATION
from .laurent import (
    Jet,
    LaurentValue,
    assert_finite,
    gamma_laurent,
    jet_times_laurent,
    rescale_variable,
)
from .thermal import QuadConfig, SeriesConfig, Strategy, solid_angle

__all__ = [
    "TwistQuery",
    "twisted_quadrature",
    "twisted_bessel",
    "twisted_highT",
    "twisted_closed_d3",
    "phased_poisson",
    "scherk_schwarz_potential",
    "ss_mass_correction",
]


@dataclass(frozen=True)
class TwistQuery:
    m: float
    L: float
    d: int
    omega: float
    strategy: Strategy = Strategy.QUADRATURE

    def __post_init__(self):
        if not (0.0 <= self.omega < 1.0):
            raise ValueError("twist omega must lie in [0, 1)")
        if self.L <= 0.0 or self.m < 0.0:
            raise ValueError("need L > 0 and m >= 0")
        if self.d not in thermal.SUPPORTED_D:
            raise ValueError(f"unsupported spatial dimension d={self.d}")

    @property
    def beta(self) -> float:
        return 2.0 * math.pi * self.omega


def twisted_quadrature(q: TwistQuery, cfg: QuadConfig = QuadConfig()) -> float:
    """L-dependent part of the twisted potential by direct quadrature.

    The pair of complex logs is combined into the real integrand
    log(1 - 2 e^(-aL) cos(2 pi omega) + e^(-2aL)); this operation is the
    oracle for the module.
    """
    L, m, d = q.L, q.m, q.d
    c2 = math.cos(q.beta)
    pref = CASIMIR_NORMALIZATION * solid_angle(d) / (L * (2.0 * math.pi) ** d)

    def f(u: float) -> float:
        k = math.sinh(u) / L
        x = math.hypot(k, m) * L
        if x > 700.0:
            return 0.0
        e = math.exp(-x)
        lg = math.log1p(e * (e - 2.0 * c2))
        return k ** (d - 1) * lg * math.cosh(u) / L

    u_max = math.asinh(60.0 + m * L)
    scale = L ** (-(d + 1)) * math.exp(-m * L)
    val, _ = integrate.quad(f, 0.0, u_max,
                            epsabs=max(cfg.abs_tol * max(scale, 1e-290), 1e-300),
                            epsrel=cfg.rel_tol, limit=cfg.max_subdivisions)
    return pref * val


def twisted_bessel(q: TwistQuery, cfg: SeriesConfig = SeriesConfig()) -> float:
    """Cosine-weighted Bessel series; equals the quadrature for m > 0.

    The truncation waits for three consecutive sub-tolerance terms since
    the cosine weight can make individual terms vanish accidentally.
    """
    if q.m == 0.0:
        raise ValueError("twisted_bessel requires m > 0 (use quadrature at m = 0)")
    m, L, d = q.m, q.L, q.d
    nu = (d + 1) / 2.0
    pref = CASIMIR_NORMALIZATION * 2.0 * math.pi ** ((d - 1) / 2.0) / (2.0 * math.pi) ** d
    total = 0.0
    below = 0
    for k in range(1, cfg.max_terms + 1):
        z = m * k * L
        term = (m ** (d + 1) * specfun.bessel_k(nu, z) / (0.5 * z) ** nu
                * math.cos(q.beta * k))
        total += term
        if abs(term) < cfg.rel_tol * max(abs(total), 1e-300):
            below += 1
            if below >= 3:
                return -pref * total
        else:
            below = 0
    raise RuntimeError("twisted Bessel series did not converge within max_terms")


def phased_poisson(lam: float, beta: float) -> tuple:
    """Both sides of the phase-shifted Poisson identity.

    sum_q e^(-lam q^2) e^(-i beta q) = sqrt(pi/lam) sum_k e^(-(beta+2 pi k)^2/(4 lam)),
    each side summed directly until terms drop below 1e-15; returned as a
    (lhs, rhs) pair for comparison.  Both sides are real by q <-> -q pairing.
    """
    if lam <= 0.0:
        raise ValueError("lambda must be positive")
    lhs = 1.0
    qn = 1
    while True:
        t = 2.0 * math.exp(-lam * qn * qn) * math.cos(beta * qn)
        lhs += t
        if math.exp(-lam * qn * qn) < 1e-15:
            break
        qn += 1
    rhs = math.exp(-beta * beta / (4.0 * lam))
    k = 1
    while True:
        t = (math.exp(-(beta + 2.0 * math.pi * k) ** 2 / (4.0 * lam))
             + math.exp(-(beta - 2.0 * math.pi * k) ** 2 / (4.0 * lam)))
        rhs += t
        if t < 1e-15:
            break
        k += 1
    return lhs, math.sqrt(math.pi / lam) * rhs


# ---------------------------------------------------------------------------
# semi-analytic assembly (d odd)
# ---------------------------------------------------------------------------

def _hurwitz_pair_value(s: float, omega: float) -> float:
    """zeta(s, 1 + omega) + zeta(s, 1 - omega) at the regular points."""
    return (specfun.hurwitz_zeta(s, 1.0 + omega)
            + specfun.hurwitz_zeta(s, 1.0 - omega))


def _hurwitz_pair_polylog(nu0: float, l: int, omega: float) -> float:
    """Same pair for s = 1 - 2(nu0 - l) < 0 via the polylog reflection.

    zeta(s, omega) + zeta(s, 1-omega) reflects onto the cosine polylog of
    order 2(nu0 - l) at beta = 2 pi omega; the ladder to offset 1 + omega
    contributes the -omega^(-s) subtraction.
    """
    s_refl = int(2 * (nu0 - l))
    beta = 2.0 * math.pi * omega
    c, _ = specfun.polylog_circle(s_refl, beta)
    parity = (-1.0) ** (int(nu0) - l)
    pair = (4.0 * specfun.gamma_fn(float(s_refl)) * parity
            * (2.0 * math.pi) ** (-s_refl) * c)
    return pair - omega ** (2.0 * nu0 - 1.0 - 2 * l)


def twisted_highT(q: TwistQuery, cfg: SeriesConfig = SeriesConfig(),
                  pair_route: str = "polylog") -> LaurentValue:
    """Hurwitz-zeta small-mL assembly for odd d, as Laurent data.

    Terms: the separated k = 0 Poisson mode (kept unexpanded, it resums
    the would-be omega^(2 nu - 1 - 2l) pieces), the Gamma(-nu) term, and
    the l-sum over zeta(s_l, 1 +/- omega) pairs; the l = nu_0 pair sits on
    the Hurwitz pole at s = 1 and enters through hurwitz_regularized_at_1
    together with the Laurent pole ledger.  The negative offsets of the
    derivation are mapped into the fundamental domain and, for l < nu_0,
    evaluated through the cosine polylog route (``pair_route="hurwitz"``
    selects the Bernoulli-polynomial twin used to validate the mapping).
    """
    if q.omega <= 0.0 or q.omega >= 1.0:
        raise ValueError("twisted_highT needs omega in (0, 1); "
                         "use the compact module at omega = 0")
    if q.d % 2 == 0:
        raise ValueError("the semi-analytic twisted assembly supports odd d only")
    if q.m * q.L >= 1.0:
        warnings.warn(f"small-mL expansion called at mL = {q.m * q.L:.3g} >= 1",
                      stacklevel=2)
    m, L, d, omega = q.m, q.L, q.d, q.omega
    beta = q.beta
    a = m * L
    nu0 = (d + 1) / 2.0
    pref = thermal._prefactor_jet(d)

    # k = 0 separated mode: -1/2 sqrt(pi) P m^(d+1) Gamma(1/2-nu)
    #                       (beta^2/a^2 + 1)^(nu - 1/2) / a
    g_half_v = specfun.gamma_fn(0.5 - nu0)
    if m > 0.0:
        k0_val = (-0.5 * math.sqrt(math.pi) * pref.val * m ** (d + 1) * g_half_v
                  * (beta * beta / (a * a) + 1.0) ** (nu0 - 0.5) / a)
    else:
        # massless limit: m^(d+1) (beta/a)^(2 nu - 1) / a = (beta/L)^(d+1) / beta
        k0_val = (-0.5 * math.sqrt(math.pi) * pref.val * g_half_v
                  * beta ** (d) / L ** (d + 1))
    total = LaurentValue(0.0, k0_val)

    # Gamma(-nu) term, identical to the thermal one
    b_block = Jet(m ** (d + 1), m ** (d + 1) * math.log(m) if m > 0.0 else 0.0)
    jB = 0.25 * pref * b_block
    total = total + jet_times_laurent(jB, rescale_variable(gamma_laurent(int(nu0)), -0.5))

    # l-sum with Hurwitz pairs
    gamma_half = Jet(g_half_v, -0.5 * g_half_v * specfun.digamma(0.5 - nu0))
    for l in range(0, cfg.sigma + 1):
        mass = thermal._mass_block_jet(m, 1.0 / L, d, l)
        if mass.val == 0.0 and m == 0.0 and l > 0:
            continue
        two_pi_pow = (2.0 * math.pi) ** (2 * nu0 - 1 - 2 * l)
        tp = Jet(two_pi_pow, two_pi_pow * math.log(2.0 * math.pi))
        cofactor = ((-0.5 * math.sqrt(math.pi)) * pref * mass * tp
                    * thermal._binom_jet(nu0, l)) * gamma_half
        if l == int(nu0):
            # zeta(1 - eps, offset) pair: pole -2, finite from the digammas
            finite = (specfun.hurwitz_regularized_at_1(1.0 + omega)
                      + specfun.hurwitz_regularized_at_1(1.0 - omega))
            pair = LaurentValue(-2.0, finite)
            total = total + jet_times_laurent(cofactor, pair)
        else:
            s_l = 2.0 * (l - nu0) + 1.0
            if l < int(nu0) and pair_route == "polylog":
                h = _hurwitz_pair_polylog(nu0, l, omega)
            else:
                h = _hurwitz_pair_value(s_l, omega)
            total = total + LaurentValue(0.0, cofactor.val * h)
    return total.scaled(CASIMIR_NORMALIZATION)


def twisted_closed_d3(m: float, L: float, omega: float) -> float:
    """Literal transcription of the printed pole-cancelled d = 3 expression.

    Kept as printed, including the 2 m^4 sqrt(a^2) cos(beta) / (pi^2 a^5)
    term whose bookkeeping disagrees with the assembly (the n = 1 slice of
    the polylog sum, with sign and companion terms dropped); the harness
    reports the deviation and the quadrature oracle arbitrates.
    """
    if not (0.0 < omega < 1.0):
        raise ValueError("omega must lie in (0, 1)")
    if m <= 0.0 or L <= 0.0:
        raise ValueError("need m > 0 and L > 0")
    pi = math.pi
    g = specfun.digamma  # psi
    from .laurent import EULER_GAMMA

    beta = 2.0 * pi * omega
    alpha = m * L
    a2 = alpha * alpha
    m4 = m ** 4
    val = (3.0 * m4 / (64.0 * pi ** 2)
           - EULER_GAMMA * m4 / (32.0 * pi ** 2)
           - m4 * (1.0 + beta * beta / a2) ** 1.5 / (6.0 * pi * alpha)
           + 2.0 * m4 * math.sqrt(a2) * math.cos(beta) / (pi ** 2 * alpha ** 5)
           + m4 * math.log(2.0) / (16.0 * pi ** 2)
           + m4 * math.log(pi) / (32.0 * pi ** 2)
           + m4 * math.log(pi) / (32.0 * pi ** 2)
           - m4 * math.log(a2) / (32.0 * pi ** 2)
           - m4 * g(-1.5) / (32.0 * pi ** 2)
           - m4 * g(0.5) / (32.0 * pi ** 2)
           + m4 * g(2.5) / (32.0 * pi ** 2)
           + m4 * g(-omega) / (32.0 * pi ** 2)
           + m4 * g(omega) / (32.0 * pi ** 2))
    return CASIMIR_NORMALIZATION * val


# ---------------------------------------------------------------------------
# Scherk-Schwarz difference
# ---------------------------------------------------------------------------

def scherk_schwarz_potential(M: float, R: float, d: int, qB: float, qF: float,
                             cfg: QuadConfig = QuadConfig(),
                             strategy: Strategy = Strategy.QUADRATURE,
                             series_cfg: SeriesConfig = SeriesConfig()) -> float:
    """Boson-minus-fermion twisted potential of a Scherk-Schwarz tower.

    The (n + q)/R mode spacing corresponds to L = 2 pi R in the
    (n + omega) 2 pi / L convention.  The divergent pieces cancel in the
    difference, so the exact strategies need no regularization.
    """
    if not (0.0 <= qB < 1.0 and 0.0 <= qF < 1.0):
        raise ValueError("twists must lie in [0, 1)")
    if M < 0.0 or R <= 0.0:
        raise ValueError("need M >= 0 and R > 0")
    if qB == qF:
        return 0.0
    L = 2.0 * math.pi * R
    if strategy is Strategy.QUADRATURE:
        vb = twisted_quadrature(TwistQuery(M, L, d, qB), cfg)
        vf = twisted_quadrature(TwistQuery(M, L, d, qF), cfg)
    elif strategy is Strategy.BESSEL_SERIES:
        vb = twisted_bessel(TwistQuery(M, L, d, qB), series_cfg)
        vf = twisted_bessel(TwistQuery(M, L, d, qF), series_cfg)
    else:
        raise ValueError("scherk_schwarz_potential supports quadrature or bessel")
    return vb - vf


def ss_mass_correction(mass_profile, phi0: float, h: float, R: float,
                       qB: float, qF: float, d: int,
                       cfg: QuadConfig = QuadConfig(),
                       rel_tol: float = 1e-4) -> float:
    """One-loop mass correction d^2 V/d phi^2 from the twisted tower.

    ``mass_profile`` maps phi to M^2(phi).  Central second differences at
    steps {h, h/2} are combined by one Richardson level; if the two levels
    disagree by more than ten times the requested tolerance a step-size
    degeneracy warning is raised.
    """
    if h <= 0.0:
        raise ValueError("step h must be positive")

    def v(phi: float) -> float:
        m2 = mass_profile(phi)
        if m2 < 0.0:
            raise ValueError("mass_profile returned a negative mass squared")
        return scherk_schwarz_potential(math.sqrt(m2), R, d, qB, qF, cfg)

    def second_diff(step: float) -> float:
        return (v(phi0 + step) - 2.0 * v(phi0) + v(phi0 - step)) / (step * step)

    d_h = second_diff(h)
    d_h2 = second_diff(0.5 * h)
    result = 2.0 * d_h2 - d_h
    if abs(d_h2 - d_h) > 10.0 * rel_tol * max(1.0, abs(result)):
        warnings.warn(
            f"step-size degeneracy: Richardson levels differ by {abs(d_h2 - d_h):.3e}",
            stacklevel=2,
        )
    return result
