"""Self-contained special-function kernel.

Modified Bessel K of integer and half-integer order, Gamma/digamma,
Riemann and Hurwitz zeta with analytic continuation, polylogarithm
components on the unit circle, and the Epstein / Epstein-Hurwitz /
Chowla-Selberg lattice zeta functions.

Conventions resolved here (and relied on by the rest of the package):

* ``epstein_hurwitz_zeta(s, p)`` is the one-sided sum
  sum_{n>=1} (n^2 + p)^(-s); the n = 0 term is NOT included.  The
  convention was fixed by matching the exponentially convergent
  expansion against the direct sum at large s.
* ``chowla_selberg`` and ``epstein_zeta_nd`` sum over the full integer
  lattice including the zero vector (whose contribution is q^(-s),
  finite for q > 0).
* Bessel orders are restricted to 2*nu integer.  Half-integer orders use
  the exact finite closed form; integer orders use the ascending series
  below z = 2 and a continued fraction above, stitched by upward
  recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .laurent import EULER_GAMMA

__all__ = [
    "ZetaArgument",
    "QuadraticFormParams",
    "bessel_k",
    "gamma_fn",
    "digamma",
    "riemann_zeta",
    "riemann_zeta_deriv",
    "hurwitz_zeta",
    "hurwitz_regularized_at_1",
    "polylog_circle",
    "epstein_zeta_1d",
    "epstein_hurwitz_zeta",
    "chowla_selberg",
    "epstein_zeta_nd",
    "bernoulli_number",
]


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZetaArgument:
    """Evaluation point of a Hurwitz-type zeta: exponent s and offset a."""

    s: float
    a: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.a <= 1.0):
            raise ValueError(f"Hurwitz offset a={self.a} outside (0, 1]")
        if self.s == 1.0:
            raise ValueError("s = 1 is a pole; use the regularized operation")


@dataclass(frozen=True)
class QuadraticFormParams:
    """Binary quadratic form a m^2 + b m n + c n^2 with inhomogeneity q."""

    a: float
    b: float
    c: float
    q: float = 0.0
    delta: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "delta", 4.0 * self.a * self.c - self.b * self.b)
        if self.a <= 0.0 or self.delta <= 0.0:
            raise ValueError("quadratic form must be positive definite (a > 0, 4ac - b^2 > 0)")
        if self.q < 0.0:
            raise ValueError("inhomogeneity q must be >= 0")


# ---------------------------------------------------------------------------
# Gamma and digamma
# ---------------------------------------------------------------------------

def _is_nonpositive_integer(x: float, tol: float = 0.0) -> bool:
    return x <= 0.0 and x == math.floor(x)


def gamma_fn(x: float) -> float:
    """Gamma(x) for real x away from the poles at 0, -1, -2, ...

    Callers needing an expansion around a pole use
    ``laurent.gamma_laurent`` instead.
    """
    if _is_nonpositive_integer(x):
        raise ValueError(f"Gamma pole at x={x}; use laurent.gamma_laurent")
    return math.gamma(x)


# Asymptotic coefficients B_{2n}/(2n) for the digamma tail.
_DIGAMMA_TAIL = (
    1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
)


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) for real x, poles at 0, -1, -2, ... excluded."""
    if _is_nonpositive_integer(x):
        raise ValueError(f"digamma pole at x={x}")
    if x < 0.5:
        # reflection: psi(1-x) - psi(x) = pi * cot(pi x)
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 8.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = 0.0
    power = inv2
    for c in _DIGAMMA_TAIL:
        tail += c * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - tail


# ---------------------------------------------------------------------------
# Bernoulli numbers (exact) -- continuation values of zeta
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_fraction(m: int) -> Fraction:
    if m == 0:
        return Fraction(1)
    # B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
    s = Fraction(0)
    for k in range(m):
        s += math.comb(m + 1, k) * _bernoulli_fraction(k)
    return -s / (m + 1)


def bernoulli_number(m: int) -> float:
    """Bernoulli number B_m (B_1 = -1/2 convention)."""
    return float(_bernoulli_fraction(m))


# ---------------------------------------------------------------------------
# Riemann zeta
# ---------------------------------------------------------------------------

_BORWEIN_N = 50


@lru_cache(maxsize=1)
def _borwein_d() -> tuple:
    n = _BORWEIN_N
    d = [0.0] * (n + 1)
    acc = Fraction(0)
    for k in range(n + 1):
        acc += Fraction(
            math.factorial(n + k - 1) * 4 ** k,
            math.factorial(n - k) * math.factorial(2 * k),
        )
        d[k] = float(n * acc)
    return tuple(d)


def _eta(s: float) -> float:
    """Dirichlet eta for s > 0 via Borwein's globally convergent scheme."""
    d = _borwein_d()
    n = _BORWEIN_N
    total = 0.0
    for k in range(n):
        total += (-1.0) ** k * (d[k] - d[n]) / (k + 1) ** s
    return -total / d[n]


def riemann_zeta(s: float) -> float:
    """zeta(s) for real s != 1, with exact values at non-positive integers."""
    if s == 1.0:
        raise ValueError("zeta pole at s=1; use laurent.zeta_laurent_at_1")
    if s <= 0.0 and s == math.floor(s):
        n = int(-s)
        if n == 0:
            return -0.5
        if n % 2 == 0:
            return 0.0  # trivial zeros
        return -bernoulli_number(n + 1) / (n + 1)
    if s > 54.0:
        # partial sum already at machine precision
        return sum(k ** (-s) for k in range(1, 9))
    if s > 0.0:
        # expm1 keeps full precision in the 1 - 2^(1-s) factor near s = 1
        return _eta(s) / (-math.expm1((1.0 - s) * math.log(2.0)))
    # s < 0 non-integer: functional equation
    chi = 2.0 ** s * math.pi ** (s - 1.0) * math.sin(math.pi * s / 2.0) * gamma_fn(1.0 - s)
    return chi * riemann_zeta(1.0 - s)


def _zeta_deriv_gt1(s: float) -> float:
    """zeta'(s) = -sum log(n)/n^s for s > 1, Euler-Maclaurin accelerated."""
    N = 40
    head = -sum(math.log(n) / n ** s for n in range(2, N))
    f = -math.log(N) / N ** s
    # integral of -log(x) x^(-s) from N to infinity
    integral = -(math.log(N) / (s - 1.0) + 1.0 / (s - 1.0) ** 2) * N ** (1.0 - s)
    # f'(x) = (s log x - 1) x^(-s-1);  f'''(x) = [s(s+1)(s+2) log x - (3s^2+6s+2)] x^(-s-3)
    fp = (s * math.log(N) - 1.0) / N ** (s + 1.0)
    fppp = (s * (s + 1.0) * (s + 2.0) * math.log(N)
            - (3.0 * s * s + 6.0 * s + 2.0)) / N ** (s + 3.0)
    return head + integral + 0.5 * f - fp / 12.0 + fppp / 720.0


def riemann_zeta_deriv(s: float) -> float:
    """zeta'(s) for s <= 0, via differentiation of the functional equation.

    Closed forms at the even trivial zeros (only zeta'(-2) is used by the
    d = 2 closed-form potentials, where it multiplies the T^3 term).
    """
    if s > 0.0:
        raise ValueError("riemann_zeta_deriv supports s <= 0 only")
    if s == 0.0:
        return -0.5 * math.log(2.0 * math.pi)
    if s == math.floor(s) and int(-s) % 2 == 0:
        n = int(-s) // 2
        return ((-1.0) ** n * math.factorial(2 * n) * riemann_zeta(2 * n + 1)
                / (2.0 ** (2 * n + 1) * math.pi ** (2 * n)))
    # generic s < 0:
    # zeta(s) = chi(s) zeta(1-s),  chi = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s)
    u = 1.0 - s
    g = gamma_fn(u)
    z = riemann_zeta(u)
    zp = _zeta_deriv_gt1(u)
    sin_h = math.sin(math.pi * s / 2.0)
    cos_h = math.cos(math.pi * s / 2.0)
    pref = 2.0 ** s * math.pi ** (s - 1.0)
    return pref * (
        math.log(2.0 * math.pi) * sin_h * g * z
        + (math.pi / 2.0) * cos_h * g * z
        - sin_h * g * digamma(u) * z
        - sin_h * g * zp
    )


# ---------------------------------------------------------------------------
# Hurwitz zeta
# ---------------------------------------------------------------------------

_EM_TERMS = 12
_EM_SHIFT = 24


def _hurwitz_euler_maclaurin(s: float, a: float) -> float:
    N = _EM_SHIFT
    head = sum((k + a) ** (-s) for k in range(N))
    x = N + a
    tail = x ** (1.0 - s) / (s - 1.0) + 0.5 * x ** (-s)
    rising = s
    xpow = x ** (-s - 1.0)
    for j in range(1, _EM_TERMS + 1):
        b2j = bernoulli_number(2 * j)
        tail += b2j / math.factorial(2 * j) * rising * xpow
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j)
        xpow /= x * x
    return head + tail


def _bernoulli_poly(n: int, x: float) -> float:
    return sum(math.comb(n, k) * bernoulli_number(k) * x ** (n - k) for k in range(n + 1))


def hurwitz_zeta(s: float, a: float) -> float:
    """Hurwitz zeta(s, a) for real s != 1 and a > 0.

    The fundamental domain is a in (0, 1]; larger offsets are reduced with
    the ladder zeta(s, a) = zeta(s, a+1) + a^(-s).  Negative integer s uses
    the exact Bernoulli-polynomial continuation, everything else the
    Euler-Maclaurin form (valid on both sides of s = 1).
    """
    if a <= 0.0:
        raise ValueError(f"Hurwitz offset a={a} must be positive")
    if s == 1.0:
        raise ValueError("Hurwitz pole at s=1; use hurwitz_regularized_at_1")
    if s <= 0.0 and s == math.floor(s):
        n = int(-s)
        return -_bernoulli_poly(n + 1, a) / (n + 1)
    return _hurwitz_euler_maclaurin(s, a)


def hurwitz_zeta_reflected(s: float, a: float) -> float:
    """zeta(s, a) for s < 0, 0 < a <= 1, via the trigonometric expansion.

    Secondary route, kept independent of the Euler-Maclaurin path so the
    two can be cross-checked on the overlap (the convergent reading of the
    cos(2 pi a n)/n^(1-s) series is used).
    """
    if not (0.0 < a <= 1.0):
        raise ValueError("reflected route needs a in (0, 1]")
    if s >= 0.0:
        raise ValueError("reflected route needs s < 0")
    sigma = 1.0 - s
    c, sn = _trig_sums(sigma, 2.0 * math.pi * a)
    pref = 2.0 * gamma_fn(sigma) / (2.0 * math.pi) ** sigma
    return pref * (math.sin(math.pi * s / 2.0) * c + math.cos(math.pi * s / 2.0) * sn)


def hurwitz_regularized_at_1(a: float) -> float:
    """lim_{s->1} (zeta(s, a) - 1/(s-1)) = -psi(a)."""
    if a <= 0.0:
        raise ValueError("offset must be positive")
    return -digamma(a)


# ---------------------------------------------------------------------------
# trigonometric sums / polylogarithm on the unit circle
# ---------------------------------------------------------------------------

def _trig_sums(sigma: float, theta: float, n_head: int = 20000, n_euler: int = 12):
    """(sum cos(n theta)/n^sigma, sum sin(n theta)/n^sigma) for sigma > 1.

    Head summed directly; the tail sum_{n>N} z^n n^(-sigma), z = e^(i theta),
    is accelerated with the Euler transformation (iterated summation by
    parts), which gains a factor n/(1-z) per difference order.
    """
    if sigma <= 1.0:
        raise ValueError("trigonometric series requires exponent > 1")
    theta = math.fmod(theta, 2.0 * math.pi)
    if theta < 0.0:
        theta += 2.0 * math.pi
    if theta == 0.0:
        return riemann_zeta(sigma), 0.0
    # keep |z/(1-z)|^j * Delta^j n^(-sigma) under control near theta = 0, 2pi
    gap = min(theta, 2.0 * math.pi - theta)
    N = max(n_head, int(40.0 / gap))
    n = np.arange(1, N + 1, dtype=np.float64)
    phase = n * theta
    a_n = n ** (-sigma)
    c_head = float(np.sum(np.cos(phase) * a_n))
    s_head = float(np.sum(np.sin(phase) * a_n))
    # Euler-transformed tail starting at N+1:
    # sum_{k>=0} z^(N+1+k) b_k = z^(N+1)/(1-z) * sum_j (z/(1-z))^j (Delta^j b)(0)
    # High-order differences of b hit the float rounding floor and |w|^j
    # amplifies the noise, so the sum is truncated at its smallest term.
    z = complex(math.cos(theta), math.sin(theta))
    w = z / (1.0 - z)
    cur = [(N + 1 + k) ** (-sigma) for k in range(n_euler + 1)]
    tail = 0.0 + 0.0j
    coeff = z ** (N + 1) / (1.0 - z)
    prev_mag = math.inf
    for _ in range(n_euler + 1):
        term = coeff * cur[0]
        mag = abs(term)
        if mag > prev_mag:
            break
        tail += term
        prev_mag = mag
        coeff *= w
        cur = [cur[i + 1] - cur[i] for i in range(len(cur) - 1)]
        if not cur:
            break
    return c_head + tail.real, s_head + tail.imag


def polylog_circle(s: int, beta: float):
    """Real and imaginary parts of Li_s(e^(i beta)) for integer s >= 2.

    Returns (sum cos(n beta)/n^s, sum sin(n beta)/n^s) to at least 10
    significant digits.
    """
    if s < 2 or s != int(s):
        raise ValueError("polylog_circle requires integer s >= 2")
    if not (0.0 <= beta < 2.0 * math.pi):
        beta = math.fmod(beta, 2.0 * math.pi)
        if beta < 0.0:
            beta += 2.0 * math.pi
    if beta == 0.0:
        return riemann_zeta(float(s)), 0.0
    return _trig_sums(float(s), beta)


# ---------------------------------------------------------------------------
# modified Bessel function of the second kind
# ---------------------------------------------------------------------------

def _bessel_k_half(two_nu: int, z: float) -> float:
    """Exact closed form for half-integer order (2 nu = two_nu odd)."""
    n = (two_nu - 1) // 2  # K_{n + 1/2}
    pref = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z)
    total = 0.0
    for k in range(n + 1):
        total += (math.factorial(n + k)
                  / (math.factorial(k) * math.factorial(n - k) * (2.0 * z) ** k))
    return pref * total


def _bessel_k01_series(z: float):
    """Ascending series for K_0, K_1 (z <= 2)."""
    t = 0.25 * z * z
    lg = math.log(0.5 * z)
    # I_0, I_1 and the psi-weighted companion sums
    term = 1.0
    i0 = 1.0
    k0 = -(lg + EULER_GAMMA)
    h = 0.0
    k = 0
    while True:
        k += 1
        term *= t / (k * k)
        h += 1.0 / k
        i0 += term
        k0 += term * (h - lg - EULER_GAMMA)
        if term < 1e-18 * i0:
            break
    # K_1 from the n = 1 ascending series:
    # K_1 = 1/z + log(z/2) I_1(z) - (z/4) sum_k [psi(k+1)+psi(k+2)] t^k / (k! (k+1)!)
    total = digamma(1.0) + digamma(2.0)
    term_k = 1.0
    k = 0
    while True:
        k += 1
        term_k *= t / (k * (k + 1))
        contrib = term_k * (digamma(k + 1.0) + digamma(k + 2.0))
        total += contrib
        if abs(contrib) < 1e-18 * max(1.0, abs(total)):
            break
    i1 = 0.5 * z * sum((t ** j) / (math.factorial(j) * math.factorial(j + 1))
                       for j in range(0, 30))
    k1 = (1.0 / z) + lg * i1 - 0.25 * z * total
    return k0, k1


def _bessel_k01_cf(z: float):
    """Steed/Thompson-Barnett continued fraction for K_0, K_1 (z > 2)."""
    mu = 0.0
    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - mu * mu
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 10000):
        a -= 2.0 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        s += q * delh
        if abs(q * delh) < 1e-17 * abs(s):
            break
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z) / s
    k1 = k0 * (mu + z + 0.5 - h) / z
    return k0, k1


def bessel_k(nu: float, z: float) -> float:
    """Modified Bessel function K_nu(z) for z > 0 and 2*nu integer.

    Half-integer orders use the exact finite closed form; integer orders
    use the ascending series below z = 2 and a continued fraction above,
    extended upward by the recurrence K_{nu+1} = K_{nu-1} + (2 nu / z) K_nu.
    """
    if z <= 0.0:
        raise ValueError(f"bessel_k requires z > 0, got {z}")
    two_nu = 2.0 * abs(nu)
    if two_nu != math.floor(two_nu):
        raise ValueError(f"unsupported order nu={nu}: 2*nu must be an integer")
    two_nu = int(two_nu)
    if two_nu % 2 == 1:
        return _bessel_k_half(two_nu, z)
    n = two_nu // 2
    if z <= 2.0:
        k0, k1 = _bessel_k01_series(z)
    else:
        k0, k1 = _bessel_k01_cf(z)
    if n == 0:
        return k0
    km, kc = k0, k1
    for j in range(1, n):
        km, kc = kc, km + (2.0 * j / z) * kc
    return kc


# ---------------------------------------------------------------------------
# Epstein-type lattice zetas
# ---------------------------------------------------------------------------

def _one_sided_sum_tail(f, fprime, n_start: int) -> float:
    """Euler-Maclaurin tail sum_{n >= n_start} f(n) with analytic f'."""
    from scipy.integrate import quad

    integral, _ = quad(f, n_start, np.inf, epsabs=1e-16, epsrel=1e-13, limit=200)
    return integral + 0.5 * f(n_start) - fprime(n_start) / 12.0


def epstein_zeta_1d(nu: float, w: float, alpha: float = 0.0, m2: float = 0.0,
                    rel_tol: float = 1e-13) -> float:
    """One-dimensional Epstein zeta sum_{n>=1} [w (n+alpha)^2 + m2]^(-nu).

    Direct summation with an Euler-Maclaurin tail in the convergent region
    2 nu > 1; for 2 nu <= 1 the analytic continuation is available through
    the Epstein-Hurwitz expansion when alpha = 0 and m2 > 0.
    """
    if w <= 0.0:
        raise ValueError("scale w must be positive")
    if 2.0 * nu > 1.0:
        N = 600
        n = np.arange(1, N + 1, dtype=np.float64)
        head = float(np.sum((w * (n + alpha) ** 2 + m2) ** (-nu)))

        def f(x):
            return (w * (x + alpha) ** 2 + m2) ** (-nu)

        def fp(x):
            return -nu * 2.0 * w * (x + alpha) * (w * (x + alpha) ** 2 + m2) ** (-nu - 1.0)

        return head + _one_sided_sum_tail(f, fp, N + 1)
    if m2 > 0.0 and alpha == 0.0:
        return w ** (-nu) * epstein_hurwitz_zeta(nu, m2 / w, rel_tol=rel_tol)
    raise ValueError("divergent region: need 2*nu > 1, or alpha = 0 with m2 > 0")


def epstein_hurwitz_zeta(s: float, p: float, rel_tol: float = 1e-13,
                         max_terms: int = 10000) -> float:
    """Epstein-Hurwitz zeta: analytic continuation of sum_{n>=1} (n^2+p)^(-s).

    Uses the exponentially convergent three-term expansion

        -p^(-s)/2 + sqrt(pi) Gamma(s-1/2) p^(1/2-s) / (2 Gamma(s))
        + 2 pi^s p^(-s/2+1/4) / Gamma(s) * sum_n n^(s-1/2) K_{s-1/2}(2 pi n sqrt(p))

    truncated once three consecutive terms fall below rel_tol times the
    accumulated sum.  Requires p > 0 and 2s integer (Bessel order support).
    """
    if p <= 0.0:
        raise ValueError("epstein_hurwitz_zeta requires p > 0")
    if _is_nonpositive_integer(s) or _is_nonpositive_integer(s - 0.5):
        raise ValueError(f"s={s} sits on a Gamma pole of the expansion")
    sq = math.sqrt(p)
    total = -0.5 * p ** (-s)
    total += (math.sqrt(math.pi) * gamma_fn(s - 0.5) * p ** (0.5 - s)
              / (2.0 * gamma_fn(s)))
    pref = 2.0 * math.pi ** s * p ** (-0.5 * s + 0.25) / gamma_fn(s)
    acc = 0.0
    below = 0
    for n in range(1, max_terms + 1):
        term = n ** (s - 0.5) * bessel_k(s - 0.5, 2.0 * math.pi * n * sq)
        acc += term
        if abs(term) < rel_tol * max(abs(acc), 1e-300):
            below += 1
            if below >= 3:
                break
        else:
            below = 0
    else:
        raise RuntimeError("Bessel tail of epstein_hurwitz_zeta failed to converge")
    return total + pref * acc


def chowla_selberg(s: float, form: QuadraticFormParams, rel_tol: float = 1e-13,
                   max_terms: int = 400) -> float:
    """Two-dimensional inhomogeneous Epstein zeta over the full lattice.

    E(s; a,b,c; q) = sum_{m,n in Z} (a m^2 + b m n + c n^2 + q)^(-s),
    evaluated by the exponentially convergent Chowla-Selberg-type
    expansion: the n = 0 row in closed form, the k = 0 Poisson mode as an
    Epstein-Hurwitz zeta, and a divisor-weighted Bessel double sum.
    """
    a, b, q, delta = form.a, form.b, form.q, form.delta
    if q <= 0.0:
        raise ValueError("chowla_selberg requires q > 0")
    # n = 0 row: q^(-s) + 2 a^(-s) zeta_EH(s, q/a)
    total = q ** (-s) + 2.0 * a ** (-s) * epstein_hurwitz_zeta(s, q / a, rel_tol=rel_tol)
    # k = 0 Poisson mode of the n != 0 rows
    total += (2.0 ** (2.0 * s) * math.sqrt(math.pi) * a ** (s - 1.0)
              * delta ** (0.5 - s) * gamma_fn(s - 0.5)
              * epstein_hurwitz_zeta(s - 0.5, 4.0 * a * q / delta, rel_tol=rel_tol)
              / gamma_fn(s))
    # Bessel double sum, reorganized over products N = j * n
    pref = 8.0 * math.sqrt(math.pi) / (math.sqrt(a) * gamma_fn(s))
    acc = 0.0
    below = 0
    for N in range(1, max_terms + 1):
        inner = 0.0
        for d in _divisors(N):
            n_row = N // d
            v = delta * n_row * n_row / (4.0 * a) + q
            arg = 2.0 * math.pi * d * math.sqrt(v / a)
            inner += ((math.pi * d / math.sqrt(a * v)) ** (s - 0.5)
                      * bessel_k(s - 0.5, arg))
        term = math.cos(math.pi * N * b / a) * inner
        acc += term
        if abs(term) < rel_tol * max(abs(total + pref * acc), 1e-300):
            below += 1
            if below >= 3:
                break
        else:
            below = 0
    else:
        raise RuntimeError("outer Bessel sum of chowla_selberg failed to converge")
    return total + pref * acc


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def epstein_zeta_nd(s: float, weights, v2: float = 0.0, rel_tol: float = 1e-12) -> float:
    """Generalized Epstein zeta over Z^N: sum [sum_i w_i n_i^2 + v2]^(-s).

    Direct lattice sum with box truncation and a monotone integral tail
    bound; the zero vector is included when v2 > 0 and omitted when
    v2 = 0 (where it would be singular).  Convergent region 2s > N only;
    the N = 1 continuation is delegated to ``epstein_zeta_1d``.
    """
    weights = [float(w) for w in weights]
    if any(w <= 0.0 for w in weights):
        raise ValueError("weights must be positive")
    N = len(weights)
    if N == 1:
        # one-sided sum handles both the convergent region and the
        # m^2 > 0 continuation
        two_sided = 2.0 * epstein_zeta_1d(s, weights[0], 0.0, v2)
        return two_sided + (v2 ** (-s) if v2 > 0.0 else 0.0)
    if 2.0 * s <= N:
        raise ValueError(f"divergent region for N={N}: need 2s > N")
    # choose radius so the tail bound is below rel_tol times the value scale
    scale = v2 ** (-s) if v2 > 0.0 else min(weights) ** (-s)
    target = rel_tol * scale
    R = 20.0
    while _ball_tail_bound(s, weights, R) > target and R < 4000.0:
        R *= 1.3
    ranges = [int(math.ceil(R / math.sqrt(w))) + 1 for w in weights]
    # iterate the first axis in python, vectorize the rest
    grids = np.meshgrid(*[np.arange(-r, r + 1, dtype=np.float64) for r in ranges[1:]],
                        indexing="ij")
    rest = sum(w * g * g for w, g in zip(weights[1:], grids))
    total = 0.0
    for n1 in range(-ranges[0], ranges[0] + 1):
        qf = weights[0] * n1 * n1 + rest + v2
        if v2 == 0.0 and n1 == 0:
            mask = qf > 0.0
            total += float(np.sum(qf[mask] ** (-s)))
        else:
            total += float(np.sum(qf ** (-s)))
    return total


def _ball_tail_bound(s: float, weights, R: float) -> float:
    # integral estimate of the sum outside the ellipsoid w.x^2 > R^2,
    # after rescaling y_i = sqrt(w_i) x_i
    N = len(weights)
    surface = 2.0 * math.pi ** (N / 2.0) / gamma_fn(N / 2.0)
    measure = math.prod(1.0 / math.sqrt(w) for w in weights)
    return surface * measure * R ** (N - 2.0 * s) / (2.0 * s - N)
