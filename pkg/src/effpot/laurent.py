"""Dimensional-regularization bookkeeping.

Quantities that diverge as the spatial dimension is continued to
d = d0 + eps are tracked as truncated Laurent data in eps: a pole
coefficient (of 1/eps) and a finite part.  Regular prefactors such as
m^(d+1) or (2*pi)^(-d) are tracked as first-order jets (value and
eps-derivative), so that products like

    [c0 + c1*eps] * [p/eps + f]  =  p*c0/eps + (f*c0 + p*c1) + O(eps)

are assembled exactly, and the cancellation of the 1/eps poles between
the Gamma(-nu) term and the zeta-at-1 term of the high-temperature
expansions can be asserted numerically rather than assumed.

Only the 1/eps and eps^0 orders are kept.  Products of two pole-bearing
factors never occur in the assemblies handled here; ``jet_times_laurent``
enforces this by construction (a term holds at most one Laurent factor).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EULER_GAMMA = 0.5772156649015328606


class ResidualPoleError(ArithmeticError):
    """A regularized assembly retained an uncancelled 1/eps pole."""

    def __init__(self, pole: float, finite: float, tol: float):
        self.pole = pole
        self.finite = finite
        self.tol = tol
        super().__init__(
            f"residual pole {pole:.6e} exceeds tol {tol:.1e} "
            f"relative to finite part {finite:.6e}"
        )


@dataclass(frozen=True)
class LaurentValue:
    """First-order Laurent data ``pole/eps + finite + O(eps)``."""

    pole: float
    finite: float

    def __add__(self, other: "LaurentValue") -> "LaurentValue":
        if isinstance(other, LaurentValue):
            return LaurentValue(self.pole + other.pole, self.finite + other.finite)
        return NotImplemented

    def __sub__(self, other: "LaurentValue") -> "LaurentValue":
        if isinstance(other, LaurentValue):
            return LaurentValue(self.pole - other.pole, self.finite - other.finite)
        return NotImplemented

    def __mul__(self, c: float) -> "LaurentValue":
        if isinstance(c, (int, float)):
            return LaurentValue(self.pole * c, self.finite * c)
        return NotImplemented

    __rmul__ = __mul__

    def scaled(self, c: float) -> "LaurentValue":
        return LaurentValue(self.pole * c, self.finite * c)


@dataclass(frozen=True)
class Jet:
    """Regular factor expanded to first order: ``val + der*eps``."""

    val: float
    der: float = 0.0

    def __mul__(self, other: "Jet") -> "Jet":
        if isinstance(other, Jet):
            return Jet(self.val * other.val, self.val * other.der + self.der * other.val)
        if isinstance(other, (int, float)):
            return Jet(self.val * other, self.der * other)
        return NotImplemented

    __rmul__ = __mul__


def jet_power(base: float, exp0: float, dexp: float) -> Jet:
    """Jet of ``base**(exp0 + dexp*eps)`` for base > 0.

    A vanishing base (massless limits) is mapped to the zero jet, which is
    the correct limit of ``m**x * log(m)`` terms as m -> 0 for x > 0.
    """
    if base == 0.0:
        return Jet(0.0, 0.0)
    v = base ** exp0
    return Jet(v, v * dexp * math.log(base))


def jet_times_laurent(j: Jet, lv: LaurentValue) -> LaurentValue:
    """Product of a regular jet with a singular factor, to O(eps^0)."""
    return LaurentValue(lv.pole * j.val, lv.finite * j.val + lv.pole * j.der)


def gamma_laurent(n: int) -> LaurentValue:
    """Laurent data of Gamma(-n + delta) around the pole at -n.

    Returns pole = (-1)^n / n! and finite = (-1)^n * psi(n+1) / n!, i.e.
    Gamma(-n + delta) = pole/delta + finite + O(delta).
    """
    if n < 0 or n != int(n):
        raise ValueError("gamma_laurent expects a non-negative integer order")
    n = int(n)
    sign = -1.0 if n % 2 else 1.0
    fact = math.factorial(n)
    psi_np1 = -EULER_GAMMA + sum(1.0 / k for k in range(1, n + 1))
    return LaurentValue(sign / fact, sign * psi_np1 / fact)


def zeta_laurent_at_1() -> LaurentValue:
    """Laurent data of zeta(1 + delta): pole 1, finite Euler gamma."""
    return LaurentValue(1.0, EULER_GAMMA)


def rescale_variable(lv: LaurentValue, c: float) -> LaurentValue:
    """Re-express Laurent data in delta as data in eps where delta = c*eps."""
    return LaurentValue(lv.pole / c, lv.finite)


def assert_finite(v: LaurentValue, tol: float = 1e-10) -> float:
    """Return the finite part after checking the pole has cancelled.

    The pole is compared against ``tol * max(1, |finite|)``; a violation
    signals an assembly bug or an inconsistent expansion order.
    """
    if abs(v.pole) > tol * max(1.0, abs(v.finite)):
        raise ResidualPoleError(v.pole, v.finite, tol)
    return v.finite
