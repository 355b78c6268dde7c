"""Composite one-loop potentials: Standard-Model gauge piece and the
supersymmetric finite-temperature potential.

The building blocks are exactly the thermal-module integrals; this module
only assembles them with the multiplicities (1 per real scalar, 3 per
gauge boson, -2 per fermion) and the 1/(64 pi^2) loop normalization.

The zero-temperature piece uses the Coleman-Weinberg form
m^4 (log(m^2/Q^2) - 3/2); the quoted variant log(m^2/Q^2 - 3/2) with no
m^4 prefactor is dimensionally inconsistent for a potential density, so
the standard form is implemented.  Massless entries contribute only
their radiation terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import thermal
from .thermal import PotentialQuery, QuadConfig, Statistics, Strategy

__all__ = ["FieldContent", "cw_zero_temperature", "susy_finite_T_potential",
           "sm_gauge_one_loop"]


@dataclass(frozen=True)
class FieldContent:
    """Mass spectrum entering the composite potentials.

    scalar_masses: real scalar masses m_i; gauge_masses: gauge boson
    masses M_j (weight 3); fermion_masses: fermion masses (weight -2);
    Q: renormalization scale; T: temperature.
    """

    scalar_masses: tuple = ()
    gauge_masses: tuple = ()
    fermion_masses: tuple = ()
    Q: float = 1.0
    T: float = 1.0

    def __post_init__(self):
        for name in ("scalar_masses", "gauge_masses", "fermion_masses"):
            vals = tuple(float(v) for v in getattr(self, name))
            object.__setattr__(self, name, vals)
            if any(v < 0.0 for v in vals):
                raise ValueError(f"{name} must be non-negative")
        if self.Q <= 0.0:
            raise ValueError("renormalization scale Q must be positive")
        if self.T <= 0.0:
            raise ValueError("temperature must be positive")


def cw_zero_temperature(m: float, Q: float) -> float:
    """Coleman-Weinberg T = 0 piece m^4 (log(m^2/Q^2) - 3/2); 0 at m = 0."""
    if m == 0.0:
        return 0.0
    return m ** 4 * (math.log((m / Q) ** 2) - 1.5)


def _thermal_piece(stat: Statistics, m: float, T: float, cfg: QuadConfig) -> float:
    q = PotentialQuery(stat, m, T, 3, Strategy.QUADRATURE)
    return thermal.thermal_quadrature(q, cfg).value


def susy_finite_T_potential(fc: FieldContent, V0: float,
                            cfg: QuadConfig = QuadConfig()) -> float:
    """V = V0 + (V_T0 + V_Tneq0) / (64 pi^2) over the field content.

    V_Tneq0 sums the d = 3 thermal integrals with weights (1, 3, -2) for
    scalars, gauge bosons and fermions; V_T0 sums the matching
    Coleman-Weinberg pieces.
    """
    v_t0 = (sum(cw_zero_temperature(m, fc.Q) for m in fc.scalar_masses)
            + 3.0 * sum(cw_zero_temperature(M, fc.Q) for M in fc.gauge_masses)
            - 2.0 * sum(cw_zero_temperature(mk, fc.Q) for mk in fc.fermion_masses))
    v_t = (sum(_thermal_piece(Statistics.BOSON, m, fc.T, cfg) for m in fc.scalar_masses)
           + 3.0 * sum(_thermal_piece(Statistics.BOSON, M, fc.T, cfg) for M in fc.gauge_masses)
           - 2.0 * sum(_thermal_piece(Statistics.FERMION, mk, fc.T, cfg)
                       for mk in fc.fermion_masses))
    return V0 + (v_t0 + v_t) / (64.0 * math.pi ** 2)


def sm_gauge_one_loop(fc: FieldContent, cfg: QuadConfig = QuadConfig()) -> float:
    """Finite-temperature gauge-boson piece 3 sum_j J_B(M_j^2/T^2) T^4 / (2 pi^2).

    The divergent T = 0 log integral is excluded, mirroring the thermal
    module's temperature-dependent-part convention.
    """
    if not fc.gauge_masses:
        raise ValueError("sm_gauge_one_loop needs at least one gauge mass")
    t4 = fc.T ** 4
    total = 0.0
    for M in fc.gauge_masses:
        total += thermal.jb_integral((M / fc.T) ** 2, cfg)
    return 3.0 * total * t4 / (2.0 * math.pi ** 2)
