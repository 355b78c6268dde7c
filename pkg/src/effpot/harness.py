"""Cross-validation and figure-reproduction driver.

Sweeps dimensionless grids (m/T, mL) across strategies, emits CSV with a
fixed schema, produces per-strategy convergence reports, and maintains
the discrepancy ledger listing every printed closed form that deviates
from the quadrature oracle beyond tolerance in its validity region.

CSV schema (UTF-8, header row):

    abscissa, strategy:<name>, ..., reldiff:<a>-<b>, ..., terms:<name>, ...

Floats are printed with 17 significant digits.  When the quadrature
column is present it is the reference for the difference columns.  Rows
are emitted in grid order and two runs of the same spec produce
identical bytes.
"""

from __future__ import annotations

import io
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import compact, thermal, twisted
from .compact import BoundaryCondition, CompactQuery
from .laurent import assert_finite
from .thermal import (
    PotentialQuery,
    QuadConfig,
    SeriesConfig,
    Statistics,
    Strategy,
)
from .twisted import TwistQuery

__all__ = ["SweepSpec", "SweepRow", "run_sweep", "write_csv",
           "convergence_report", "discrepancy_ledger"]

_FMT = "%.17g"


@dataclass(frozen=True)
class SweepSpec:
    """Grid over a dimensionless abscissa plus a strategy set.

    family: 'thermal' (abscissa m/T at T = 1), 'compact' or 'twisted'
    (abscissa mL at L = 1).  Values are normalized to V/m^(d+1) unless a
    massless point makes that ill-defined, in which case the sweep runs
    unnormalized.
    """

    family: str
    d: int
    grid: tuple
    strategies: tuple
    statistics: Statistics = Statistics.BOSON
    bc: BoundaryCondition = BoundaryCondition.PERIODIC
    omega: float = 0.25
    normalize: bool = True
    output: str | None = None

    def __post_init__(self):
        if self.family not in ("thermal", "compact", "twisted"):
            raise ValueError(f"unknown sweep family {self.family!r}")
        grid = tuple(float(x) for x in self.grid)
        object.__setattr__(self, "grid", grid)
        if not grid or any(x <= 0.0 for x in grid):
            raise ValueError("grid must be non-empty with positive abscissae")
        if list(grid) != sorted(set(grid)):
            raise ValueError("grid must be strictly increasing")
        strategies = tuple(Strategy(s) if not isinstance(s, Strategy) else s
                           for s in self.strategies)
        object.__setattr__(self, "strategies", strategies)
        if not strategies:
            raise ValueError("need at least one strategy")


@dataclass(frozen=True)
class SweepRow:
    abscissa: float
    values: dict
    reldiffs: dict
    terms: dict


def _eval_cell(spec: SweepSpec, x: float, strat: Strategy,
               series_cfg: SeriesConfig, quad_cfg: QuadConfig):
    """(value, terms_used); errors surface as flagged NaN cells."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if spec.family == "thermal":
                q = PotentialQuery(spec.statistics, x, 1.0, spec.d, strat)
                res = thermal.evaluate(q, series_cfg, quad_cfg)
                return res.value, res.terms_used
            if spec.family == "compact":
                cq = CompactQuery(spec.bc, x, 1.0, spec.d, strat)
                res = compact.compact_potential(cq, series_cfg, quad_cfg)
                return res.value, res.terms_used
            tq = TwistQuery(x, 1.0, spec.d, spec.omega, strat)
            if strat is Strategy.QUADRATURE:
                return twisted.twisted_quadrature(tq, quad_cfg), 0
            if strat is Strategy.BESSEL_SERIES:
                return twisted.twisted_bessel(tq, series_cfg), 0
            if strat is Strategy.HIGH_T_EXPANSION:
                return assert_finite(twisted.twisted_highT(tq, series_cfg), 1e-10), 0
            if strat is Strategy.CLOSED_FORM:
                return twisted.twisted_closed_d3(x, 1.0, spec.omega), 0
            raise ValueError(f"strategy {strat} unsupported for twisted sweeps")
    except Exception:
        return float("nan"), -1


def run_sweep(spec: SweepSpec, series_cfg: SeriesConfig = SeriesConfig(),
              quad_cfg: QuadConfig = QuadConfig()) -> list:
    """Evaluate every strategy at every abscissa, rows in grid order.

    Parallelism is capped by the EFFPOT_THREADS environment variable;
    ordering of the output never depends on completion order.
    """
    def row(x: float) -> SweepRow:
        values = {}
        terms = {}
        for strat in spec.strategies:
            v, n = _eval_cell(spec, x, strat, series_cfg, quad_cfg)
            if spec.normalize:
                v = v / x ** (spec.d + 1)
            values[strat.value] = v
            terms[strat.value] = n
        reldiffs = {}
        ref = None
        if Strategy.QUADRATURE in spec.strategies:
            ref = values[Strategy.QUADRATURE.value]
        names = [s.value for s in spec.strategies]
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                den = abs(ref) if ref is not None else max(abs(values[a]), abs(values[b]))
                if den == 0.0 or math.isnan(den):
                    den = 1.0
                reldiffs[f"{a}-{b}"] = abs(values[a] - values[b]) / den
        return SweepRow(x, values, reldiffs, terms)

    n_threads = int(os.environ.get("EFFPOT_THREADS", "1"))
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            return list(pool.map(row, spec.grid))
    return [row(x) for x in spec.grid]


def write_csv(rows: list, spec: SweepSpec, stream=None) -> str:
    """Serialize sweep rows to the fixed CSV schema; returns the text."""
    buf = io.StringIO()
    names = [s.value for s in spec.strategies]
    header = ["abscissa"]
    header += [f"strategy:{n}" for n in names]
    header += [f"reldiff:{k}" for k in rows[0].reldiffs] if rows else []
    header += [f"terms:{n}" for n in names]
    buf.write(",".join(header) + "\n")
    for r in rows:
        cells = [_FMT % r.abscissa]
        cells += [_FMT % r.values[n] for n in names]
        cells += [_FMT % v for v in r.reldiffs.values()]
        cells += [str(r.terms[n]) for n in names]
        buf.write(",".join(cells) + "\n")
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    if spec.output:
        with open(spec.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def convergence_report(family: str, strategy: Strategy, abscissa: float,
                       d: int = 3, statistics: Statistics = Statistics.BOSON,
                       omega: float = 0.25,
                       cfg: SeriesConfig = SeriesConfig()) -> dict:
    """Partial sums of a series strategy until its truncation rule fires.

    Returns {'partials': [(index, partial_sum), ...], 'log_slope': fitted
    slope of log|term| against index}.  The high-T strategies terminate at
    their finite or configured order instead.
    """
    partials = []
    terms = []
    if strategy is Strategy.BESSEL_SERIES:
        if family == "thermal":
            pref = -thermal._bessel_prefactor(d)
            m, scale = abscissa, 1.0
            alt = statistics is Statistics.FERMION
            wfn = lambda k: (-1.0) ** k if alt else 1.0
        elif family == "compact":
            pref = -compact.CASIMIR_NORMALIZATION * thermal._bessel_prefactor(d)
            m, scale = abscissa, 1.0
            alt = statistics is Statistics.FERMION
            wfn = lambda k: (-1.0) ** k if alt else 1.0
        else:
            pref = -compact.CASIMIR_NORMALIZATION * thermal._bessel_prefactor(d)
            m, scale = abscissa, 1.0
            beta = 2.0 * math.pi * omega
            wfn = lambda k: math.cos(beta * k)
        from . import specfun
        nu = (d + 1) / 2.0
        total = 0.0
        below = 0
        for k in range(1, cfg.max_terms + 1):
            z = m * k * scale
            term = pref * m ** (d + 1) * specfun.bessel_k(nu, z) / (0.5 * z) ** nu * wfn(k)
            total += term
            partials.append((k, total))
            terms.append(abs(term))
            if abs(term) < cfg.rel_tol * max(abs(total), 1e-300):
                below += 1
                if below >= 3:
                    break
            else:
                below = 0
    elif strategy is Strategy.HIGH_T_EXPANSION:
        # term-by-term l contributions; finite for even d
        sigma = cfg.sigma if d % 2 == 1 else d // 2
        total = 0.0
        for l in range(sigma + 1):
            q = PotentialQuery(statistics, abscissa, 1.0, d, Strategy.HIGH_T_EXPANSION)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                partial = assert_finite(
                    thermal.thermal_highT(q, SeriesConfig(cfg.rel_tol, cfg.max_terms,
                                                          max(2, l))), 1e-9)
            term = partial - total
            total = partial
            partials.append((l, total))
            terms.append(abs(term) if term != 0.0 else 0.0)
    else:
        raise ValueError("convergence_report needs a series-type strategy")
    slope = _log_slope(terms)
    return {"partials": partials, "log_slope": slope}


def _log_slope(mags: list) -> float:
    pts = [(i, math.log(m)) for i, m in enumerate(mags) if m > 0.0]
    if len(pts) < 2:
        return float("nan")
    n = len(pts)
    sx = sum(p[0] for p in pts)
    sy = sum(p[1] for p in pts)
    sxx = sum(p[0] * p[0] for p in pts)
    sxy = sum(p[0] * p[1] for p in pts)
    return (n * sxy - sx * sy) / (n * sxx - sx * sx)


# ---------------------------------------------------------------------------
# discrepancy ledger
# ---------------------------------------------------------------------------

LEDGER_TOL = 1e-3


def discrepancy_ledger(quad_cfg: QuadConfig = QuadConfig()) -> list:
    """Compare every printed-closed-form operation against the oracle.

    Returns a machine-readable list of entries for the operations whose
    relative deviation exceeds LEDGER_TOL anywhere on their validity grid
    (small m/T resp. mL); an empty list means full agreement.
    """
    entries = []

    def check(op, tag, pairs):
        worst = 0.0
        at = None
        for closed_val, oracle_val, point in pairs:
            dev = abs(closed_val - oracle_val) / max(abs(oracle_val), 1e-300)
            if dev > worst:
                worst, at = dev, point
        if worst > LEDGER_TOL:
            entries.append({"operation": op, "equation": tag,
                            "max_rel_deviation": worst, "at": at})
        return worst

    grid = (0.1, 0.2, 0.3)

    def thermal_pairs(closed_fn, stat):
        out = []
        for x in grid:
            oracle = thermal.thermal_quadrature(
                PotentialQuery(stat, x, 1.0, 3 if closed_fn in
                               (thermal.thermal_closed_d3_boson,
                                thermal.thermal_closed_d3_fermion) else 2),
                quad_cfg).value
            out.append((closed_fn(x, 1.0), oracle, {"m_over_T": x}))
        return out

    check("thermal_closed_d3_boson", "d=3 boson closed form",
          thermal_pairs(thermal.thermal_closed_d3_boson, Statistics.BOSON))
    check("thermal_closed_d3_fermion", "d=3 fermion closed form",
          thermal_pairs(thermal.thermal_closed_d3_fermion, Statistics.FERMION))
    check("thermal_closed_d2_boson", "d=2 boson closed form",
          thermal_pairs(thermal.thermal_closed_d2_boson, Statistics.BOSON))
    check("thermal_closed_d2_fermion", "d=2 fermion closed form",
          thermal_pairs(thermal.thermal_closed_d2_fermion, Statistics.FERMION))

    twist_pairs = []
    for om in (0.1, 0.25, 0.4):
        for x in grid:
            oracle = twisted.twisted_quadrature(TwistQuery(x, 1.0, 3, om), quad_cfg)
            twist_pairs.append((twisted.twisted_closed_d3(x, 1.0, om), oracle,
                                {"mL": x, "omega": om}))
    check("twisted_closed_d3", "d=3 twisted closed form (cos beta term)", twist_pairs)

    compact_pairs = []
    for x in grid:
        oracle = compact.compact_potential(
            CompactQuery(BoundaryCondition.ANTIPERIODIC, x, 1.0, 3), quad_cfg=quad_cfg).value
        compact_pairs.append((compact.compact_closed_d3(
            BoundaryCondition.ANTIPERIODIC, x, 1.0), oracle, {"mL": x}))
    check("compact_closed_d3[antiperiodic]",
          "antiperiodic d=3 compact closed form (inherits the fermion print)",
          compact_pairs)
    return entries
