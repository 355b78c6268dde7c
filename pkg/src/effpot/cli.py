"""Command-line front end.

Subcommands: thermal | compact | twisted | models | sweep | validate.
Output is CSV or JSON (--format), values printed with full precision so
they equal the direct library-call results bit for bit.  Exit codes:
0 success, 2 invalid arguments, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings

from . import compact, harness, models, thermal, twisted
from .compact import BoundaryCondition, CompactQuery
from .laurent import ResidualPoleError, assert_finite
from .thermal import (
    PotentialQuery,
    QuadConfig,
    SeriesConfig,
    Statistics,
    Strategy,
)
from .twisted import TwistQuery

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COMPUTE = 3


def _parse_grid(text: str) -> list:
    """start:stop:count with inclusive endpoints."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("grid must be start:stop:count")
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if count < 1:
        raise ValueError("grid count must be >= 1")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]


def _emit(record: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(record))
    else:
        keys = list(record)
        print(",".join(keys))
        print(",".join("%.17g" % v if isinstance(v, float) else str(v)
                       for v in record.values()))


def _series_cfg(args) -> SeriesConfig:
    return SeriesConfig(rel_tol=args.rel_tol, sigma=args.sigma)


def _quad_cfg(args) -> QuadConfig:
    return QuadConfig(rel_tol=args.rel_tol)


def cmd_thermal(args) -> int:
    q = PotentialQuery(Statistics(args.stat), args.m, args.T, args.d,
                       Strategy(args.strategy))
    res = thermal.evaluate(q, _series_cfg(args), _quad_cfg(args))
    _emit({"value": res.value, "abs_err_est": res.abs_err_est,
           "terms_used": res.terms_used, "strategy": res.strategy.value,
           "pole_residual": res.pole_residual}, args.format)
    return EXIT_OK


def cmd_compact(args) -> int:
    q = CompactQuery(BoundaryCondition(args.bc), args.m, args.L, args.d,
                     Strategy(args.strategy))
    res = compact.compact_potential(q, _series_cfg(args), _quad_cfg(args))
    _emit({"value": res.value, "abs_err_est": res.abs_err_est,
           "terms_used": res.terms_used, "strategy": res.strategy.value,
           "pole_residual": res.pole_residual}, args.format)
    return EXIT_OK


def cmd_twisted(args) -> int:
    q = TwistQuery(args.m, args.L, args.d, args.omega, Strategy(args.strategy))
    strat = Strategy(args.strategy)
    if strat is Strategy.QUADRATURE:
        value = twisted.twisted_quadrature(q, _quad_cfg(args))
    elif strat is Strategy.BESSEL_SERIES:
        value = twisted.twisted_bessel(q, _series_cfg(args))
    elif strat is Strategy.HIGH_T_EXPANSION:
        value = assert_finite(twisted.twisted_highT(q, _series_cfg(args)), 1e-10)
    else:
        value = twisted.twisted_closed_d3(args.m, args.L, args.omega)
    _emit({"value": value, "strategy": strat.value}, args.format)
    return EXIT_OK


def cmd_models(args) -> int:
    fc = models.FieldContent(
        scalar_masses=tuple(args.scalars or ()),
        gauge_masses=tuple(args.gauge or ()),
        fermion_masses=tuple(args.fermions or ()),
        Q=args.Q, T=args.T)
    record = {"susy_potential": models.susy_finite_T_potential(fc, args.V0,
                                                               _quad_cfg(args))}
    if fc.gauge_masses:
        record["sm_gauge_one_loop"] = models.sm_gauge_one_loop(fc, _quad_cfg(args))
    _emit(record, args.format)
    return EXIT_OK


def cmd_sweep(args) -> int:
    strategies = tuple(Strategy(s.strip()) for s in args.strategies.split(","))
    spec = harness.SweepSpec(
        family=args.family, d=args.d, grid=tuple(_parse_grid(args.grid)),
        strategies=strategies, statistics=Statistics(args.stat),
        bc=BoundaryCondition(args.bc), omega=args.omega,
        normalize=not args.no_normalize, output=args.out)
    rows = harness.run_sweep(spec, _series_cfg(args), _quad_cfg(args))
    text = harness.write_csv(rows, spec)
    if not args.out:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    """Fast invariant suite plus the discrepancy ledger."""
    failures = []

    def check(name, ok):
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures.append(name)

    pi = math.pi
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        v = thermal.thermal_quadrature(PotentialQuery(Statistics.BOSON, 0.0, 1.0, 3)).value
        check("massless boson d=3 = -pi^2/45", abs(v + pi ** 2 / 45) < 1e-10)
        for d in (2, 3, 4):
            q = thermal.thermal_quadrature(PotentialQuery(Statistics.BOSON, 0.5, 1.0, d)).value
            b = thermal.thermal_bessel(PotentialQuery(Statistics.BOSON, 0.5, 1.0, d)).value
            check(f"bessel==quadrature d={d}", abs(b - q) < 1e-8 * abs(q))
        lv = thermal.thermal_highT(PotentialQuery(Statistics.BOSON, 1.0, 1.0, 3))
        check("d=3 pole cancellation", abs(lv.pole) < 1e-12 * abs(lv.finite))
        per = compact.compact_potential(
            CompactQuery(BoundaryCondition.PERIODIC, 0.0, 1.0, 3)).value
        check("periodic Casimir -pi^2/90", abs(per + pi ** 2 / 90) < 1e-8)
        t0 = twisted.twisted_quadrature(TwistQuery(1.0, 1.0, 3, 0.0))
        check("twist omega=0 reduction", abs(t0 - compact.compact_potential(
            CompactQuery(BoundaryCondition.PERIODIC, 1.0, 1.0, 3)).value) < 1e-10 * abs(t0))
        lhs, rhs = twisted.phased_poisson(1.0, pi / 3.0)
        check("phased Poisson identity", abs(lhs - rhs) < 1e-12)
        ledger = harness.discrepancy_ledger()
        flagged = {e["operation"] for e in ledger}
        print("ledger flags:", sorted(flagged) or "(none)")
        expected = {"thermal_closed_d3_fermion", "twisted_closed_d3",
                    "compact_closed_d3[antiperiodic]"}
        check("ledger flags exactly the known transcriptions", flagged == expected)
    return EXIT_OK if not failures else EXIT_COMPUTE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="effpot",
                                description="one-loop effective potentials at finite "
                                            "temperature and on the circle")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--rel-tol", type=float, default=1e-10, dest="rel_tol")
    p.add_argument("--sigma", type=int, default=8)
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("thermal", help="finite-temperature potential")
    t.add_argument("--stat", choices=("boson", "fermion"), required=True)
    t.add_argument("--m", type=float, required=True)
    t.add_argument("--T", type=float, required=True)
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--strategy", choices=[s.value for s in Strategy],
                   default="quadrature")
    t.set_defaults(fn=cmd_thermal)

    c = sub.add_parser("compact", help="potential on S1 x R^d")
    c.add_argument("--bc", choices=("periodic", "antiperiodic"), required=True)
    c.add_argument("--m", type=float, required=True)
    c.add_argument("--L", type=float, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--strategy", choices=[s.value for s in Strategy],
                   default="quadrature")
    c.set_defaults(fn=cmd_compact)

    w = sub.add_parser("twisted", help="twisted boundary conditions")
    w.add_argument("--m", type=float, required=True)
    w.add_argument("--L", type=float, required=True)
    w.add_argument("--omega", type=float, required=True)
    w.add_argument("--d", type=int, required=True)
    w.add_argument("--strategy", choices=[s.value for s in Strategy],
                   default="quadrature")
    w.set_defaults(fn=cmd_twisted)

    m = sub.add_parser("models", help="composite SM/SUSY potentials")
    m.add_argument("--scalars", type=float, nargs="*")
    m.add_argument("--gauge", type=float, nargs="*")
    m.add_argument("--fermions", type=float, nargs="*")
    m.add_argument("--Q", type=float, default=1.0)
    m.add_argument("--T", type=float, default=1.0)
    m.add_argument("--V0", type=float, default=0.0)
    m.set_defaults(fn=cmd_models)

    s = sub.add_parser("sweep", help="strategy-comparison sweep, CSV out")
    s.add_argument("--family", choices=("thermal", "compact", "twisted"),
                   required=True)
    s.add_argument("--stat", choices=("boson", "fermion"), default="boson")
    s.add_argument("--bc", choices=("periodic", "antiperiodic"), default="periodic")
    s.add_argument("--omega", type=float, default=0.25)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--grid", required=True, help="start:stop:count inclusive")
    s.add_argument("--strategies", required=True,
                   help="comma list: quadrature,bessel,hight,closed")
    s.add_argument("--no-normalize", action="store_true")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_sweep)

    v = sub.add_parser("validate", help="run the invariant suite and ledger")
    v.set_defaults(fn=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except ValueError as exc:
        # module precondition violations mirror flag validation
        print(f"error: invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResidualPoleError, RuntimeError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
