import math
import os

import pytest

from effpot import harness
from effpot.compact import BoundaryCondition
from effpot.harness import SweepSpec, discrepancy_ledger, run_sweep, write_csv
from effpot.thermal import SeriesConfig, Statistics, Strategy


def grid9():
    return tuple(0.1 * k for k in range(1, 10))


class TestRunSweep:
    @pytest.mark.parametrize("d", [3, 4])
    def test_bessel_vs_hight_agreement(self, d):
        spec = SweepSpec(family="thermal", d=d, grid=grid9(),
                         strategies=(Strategy.BESSEL_SERIES, Strategy.HIGH_T_EXPANSION))
        rows = run_sweep(spec)
        worst = max(r.reldiffs["bessel-hight"] for r in rows)
        assert worst < 1e-3

    def test_single_point_single_strategy(self):
        spec = SweepSpec(family="thermal", d=3, grid=(0.5,),
                         strategies=(Strategy.QUADRATURE,))
        rows = run_sweep(spec)
        assert len(rows) == 1
        assert rows[0].reldiffs == {}

    def test_oracle_dominance(self):
        spec = SweepSpec(family="thermal", d=3, grid=(0.1, 0.5, 1.0),
                         strategies=(Strategy.BESSEL_SERIES, Strategy.QUADRATURE))
        rows = run_sweep(spec)
        for r in rows:
            assert r.reldiffs["bessel-quadrature"] < 1e-8

    def test_determinism(self, tmp_path):
        spec = SweepSpec(family="thermal", d=3, grid=(0.2, 0.4),
                         strategies=(Strategy.BESSEL_SERIES, Strategy.HIGH_T_EXPANSION))
        a = write_csv(run_sweep(spec), spec)
        b = write_csv(run_sweep(spec), spec)
        assert a == b

    def test_thread_cap_preserves_order_and_values(self):
        spec = SweepSpec(family="thermal", d=3, grid=grid9(),
                         strategies=(Strategy.BESSEL_SERIES,))
        seq = write_csv(run_sweep(spec), spec)
        os.environ["EFFPOT_THREADS"] = "4"
        try:
            par = write_csv(run_sweep(spec), spec)
        finally:
            del os.environ["EFFPOT_THREADS"]
        assert seq == par

    def test_csv_schema(self, tmp_path):
        out = tmp_path / "sweep.csv"
        spec = SweepSpec(family="compact", d=3, grid=(0.3, 0.6),
                         strategies=(Strategy.QUADRATURE, Strategy.BESSEL_SERIES),
                         bc=BoundaryCondition.ANTIPERIODIC, output=str(out))
        write_csv(run_sweep(spec), spec)
        lines = out.read_text(encoding="utf-8").splitlines()
        header = lines[0].split(",")
        assert header[0] == "abscissa"
        assert "strategy:quadrature" in header
        assert "reldiff:quadrature-bessel" in header
        assert "terms:bessel" in header
        assert len(lines) == 3

    def test_twisted_family(self):
        spec = SweepSpec(family="twisted", d=3, grid=(0.3, 0.6), omega=0.25,
                         strategies=(Strategy.QUADRATURE, Strategy.BESSEL_SERIES))
        rows = run_sweep(spec)
        for r in rows:
            assert r.reldiffs["quadrature-bessel"] < 1e-8

    def test_error_cells_flagged_not_fatal(self):
        # closed-form strategy has no d=4 printed expression: flagged NaN
        spec = SweepSpec(family="thermal", d=4, grid=(0.5,),
                         strategies=(Strategy.QUADRATURE, Strategy.CLOSED_FORM))
        rows = run_sweep(spec)
        assert math.isnan(rows[0].values["closed"])
        assert rows[0].terms["closed"] == -1
        assert math.isfinite(rows[0].values["quadrature"])

    def test_invalid_specs(self):
        with pytest.raises(ValueError):
            SweepSpec(family="thermal", d=3, grid=(), strategies=(Strategy.QUADRATURE,))
        with pytest.raises(ValueError):
            SweepSpec(family="thermal", d=3, grid=(0.5, 0.1),
                      strategies=(Strategy.QUADRATURE,))
        with pytest.raises(ValueError):
            SweepSpec(family="nope", d=3, grid=(0.1,), strategies=(Strategy.QUADRATURE,))


class TestConvergenceReport:
    def test_bessel_log_slope(self):
        # term decay of the K series is e^(-q m/T) times a q^-3 power law
        # (K asymptotics at d = 3): after removing the power law the fitted
        # slope is -m/T per added q
        rep = harness.convergence_report("thermal", Strategy.BESSEL_SERIES, 1.0,
                                         d=3, cfg=SeriesConfig(rel_tol=1e-12))
        assert rep["log_slope"] < -1.0  # raw slope is steeper than the rate
        partials = [v for _, v in rep["partials"]]
        terms = [abs(partials[0])] + [abs(b - a) for a, b in zip(partials, partials[1:])]
        compensated = [math.log(t * (q + 1) ** 3) for q, t in enumerate(terms)]
        n = len(compensated)
        xs = list(range(n))
        sx, sy = sum(xs), sum(compensated)
        sxx = sum(x * x for x in xs)
        sxy = sum(x * y for x, y in zip(xs, compensated))
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
        assert slope == pytest.approx(-1.0, rel=0.05)

    def test_hight_even_d_terminates(self):
        rep = harness.convergence_report("thermal", Strategy.HIGH_T_EXPANSION, 0.3,
                                         d=2)
        assert len(rep["partials"]) == 2  # finite printed sum: l = 0, 1

    def test_twisted_oscillation(self):
        rep = harness.convergence_report("twisted", Strategy.BESSEL_SERIES, 0.5,
                                         d=3, omega=0.25,
                                         cfg=SeriesConfig(rel_tol=1e-12))
        partials = [p for _, p in rep["partials"]]
        diffs = [b - a for a, b in zip(partials, partials[1:])]
        signs = {math.copysign(1.0, d) for d in diffs[:8] if d != 0.0}
        assert signs == {1.0, -1.0}  # cosine weighting flips term signs
        assert rep["log_slope"] < 0.0


class TestDiscrepancyLedger:
    def test_flags_exactly_the_known_transcriptions(self):
        entries = discrepancy_ledger()
        flagged = {e["operation"] for e in entries}
        assert flagged == {"thermal_closed_d3_fermion", "twisted_closed_d3",
                           "compact_closed_d3[antiperiodic]"}

    def test_entries_are_machine_readable(self):
        for e in discrepancy_ledger():
            assert set(e) == {"operation", "equation", "max_rel_deviation", "at"}
            assert e["max_rel_deviation"] > harness.LEDGER_TOL
