"""Command-line front end.

Exit codes: 0 success, 1 computation-domain error, 2 usage or data error.
Every subcommand accepts ``--json`` and then prints a single deterministic
report (sorted keys) to stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import ingest
from .errors import DataError, DomainError, SectorShiftError
from .forecast import ScenarioSpec, extrapolate_share_analog, forecast_wage_band
from .series import AnnualSeries, correlate, deflate_series, fit_loglinear, period_changes
from .transfer import attribution, transfer_predicted_changes
from .transition import (
    DEFAULT_GROWTH_FLOOR,
    DEFAULT_MIN_SEGMENT,
    DEFAULT_STAGNATION_CEILING,
    classify_transition,
    fit_two_phase,
)


class UsageError(DataError):
    """Arguments that parse but make no sense together."""


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    parameters: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "inputs": self.inputs,
            "parameters": self.parameters,
            "results": self.results,
            "warnings": self.warnings,
        }
        return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False)

    def to_text(self) -> str:
        lines = [f"[{self.command}]"]
        lines += _flatten(self.results)
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines)


def _flatten(obj: Any, prefix: str = "") -> list[str]:
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj):
            out += _flatten(obj[k], f"{prefix}{k}." if isinstance(obj[k], dict) else f"{prefix}{k}")
        return out
    return [f"{prefix.rstrip('.')}: {_fmt(obj)}"]


def _fmt(v: Any) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return ", ".join(_fmt(x) for x in v)
    return "-" if v is None else str(v)


def _clean(v: float | None) -> float | None:
    if v is None or not math.isfinite(v):
        return None
    return float(v)


def _floats(text: str, n: int, what: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != n:
        raise UsageError(f"{what} needs {n} comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"{what}: not numbers: {text!r}") from None


def _common_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    return p


def cmd_fit(args: argparse.Namespace) -> RunReport:
    series = ingest.resolve_series(args.series)
    fit = fit_loglinear(series, t0=args.t0)
    rep = RunReport("fit", inputs={"series": args.series}, parameters={"t0": fit.t0})
    rep.results = {
        "alpha": fit.alpha,
        "stderr_alpha": fit.stderr_alpha,
        "halfwidth95": fit.halfwidth95,
        "intercept": fit.intercept,
        "r": fit.r,
        "n": fit.n,
        "doubling_time": _clean(fit.doubling_time),
    }
    if fit.doubling_time is None:
        rep.warnings.append(f"NoDoubling: alpha = {fit.alpha:.6g} is not positive")
    if series.filled:
        rep.warnings.append(f"{len(series.filled)} interpolated years in input")
    return rep


def _write_plot_data(path: str, wage: AnnualSeries, fit) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# year\tvalue\tfitted-phase1\tfitted-phase2\n")
        for y, v in wage.points:
            one, two = fit.fitted(y)
            cells = [str(y), repr(v), "" if one is None else repr(one), "" if two is None else repr(two)]
            fh.write("\t".join(cells) + "\n")


def cmd_transition(args: argparse.Namespace) -> RunReport:
    wage = ingest.resolve_series(args.wage)
    rep = RunReport("transition", inputs={"wage": args.wage})
    if args.deflator:
        deflator = ingest.resolve_series(args.deflator)
        base = args.base_year if args.base_year is not None else wage.years[-1]
        wage = deflate_series(wage, deflator, base)
        rep.inputs["deflator"] = args.deflator
        rep.parameters["base_year"] = base
    elif args.base_year is not None:
        raise UsageError("--base-year needs --deflator")
    rep.parameters.update(
        floor=args.floor, ceiling=args.ceiling, min_segment=args.min_segment
    )
    share = None
    if args.agrishare:
        share = ingest.resolve_series(args.agrishare)
        rep.inputs["agrishare"] = args.agrishare
    fit = fit_two_phase(wage, args.min_segment)
    verdict = classify_transition(fit, share, args.floor, args.ceiling)
    rep.results = {
        "break_year": fit.break_year,
        "rate1": fit.rate1,
        "rate2": fit.rate2,
        "r1": fit.r1,
        "r2": fit.r2,
        "sse": fit.sse,
        "is_transition": verdict.is_transition,
        "precondition_agrishare": _clean(verdict.precondition_agrishare),
        "precondition_met": verdict.precondition_met,
    }
    rep.warnings += list(verdict.notes)
    if args.plot_data:
        _write_plot_data(args.plot_data, wage, fit)
        rep.parameters["plot_data"] = args.plot_data
    return rep


def cmd_attribute(args: argparse.Namespace) -> RunReport:
    if args.year_a == args.year_b:
        raise UsageError("year_a and year_b must differ")
    table, manifest = ingest.resolve_economy(args.table)
    published = None if args.derived or manifest is None else ingest.published_productivities(manifest)
    res = attribution(table.rows, args.year_a, args.year_b, productivities=published)
    rep = RunReport(
        "attribute",
        inputs={"table": args.table},
        parameters={
            "year_a": args.year_a,
            "year_b": args.year_b,
            "productivities": "published" if published else "derived",
        },
    )
    rep.results = {
        "transferred_workers": res.transferred_workers,
        "delta_e2": res.delta_e2,
        "mean_p1": res.mean_p1,
        "mean_p2": res.mean_p2,
        "delta_G_predicted": res.delta_G_predicted,
        "delta_G_observed": res.delta_G_observed,
        "attribution_fraction": _clean(res.attribution_fraction),
        "attribution_percent": None
        if res.attribution_fraction is None
        else 100.0 * res.attribution_fraction,
    }
    if args.year_a > args.year_b:
        rep.warnings.append("period given in reverse order; both GDP changes are negated")
    rep.warnings += list(res.flags)
    return rep


def cmd_forecast(args: argparse.Namespace) -> RunReport:
    if not args.share and not args.scenario:
        raise UsageError("forecast needs --share TARGET ANALOG and/or --scenario B,D1,D2")
    rep = RunReport("forecast")
    if args.share:
        target_ref, analog_ref = args.share
        target = ingest.resolve_series(target_ref)
        analog = ingest.resolve_series(analog_ref)
        rep.inputs.update(target=target_ref, analog=analog_ref)
        rep.parameters.update(horizon=args.horizon, mode=args.mode)
        if not analog.is_contiguous():
            analog = ingest.interpolate_linear(analog)
            rep.warnings.append(
                f"analog {analog_ref} interpolated linearly: {len(analog.filled)} years filled"
            )
        fc = extrapolate_share_analog(target, analog, args.horizon, mode=args.mode)
        rep.results["share"] = {
            "anchor_year": fc.anchor_year,
            "alignment_year_of_analog": fc.alignment_year_of_analog,
            "at_horizon": fc.values[-1][1],
            "values": {str(y): v for y, v in fc.values},
        }
        rep.warnings += list(fc.notes)
    if args.scenario:
        b, d1, d2 = _floats(args.scenario, 3, "--scenario")
        low, high = forecast_wage_band(ScenarioSpec(b, d1, d2))
        rep.parameters["scenario"] = [b, d1, d2]
        rep.results["wage_band_percent"] = {"low": low, "high": high}
    return rep


def cmd_correlate(args: argparse.Namespace) -> RunReport:
    a = ingest.resolve_series(args.a)
    b = ingest.resolve_series(args.b)
    rep = RunReport(
        "correlate",
        inputs={"a": args.a, "b": args.b},
        parameters={"step": args.step, "changes": args.changes},
    )
    if args.changes == "none":
        ca, cb = a, b
    else:
        rel = args.changes == "relative"
        ca = period_changes(a, args.step, relative=rel, start=args.start)
        cb = period_changes(b, args.step, relative=rel, start=args.start)
    if args.transfer:
        k, ratio = _floats(args.transfer, 2, "--transfer")
        rep.parameters["transfer"] = [k, ratio]
        cb = transfer_predicted_changes(b, k, ratio, step=args.step, start=args.start)
    rep_corr = correlate(ca, cb)
    rep.results = {
        "r": rep_corr.r,
        "n": rep_corr.n,
        "ci_low": rep_corr.ci_low,
        "ci_high": rep_corr.ci_high,
    }
    return rep


def cmd_datasets(args: argparse.Namespace) -> RunReport:
    rep = RunReport("datasets", parameters={"data_dir": str(ingest.data_dir())})
    rep.results = {
        m.id: {
            "country": m.country,
            "metric": m.metric.value,
            "unit": m.unit,
            "kind": m.kind,
            "provenance": m.provenance,
        }
        for m in ingest.list_bundled()
    }
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = _common_parent()
    parser = argparse.ArgumentParser(
        prog="sectorshift",
        description="Two-sector growth accounting, wage-transition detection and share forecasts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", parents=[common], help="log-linear trend and doubling time")
    p.add_argument("series", help="bundled id or CSV path")
    p.add_argument("--t0", type=int, default=None, help="reference year (default: first year)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("transition", parents=[common], help="two-phase wage fit and verdict")
    p.add_argument("wage", help="bundled id or CSV path")
    p.add_argument("--deflator", help="price index to deflate the wage series first")
    p.add_argument("--base-year", type=int, default=None, help="deflation base (default: last wage year)")
    p.add_argument("--agrishare", help="agricultural share series for the precondition flag")
    p.add_argument("--floor", type=float, default=DEFAULT_GROWTH_FLOOR, help="phase-1 growth floor per year")
    p.add_argument("--ceiling", type=float, default=DEFAULT_STAGNATION_CEILING, help="phase-2 growth ceiling per year")
    p.add_argument("--min-segment", type=int, default=DEFAULT_MIN_SEGMENT)
    p.add_argument("--plot-data", metavar="PATH", help="write a TSV of data and fitted phases")
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("attribute", parents=[common], help="share of GDP growth due to labor transfer")
    p.add_argument("table", help="bundled economy id or CSV path")
    p.add_argument("year_a", type=int)
    p.add_argument("year_b", type=int)
    p.add_argument("--derived", action="store_true", help="ignore published productivities; derive from rows")
    p.set_defaults(func=cmd_attribute)

    p = sub.add_parser("forecast", parents=[common], help="analog share projection and wage band")
    p.add_argument("--share", nargs=2, metavar=("TARGET", "ANALOG"))
    p.add_argument("--horizon", type=int, default=2035)
    p.add_argument("--mode", choices=("absolute", "proportional"), default="absolute")
    p.add_argument("--scenario", metavar="B,D1,D2", help="baseline growth and two drags, percent per year")
    p.set_defaults(func=cmd_forecast)

    p = sub.add_parser("correlate", parents=[common], help="correlation of period changes with 95%% CI")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--step", type=int, default=10)
    p.add_argument("--start", type=int, default=None, help="anchor year of the change grid")
    p.add_argument("--changes", choices=("relative", "absolute", "none"), default="relative")
    p.add_argument(
        "--transfer",
        metavar="K,RATIO",
        help="treat b as an agricultural share and predict changes as (k-1)*ratio*delta_e2",
    )
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("datasets", parents=[common], help="list bundled datasets")
    p.set_defaults(func=cmd_datasets)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = args.func(args)
        report.warnings += [str(w.message) for w in caught]
    except SectorShiftError as exc:
        print(f"sectorshift {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"sectorshift {args.command}: {exc}", file=sys.stderr)
        return 2
    print(report.to_json() if args.json else report.to_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
