"""Acceptance criteria, one group of checks per criterion.

Each check is its own test so a red result names exactly what missed. The
terminal summary (see ``conftest.py``) prints one PASS/FAIL line per
criterion; ``python tests/test_acceptance.py`` prints the same lines
without pytest.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np
import pytest

from sectorshift import ingest
from sectorshift.forecast import ScenarioSpec, extrapolate_share_analog, forecast_wage_band
from sectorshift.ingest import interpolate_linear, load_bundled, parse_series_csv, serialize_series
from sectorshift.reference import (
    CHINA_E1_1985,
    CHINA_E1_2014,
    CHINA_WORKED_PRODUCTIVITIES,
    COUNTERFACTUAL_K_MAX,
    KEY_VARIABLES,
    MEAN_G1_OVER_E1,
)
from sectorshift.series import (
    AnnualSeries,
    correlate,
    deflate_series,
    doubling_time,
    fit_loglinear,
    moving_average_centered,
    period_changes,
)
from sectorshift.transfer import (
    EconomyYear,
    GapModel,
    attribution,
    counterfactual_share_bound,
    productivity_gap,
    productivity_multiplier,
    productivity_state,
    relative_growth_per_share,
    transfer_delta_g,
    transfer_delta_g_from_shares,
    transfer_predicted_changes,
)
from sectorshift.transition import classify_transition, fit_two_phase, fit_wage_vs_agrishare

CHECKS: list[tuple[str, str, object]] = []
RESULTS: dict[str, list[tuple[str, bool, str]]] = {}


def check(criterion: str, name: str):
    def deco(fn):
        CHECKS.append((criterion, name, fn))
        return fn

    return deco


def within(value, target, tol):
    return abs(value - target) <= tol


# 1. Golden k values ----------------------------------------------------------

for _snap in KEY_VARIABLES:
    def _k(snap=_snap):
        k = productivity_multiplier(snap.g1, snap.e1)
        return within(k, snap.k, 0.01), f"k={k:.4f} vs {snap.k} +/- 0.01"

    check("golden_k", f"{_snap.country}_{_snap.year}")(_k)


# 2. Attribution ----------------------------------------------------------------

@check("attribution", "china_1990_1995_fraction")
def _():
    table = load_bundled("china_economy_1990_2015")
    res = attribution(table.rows, 1990, 1995, CHINA_WORKED_PRODUCTIVITIES)
    pct = 100 * res.attribution_fraction
    return within(pct, 9.1, 0.1), f"{pct:.3f}% vs 9.1 +/- 0.1 pp"


@check("attribution", "counterfactual_full_shift")
def _():
    pct = 100 * counterfactual_share_bound(1.0, 0.0, COUNTERFACTUAL_K_MAX, 10.3).fraction
    return within(pct, 58, 1), f"{pct:.2f}% vs 58 +/- 1 pp"


@check("attribution", "counterfactual_1985_2014")
def _():
    pct = 100 * counterfactual_share_bound(CHINA_E1_1985, CHINA_E1_2014, COUNTERFACTUAL_K_MAX, 11.0).fraction
    return within(pct, 15, 1), f"{pct:.2f}% vs 15 +/- 1 pp"


@check("attribution", "relative_growth_worked_example_exact")
def _():
    v = relative_growth_per_share(6, 0.4, 1.2)
    return v == 2.4, f"{v!r} vs exactly 2.4"


# 3. Trend fits -------------------------------------------------------------------

def _fits():
    return fit_loglinear(load_bundled("china_p1")), fit_loglinear(load_bundled("china_p2"))


@check("trend_fits", "alpha1")
def _():
    f1, _ = _fits()
    return within(f1.alpha, 0.062, 0.002), f"alpha1={f1.alpha:.5f} vs 0.062 +/- 0.002"


@check("trend_fits", "r1")
def _():
    f1, _ = _fits()
    return f1.r >= 0.96, f"r1={f1.r:.5f} vs >= 0.96"


@check("trend_fits", "alpha2")
def _():
    _, f2 = _fits()
    return within(f2.alpha, 0.075, 0.002), f"alpha2={f2.alpha:.5f} vs 0.075 +/- 0.002"


@check("trend_fits", "r2")
def _():
    _, f2 = _fits()
    return f2.r >= 0.985, f"r2={f2.r:.5f} vs >= 0.985"


@check("trend_fits", "doubling_time_fitted_alpha1")
def _():
    f1, _ = _fits()
    return within(f1.doubling_time, 11.1, 0.1), f"{f1.doubling_time:.4f} y vs 11.1 +/- 0.1"


@check("trend_fits", "doubling_time_fitted_alpha2")
def _():
    _, f2 = _fits()
    return within(f2.doubling_time, 9.2, 0.1), f"{f2.doubling_time:.4f} y vs 9.2 +/- 0.1"


@check("trend_fits", "doubling_time_published_alpha1")
def _():
    t = doubling_time(0.062)
    return within(t, 11.1, 0.1), f"ln2/0.062={t:.4f} y vs 11.1 +/- 0.1"


@check("trend_fits", "doubling_time_published_alpha2")
def _():
    t = doubling_time(0.075)
    return within(t, 9.2, 0.1), f"ln2/0.075={t:.4f} y vs 9.2 +/- 0.1"


@check("trend_fits", "gap_exponent_d")
def _():
    f1, f2 = _fits()
    d = GapModel.from_fits(f1, f2).d
    return within(d, 0.013, 0.003), f"d={d:.5f} vs 0.013 +/- 0.003"


# 4. Deflation ----------------------------------------------------------------------

@check("deflation", "china_1990_gdp")
def _():
    real = deflate_series(load_bundled("china_gdp_nominal"), load_bundled("china_gdp_deflator"), 2015)
    v = real.value(1990)
    return round(v) == 6531, f"{v!r} rounds to {round(v)} vs 6531"


# 5. Fisher CI ------------------------------------------------------------------------

def _synthetic_pair(r, n, seed=11):
    rng = np.random.default_rng(seed)
    a, e = rng.standard_normal(n), rng.standard_normal(n)
    a = (a - a.mean()) / a.std()
    e = e - e.mean()
    e = e - (e @ a) / (a @ a) * a
    e /= e.std()
    years = tuple(range(1910, 1910 + 10 * n, 10))
    return AnnualSeries(years, tuple(a)), AnnualSeries(years, tuple(r * a + math.sqrt(1 - r * r) * e))


@check("fisher_ci", "r064_n11")
def _():
    rep = correlate(*_synthetic_pair(0.64, 11))
    ok = within(rep.ci_low, 0.065, 0.005) and within(rep.ci_high, 0.896, 0.005) and within(rep.r, 0.64, 1e-12)
    return ok, f"r={rep.r:.4f} CI=({rep.ci_low:.4f}, {rep.ci_high:.4f}) vs (0.065, 0.896) +/- 0.005"


# 6. Transition detection -------------------------------------------------------------

def _kink():
    return AnnualSeries(tuple(range(1950, 2010)), tuple(math.exp(0.03 * min(i, 30)) for i in range(60)))


@check("transition", "noiseless_kink")
def _():
    fit = fit_two_phase(_kink())
    ok = fit.break_year == 1980 and within(fit.rate1, 0.03, 1e-10) and within(fit.rate2, 0.0, 1e-10)
    return ok, f"break={fit.break_year} rate1={fit.rate1!r} rate2={fit.rate2!r}"


@check("transition", "us_break_year")
def _():
    fit = fit_two_phase(load_bundled("usa_real_wage"))
    return 1972 <= fit.break_year <= 1978, f"break={fit.break_year} vs [1972, 1978]"


@check("transition", "us_verdict")
def _():
    v = classify_transition(fit_two_phase(load_bundled("usa_real_wage")))
    return v.is_transition, f"is_transition={v.is_transition} rate1={v.rate1:.4f} rate2={v.rate2:.5f}"


@check("transition", "scaling_invariance_50")
def _():
    wage = load_bundled("usa_real_wage")
    ref = fit_two_phase(wage).break_year
    rng = np.random.default_rng(50)
    scales = 10 ** rng.uniform(-3, 3, size=50)
    bad = [c for c in scales if fit_two_phase(wage.with_values([c * v for v in wage.values])).break_year != ref]
    return not bad, f"{50 - len(bad)}/50 scalings keep break {ref}"


# 7. Forecast --------------------------------------------------------------------------

def _china_forecast():
    korea = interpolate_linear(load_bundled("korea_agrishare"))
    return extrapolate_share_analog(load_bundled("china_agrishare"), korea, 2035)


@check("forecast", "china_2035")
def _():
    v = _china_forecast().value(2035)
    return within(v, 0.10, 0.02), f"{v:.4f} vs 0.10 +/- 0.02"


@check("forecast", "china_above_10pct_through_2025")
def _():
    fc = _china_forecast()
    low = min(v for y, v in fc.values if y <= 2025)
    return low > 0.10, f"min through 2025 = {low:.4f} vs > 0.10"


@check("forecast", "scenario_band_exact")
def _():
    band = forecast_wage_band(ScenarioSpec(8.2, 2.2, 2.0))
    return band == (4.0, 6.0), f"{band!r} vs exactly (4.0, 6.0)"


# 8. Property suites ---------------------------------------------------------------------

def _economies(seed, n):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        G, E = 10 ** rng.uniform(6, 14), 10 ** rng.uniform(4, 9)
        g1, e1 = rng.uniform(0.001, 0.999, size=2)
        yield EconomyYear(2000, G, E, g1 * G, e1 * E), rng.uniform(-0.2, 0.2)


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


@check("properties", "transfer_form_equals_share_form_1000")
def _():
    worst = 0.0
    for row, de2 in _economies(1, 1000):
        a = transfer_delta_g(productivity_state(row), row.E, de2)
        b = transfer_delta_g_from_shares(row.g1, row.e1, row.G, de2)
        worst = max(worst, _rel(a, b))
    return worst <= 1e-12, f"max rel diff {worst:.2e} vs 1e-12"


@check("properties", "sector_reconstruction")
def _():
    worst = 0.0
    for row, _ in _economies(2, 1000):
        s = productivity_state(row)
        worst = max(worst, _rel(s.p1 * row.E1, row.G1), _rel(s.p2 * row.E2, row.G2))
    return worst <= 1e-9, f"max rel diff {worst:.2e} vs 1e-9"


@check("properties", "gap_closed_form")
def _():
    f1, f2 = _fits()
    m = GapModel.from_fits(f1, f2)
    ts = np.random.default_rng(3).uniform(-50, 100, size=200)
    worst = max(
        _rel(productivity_gap(m, t), m.A2 * math.exp(m.alpha2 * t) - m.A1 * math.exp(m.alpha1 * t)) for t in ts
    )
    return worst <= 1e-10, f"max rel diff {worst:.2e} vs 1e-10"


@check("properties", "moving_average_affine")
def _():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(5, 40))
        vals = rng.normal(0, 100, size=n)
        s = AnnualSeries(tuple(range(1900, 1900 + n)), tuple(vals))
        c, m = rng.normal(0, 50), rng.normal(0, 5)
        ref = np.array(moving_average_centered(s, 5).values)
        moved = np.array(moving_average_centered(s.with_values(m * vals + c), 5).values)
        worst = max(worst, float(np.max(np.abs(moved - (m * ref + c)) / (1 + np.abs(m * ref + c)))))
    return worst <= 1e-12, f"max scaled diff {worst:.2e} vs 1e-12"


@check("properties", "correlation_affine")
def _():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(4, 40))
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        yrs = tuple(range(n))
        r0 = correlate(AnnualSeries(yrs, tuple(x)), AnnualSeries(yrs, tuple(y))).r
        a, b = rng.uniform(0.01, 100, size=2)
        r1 = correlate(AnnualSeries(yrs, tuple(a * x + 3)), AnnualSeries(yrs, tuple(b * y - 7))).r
        worst = max(worst, abs(r1 - r0))
    return worst <= 1e-12, f"max |dr| {worst:.2e} vs 1e-12"


@check("properties", "csv_round_trip")
def _():
    bad = []
    manifests = [m for m in ingest.list_bundled() if m.kind == "series"]
    for m in manifests:
        if serialize_series(parse_series_csv(m.path)).encode() != m.path.read_bytes():
            bad.append(m.id)
    return not bad, f"{len(manifests) - len(bad)}/{len(manifests)} bundled series byte-identical"


# 9. Data-dependent (loose) ------------------------------------------------------------------

def _wage_share_fit():
    wage = load_bundled("usa_real_wage")
    decadal = AnnualSeries.from_points([(y, v) for y, v in wage.points if 1900 <= y <= 1970 and y % 10 == 0])
    return fit_wage_vs_agrishare(decadal, load_bundled("usa_agrishare"))


@check("data_dependent", "us_wage_share_elasticity")
def _():
    fit = _wage_share_fit()
    return 0.58 <= fit.a <= 0.76, f"a={fit.a:.4f} (+/- {1.96 * fit.stderr_a:.3f}) vs [0.58, 0.76]"


@check("data_dependent", "us_wage_share_correlation")
def _():
    fit = _wage_share_fit()
    return abs(fit.r) >= 0.95, f"|r|={abs(fit.r):.4f} vs >= 0.95"


@check("data_dependent", "us_wage_transfer_correlation")
def _():
    wage = load_bundled("usa_real_wage")
    observed = period_changes(wage, 10, relative=True)
    predicted = transfer_predicted_changes(load_bundled("usa_agrishare"), 1.66, MEAN_G1_OVER_E1["USA"])
    rep = correlate(observed, predicted)
    return 0.5 <= rep.r <= 0.75, f"r={rep.r:.4f} (n={rep.n}) vs [0.5, 0.75]"


# -------------------------------------------------------------------------------------------

def run_check(criterion, name, fn):
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, not a skipped one
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    RESULTS.setdefault(criterion, []).append((name, bool(ok), detail))
    return bool(ok), detail


@pytest.mark.parametrize("criterion, name, fn", CHECKS, ids=[f"{c}:{n}" for c, n, _ in CHECKS])
def test_criterion(criterion, name, fn):
    ok, detail = run_check(criterion, name, fn)
    print(f"{'PASS' if ok else 'FAIL'} {criterion}:{name}: {detail}")
    assert ok, detail


def summary_lines() -> list[str]:
    lines = []
    for criterion, checks in RESULTS.items():
        failed = [c for c in checks if not c[1]]
        status = "PASS" if not failed else "FAIL"
        detail = "; ".join(f"{n}: {d}" for n, _, d in failed) or f"{len(checks)} check{'' if len(checks) == 1 else 's'}"
        lines.append(f"{status} {criterion}: {detail}")
    return lines


if __name__ == "__main__":
    for c, n, fn in CHECKS:
        run_check(c, n, fn)
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for checks in RESULTS.values() for _, ok, _ in checks) else 1)
