"""Annual time series and the arithmetic shared by every other module.

Everything here is a pure function of immutable inputs: deflation to real
terms, centered moving averages, log-linear trends, doubling times,
period differences and Pearson correlation with a Fisher-z interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import (
    DegenerateSeries,
    DuplicateYear,
    InsufficientData,
    InsufficientOverlap,
    InvalidDeflator,
    InvalidValue,
    InvalidWindow,
    MissingDeflator,
    MissingYear,
    NoDoubling,
    NonContiguousSeries,
    NonPositiveValue,
)

#: Two-sided 95% standard normal quantile.
Z95 = 1.959964


class IncomeMetric(str, Enum):
    """Ways of measuring personal income; broadly decreasing top to bottom."""

    GDP_PER_CAPITA = "gdp_per_capita"
    GDP_PER_EMPLOYEE = "gdp_per_employee"
    AVERAGE_EARNINGS = "average_earnings"
    MEDIAN_EARNINGS = "median_earnings"
    MANUFACTURING_WORKER_WAGE = "manufacturing_worker_wage"
    ALL_WORKER_WAGE = "all_worker_wage"


class ShareMetric(str, Enum):
    AGRI_EMPLOYMENT_SHARE = "agri_employment_share"
    AGRI_GDP_SHARE = "agri_gdp_share"


class OtherMetric(str, Enum):
    """Tags for ingested series that are neither incomes nor shares."""

    GDP = "gdp"
    PRICE_INDEX = "price_index"
    NATURAL_INCREASE = "natural_increase"
    GENERIC = "generic"
    ECONOMY_TABLE = "economy_table"
    SECTOR_TABLE = "sector_table"


Metric = IncomeMetric | ShareMetric | OtherMetric


def parse_metric(tag: str | Metric) -> Metric:
    if isinstance(tag, Enum):
        return tag
    for enum in (IncomeMetric, ShareMetric, OtherMetric):
        try:
            return enum(tag)
        except ValueError:
            continue
    raise InvalidValue(f"unknown metric tag {tag!r}")


@dataclass(frozen=True)
class AnnualSeries:
    """An ordered ``(year, value)`` series for one country and metric.

    ``filled`` records years whose values were produced by interpolation
    rather than observed, so that provenance survives later transforms.
    """

    years: tuple[int, ...]
    values: tuple[float, ...]
    country: str = "XXX"
    metric: Metric = OtherMetric.GENERIC
    unit: str = ""
    filled: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        years = tuple(int(y) for y in self.years)
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "metric", parse_metric(self.metric))
        object.__setattr__(self, "filled", frozenset(self.filled))
        if len(years) != len(values):
            raise InvalidValue("years and values differ in length")
        for prev, cur in zip(years, years[1:]):
            if cur == prev:
                raise DuplicateYear(cur)
            if cur < prev:
                raise InvalidValue(f"years not increasing at {prev} -> {cur}")
        for y, v in zip(years, values):
            if not math.isfinite(v):
                raise InvalidValue(f"non-finite value at {y}")
        if isinstance(self.metric, ShareMetric):
            hi = _share_upper_bound(self.unit)
            if hi is not None:
                for y, v in zip(years, values):
                    if not 0.0 <= v <= hi:
                        raise InvalidValue(f"share {v} at {y} outside [0, {hi:g}]")

    @classmethod
    def from_mapping(cls, data: Mapping[int, float], **meta) -> AnnualSeries:
        years = sorted(data)
        return cls(tuple(years), tuple(data[y] for y in years), **meta)

    @classmethod
    def from_points(cls, points: Iterable[tuple[int, float]], **meta) -> AnnualSeries:
        pts = list(points)
        return cls(tuple(p[0] for p in pts), tuple(p[1] for p in pts), **meta)

    @property
    def points(self) -> list[tuple[int, float]]:
        return list(zip(self.years, self.values))

    def __len__(self) -> int:
        return len(self.years)

    def __contains__(self, year: object) -> bool:
        return year in self.as_dict()

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.years, self.values))

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.years, dtype=float), np.asarray(self.values, dtype=float)

    def value(self, year: int) -> float:
        try:
            return self.as_dict()[year]
        except KeyError:
            raise MissingYear(year) from None

    def with_values(self, values: Sequence[float], **changes) -> AnnualSeries:
        return replace(self, values=tuple(values), **changes)

    def between(self, start: int | None = None, end: int | None = None) -> AnnualSeries:
        """Inclusive year window; either bound may be open."""
        keep = [
            (y, v)
            for y, v in self.points
            if (start is None or y >= start) and (end is None or y <= end)
        ]
        return replace(
            self,
            years=tuple(y for y, _ in keep),
            values=tuple(v for _, v in keep),
            filled=self.filled & {y for y, _ in keep},
        )

    def is_contiguous(self) -> bool:
        return all(b - a == 1 for a, b in zip(self.years, self.years[1:]))


def _share_upper_bound(unit: str) -> float | None:
    u = unit.strip().lower()
    if u.startswith("percent") or u.startswith("%"):
        return 100.0
    if u.startswith("fraction"):
        return 1.0
    return None


@dataclass(frozen=True)
class TrendFit:
    """Log-linear trend ``value = intercept * exp(alpha * (year - t0))``.

    ``stderr_alpha`` is the ordinary OLS standard error; the ``±`` figures
    customarily quoted next to growth exponents are usually ``Z95`` times
    this (see :attr:`halfwidth95`).
    """

    alpha: float
    intercept: float
    stderr_alpha: float
    r: float
    t0: int
    n: int

    @property
    def doubling_time(self) -> float | None:
        return math.log(2.0) / self.alpha if self.alpha > 0 else None

    @property
    def halfwidth95(self) -> float:
        return Z95 * self.stderr_alpha

    def predict(self, year: float | np.ndarray) -> float | np.ndarray:
        return self.intercept * np.exp(self.alpha * (np.asarray(year, dtype=float) - self.t0))


@dataclass(frozen=True)
class CorrelationReport:
    r: float
    n: int
    ci_low: float
    ci_high: float


class OLS(NamedTuple):
    slope: float
    intercept: float
    stderr_slope: float
    stderr_intercept: float
    r: float
    sse: float
    n: int


def ols(x: np.ndarray, y: np.ndarray) -> OLS:
    """Simple least squares of ``y`` on ``x`` with an intercept.

    ``r`` is reported as 0 when either variable has no variance; standard
    errors are 0 when ``n == 2`` (no residual degrees of freedom).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.size
    if n < 2:
        raise InsufficientData(f"need at least 2 points for a line, got {n}")
    xm, ym = x.mean(), y.mean()
    dx, dy = x - xm, y - ym
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise DegenerateSeries("regressor has zero variance")
    syy = float(dy @ dy)
    slope = float(dx @ dy) / sxx
    intercept = ym - slope * xm
    resid = y - (intercept + slope * x)
    sse = float(resid @ resid)
    if n > 2:
        s2 = sse / (n - 2)
        se_slope = math.sqrt(s2 / sxx)
        se_int = math.sqrt(s2 * (1.0 / n + xm * xm / sxx))
    else:
        se_slope = se_int = 0.0
    r = float(dx @ dy) / math.sqrt(sxx * syy) if syy > 0 else 0.0
    r = min(1.0, max(-1.0, r))
    return OLS(slope, float(intercept), se_slope, se_int, r, sse, n)


def deflate_series(
    nominal: AnnualSeries,
    deflator: AnnualSeries,
    base_year: int,
    currency: str | None = None,
) -> AnnualSeries:
    """Convert a nominal series to constant ``base_year`` prices.

    ``real(y) = nominal(y) * deflator(base_year) / deflator(y)``. The unit
    is rewritten to ``"<base_year> <currency>"``; when ``currency`` is not
    given, the word "current" in the nominal unit is replaced by the base
    year.
    """
    defl = deflator.as_dict()
    needed = [base_year, *nominal.years]
    for y in needed:
        if y not in defl:
            raise MissingDeflator(y)
        if defl[y] <= 0:
            raise InvalidDeflator(f"deflator {defl[y]!r} at {y} is not positive")
    base = defl[base_year]
    values = [v * base / defl[y] for y, v in nominal.points]
    if currency is not None:
        unit = f"{base_year} {currency}"
    elif "current" in nominal.unit:
        unit = nominal.unit.replace("current", str(base_year), 1)
    else:
        unit = f"{base_year} {nominal.unit}".strip()
    return nominal.with_values(values, unit=unit)


def moving_average_centered(series: AnnualSeries, window: int) -> AnnualSeries:
    """Centered moving average over full windows only.

    The output has ``n - window + 1`` points, each placed at the center
    year of its window; edges are dropped rather than shrunk.
    """
    if window < 1 or window % 2 == 0:
        raise InvalidWindow(f"window must be an odd integer >= 1, got {window}")
    n = len(series)
    if n < window:
        raise InsufficientData(f"series has {n} points, window needs {window}")
    years, values = series.arrays()
    half = window // 2
    out_years, out_values = [], []
    for i in range(n - window + 1):
        span = years[i : i + window]
        if span[-1] - span[0] != window - 1:
            raise NonContiguousSeries(
                f"year gap inside window {int(span[0])}-{int(span[-1])}"
            )
        out_years.append(int(span[half]))
        out_values.append(float(values[i : i + window].mean()))
    return replace(
        series,
        years=tuple(out_years),
        values=tuple(out_values),
        filled=series.filled & set(out_years),
    )


def fit_loglinear(series: AnnualSeries, t0: int | None = None) -> TrendFit:
    """OLS of ``ln(value)`` on ``year - t0``. ``t0`` defaults to the first year."""
    if len(series) < 3:
        raise InsufficientData(f"log-linear fit needs >= 3 points, got {len(series)}")
    for y, v in series.points:
        if v <= 0:
            raise NonPositiveValue(y, v)
    if t0 is None:
        t0 = series.years[0]
    years, values = series.arrays()
    fit = ols(years - t0, np.log(values))
    return TrendFit(
        alpha=fit.slope,
        intercept=math.exp(fit.intercept),
        stderr_alpha=fit.stderr_slope,
        r=fit.r,
        t0=int(t0),
        n=fit.n,
    )


def doubling_time(alpha: float) -> float:
    """Continuous-compounding doubling time ``ln 2 / alpha``."""
    if not alpha > 0:
        raise NoDoubling(f"growth rate {alpha!r} never doubles")
    return math.log(2.0) / alpha


def period_changes(
    series: AnnualSeries,
    step: int,
    relative: bool = False,
    start: int | None = None,
) -> AnnualSeries:
    """Changes over consecutive ``step``-year intervals.

    Intervals are anchored at ``start`` (default: the first year) and run
    ``start, start + step, ...`` up to the last year; the change is stored
    at the interval's closing year. With ``relative=True`` each change is
    divided by the opening value.
    """
    if step < 1:
        raise InvalidWindow(f"step must be >= 1, got {step}")
    if not len(series):
        return series
    data = series.as_dict()
    anchor = series.years[0] if start is None else start
    if anchor not in data:
        raise MissingYear(anchor)
    out: dict[int, float] = {}
    y = anchor + step
    while y <= series.years[-1]:
        if y not in data:
            raise MissingYear(y)
        prev = data[y - step]
        diff = data[y] - prev
        if relative:
            if prev == 0:
                raise DegenerateSeries(f"relative change from zero at {y - step}")
            diff /= prev
        out[y] = diff
        y += step
    unit = "relative change" if relative else series.unit
    return replace(
        series,
        years=tuple(out),
        values=tuple(out.values()),
        unit=unit,
        metric=OtherMetric.GENERIC,  # differences of a share are not shares
        filled=frozenset(),
    )


def fisher_ci(r: float, n: int, z: float = Z95) -> tuple[float, float]:
    """Fisher-z confidence interval for a Pearson correlation."""
    if n <= 3:
        return (-1.0, 1.0)
    if abs(r) >= 1.0:
        return (r, r)
    zr = math.atanh(r)
    half = z / math.sqrt(n - 3)
    return (math.tanh(zr - half), math.tanh(zr + half))


def common_years(a: AnnualSeries, b: AnnualSeries) -> list[int]:
    bd = b.as_dict()
    return [y for y in a.years if y in bd]


def correlate(a: AnnualSeries, b: AnnualSeries) -> CorrelationReport:
    """Pearson correlation over the years both series share, with 95% CI."""
    years = common_years(a, b)
    n = len(years)
    if n < 4:
        raise InsufficientOverlap(f"only {n} common years; need >= 4")
    ad, bd = a.as_dict(), b.as_dict()
    x = np.array([ad[y] for y in years])
    y = np.array([bd[y] for y in years])
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateSeries("zero variance over the common years")
    r = min(1.0, max(-1.0, float(dx @ dy) / math.sqrt(sxx * syy)))
    lo, hi = fisher_ci(r, n)
    return CorrelationReport(r=r, n=n, ci_low=lo, ci_high=hi)


def require_positive(series: AnnualSeries) -> None:
    for y, v in series.points:
        if v <= 0:
            raise NonPositiveValue(y, v)


__all__ = [
    "AnnualSeries",
    "CorrelationReport",
    "IncomeMetric",
    "Metric",
    "OLS",
    "OtherMetric",
    "ShareMetric",
    "TrendFit",
    "Z95",
    "common_years",
    "correlate",
    "deflate_series",
    "doubling_time",
    "fisher_ci",
    "fit_loglinear",
    "moving_average_centered",
    "ols",
    "parse_metric",
    "period_changes",
    "require_positive",
]
