"""Forward projections: analog-country agricultural shares, wage-growth
scenario bands and two-census age-distribution extrapolation."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Literal, Sequence

from .errors import BinMismatch, DataError, NoAlignment, NonContiguousSeries
from .series import AnnualSeries

SHARE_FLOOR = 0.005
AGE_BIN_FLOOR = 0.1  # percent; replaces non-positive bins so log axes stay usable


@dataclass(frozen=True)
class ShareForecast:
    country: str
    anchor_year: int
    values: tuple[tuple[int, float], ...]
    analog_country: str
    alignment_year_of_analog: int
    mode: str = "absolute"
    notes: tuple[str, ...] = ()

    def value(self, year: int) -> float:
        for y, v in self.values:
            if y == year:
                return v
        raise KeyError(year)

    def as_series(self) -> AnnualSeries:
        return AnnualSeries.from_points(self.values, country=self.country, unit="fraction of employment")


@dataclass(frozen=True)
class ScenarioSpec:
    """Growth scenario in percent per year (8.2 means 8.2%/yr)."""

    baseline_growth: float
    healthcare_drag: float = 2.2
    nonsalary_drift: float = 2.0

    def __post_init__(self) -> None:
        for name in ("baseline_growth", "healthcare_drag", "nonsalary_drift"):
            if getattr(self, name) < 0:
                raise DataError(f"{name} must be >= 0")
        if not self.baseline_growth > self.healthcare_drag + self.nonsalary_drift:
            raise DataError("baseline growth must exceed the sum of the drags")


@dataclass(frozen=True)
class AgeDistribution:
    year: int
    bins: tuple[tuple[float, float, float], ...]  # (age_low, age_high, percent)
    scope: str = "rural"

    def __post_init__(self) -> None:
        object.__setattr__(self, "bins", tuple(tuple(map(float, b)) for b in self.bins))
        if any(p < 0 for _, _, p in self.bins):
            raise DataError("negative bin percentage")
        total = sum(p for _, _, p in self.bins)
        if abs(total - 100.0) > 0.1:
            raise DataError(f"bin percentages sum to {total:.3f}, expected 100")

    @property
    def edges(self) -> tuple[tuple[float, float], ...]:
        return tuple((lo, hi) for lo, hi, _ in self.bins)

    @property
    def percents(self) -> tuple[float, ...]:
        return tuple(p for _, _, p in self.bins)


def extrapolate_share_analog(
    target: AnnualSeries,
    analog: AnnualSeries,
    horizon_year: int,
    mode: Literal["absolute", "proportional"] = "absolute",
) -> ShareForecast:
    """Replay an analog country's decline from the matching share level.

    The analog year whose share is closest to the target's last observation
    is the alignment point (earliest on ties). From there the analog's
    year-over-year movements are applied to the target up to
    ``horizon_year``: as share-point decrements in ``"absolute"`` mode, or
    as ratios in ``"proportional"`` mode. Projected shares are clamped to
    ``[SHARE_FLOOR, 1 - SHARE_FLOOR]``. Once the analog runs out of data
    the projection is held flat and a note says so.

    The analog must be annual from the alignment year on; run
    :func:`sectorshift.ingest.interpolate_linear` first on sparser data.
    """
    if mode not in ("absolute", "proportional"):
        raise DataError(f"unknown mode {mode!r}")
    if not len(target) or not len(analog):
        raise DataError("target and analog must be non-empty")
    anchor_year, last = target.years[-1], target.values[-1]
    if horizon_year <= anchor_year:
        raise DataError(f"horizon {horizon_year} is not after the last observation {anchor_year}")
    lo, hi = min(analog.values), max(analog.values)
    if not lo <= last <= hi:
        raise NoAlignment(
            f"target share {last:.4f} outside analog range [{lo:.4f}, {hi:.4f}]"
        )
    align_year = min(analog.years, key=lambda y: (abs(analog.value(y) - last), y))
    tail = analog.between(align_year)
    if not tail.is_contiguous():
        raise NonContiguousSeries(
            f"analog {analog.country} is not annual after {align_year}; interpolate first"
        )

    notes = []
    observed = tail.values
    value = last
    out = []
    for j, year in enumerate(range(anchor_year + 1, horizon_year + 1), start=1):
        if j < len(observed):
            prev, cur = observed[j - 1], observed[j]
            if mode == "absolute":
                value = value - (prev - cur)
            elif prev > 0:
                value = value * (cur / prev)
        elif j == len(observed):
            notes.append(f"analog data end at {tail.years[-1]}; projection held flat from {year}")
        value = min(max(value, SHARE_FLOOR), 1.0 - SHARE_FLOOR)
        out.append((year, value))
    return ShareForecast(
        country=target.country,
        anchor_year=anchor_year,
        values=tuple(out),
        analog_country=analog.country,
        alignment_year_of_analog=align_year,
        mode=mode,
        notes=tuple(notes),
    )


def forecast_wage_band(spec: ScenarioSpec) -> tuple[float, float]:
    """Real-wage growth band ``(low, high)`` in percent per year.

    ``high`` removes the healthcare drag from baseline growth and ``low``
    further removes the non-salary drift. Decimal arithmetic on the rates'
    shortest representations keeps round inputs giving round outputs.
    """
    b, h, n = (
        Decimal(repr(float(x)))
        for x in (spec.baseline_growth, spec.healthcare_drag, spec.nonsalary_drift)
    )
    high = b - h
    low = high - n
    return float(low), float(high)


def extrapolate_bins(a: AgeDistribution, b: AgeDistribution, target_year: int) -> list[float]:
    """Per-bin straight line through the two distributions, before clamping."""
    if not a.year < b.year:
        raise DataError(f"first distribution ({a.year}) must precede the second ({b.year})")
    if a.edges != b.edges:
        raise BinMismatch("distributions use different age bins")
    span = b.year - a.year
    step = (target_year - b.year) / span
    return [pb + (pb - pa) * step for pa, pb in zip(a.percents, b.percents)]


def project_age_distribution(a: AgeDistribution, b: AgeDistribution, target_year: int) -> AgeDistribution:
    raw = extrapolate_bins(a, b, target_year)
    clamped = [v if v > 0 else AGE_BIN_FLOOR for v in raw]
    total = sum(clamped)
    scaled: Sequence[float] = [100.0 * v / total for v in clamped]
    bins = tuple((lo, hi, p) for (lo, hi), p in zip(b.edges, scaled))
    return AgeDistribution(year=target_year, bins=bins, scope=b.scope)
