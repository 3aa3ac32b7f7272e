"""Wage-transition detection.

A real-wage series is split into two log-linear phases by exhaustive search
over break points; the verdict then asks whether phase 1 grew and phase 2
stagnated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, InsufficientData
from .series import AnnualSeries, TrendFit, common_years, ols, require_positive

DEFAULT_MIN_SEGMENT = 5
DEFAULT_GROWTH_FLOOR = 0.015
DEFAULT_STAGNATION_CEILING = 0.005
AGRISHARE_PRECONDITION = 0.10


@dataclass(frozen=True)
class PhaseFit:
    """Best two-phase log-linear fit.

    ``break_year`` is the first year of phase 2. Each phase carries its own
    :class:`TrendFit` referenced to the phase's first year.
    """

    break_year: int
    phase1: TrendFit
    phase2: TrendFit
    sse: float

    @property
    def rate1(self) -> float:
        return self.phase1.alpha

    @property
    def rate2(self) -> float:
        return self.phase2.alpha

    @property
    def r1(self) -> float:
        return self.phase1.r

    @property
    def r2(self) -> float:
        return self.phase2.r

    def fitted(self, year: int) -> tuple[float | None, float | None]:
        """Fitted values of (phase 1, phase 2) at ``year``; ``None`` outside a phase."""
        one = float(self.phase1.predict(year)) if year < self.break_year else None
        two = float(self.phase2.predict(year)) if year >= self.break_year else None
        return one, two


@dataclass(frozen=True)
class TransitionVerdict:
    is_transition: bool
    break_year: int
    rate1: float
    rate2: float
    precondition_agrishare: float | None = None
    precondition_met: bool | None = None
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class LogLogFit:
    """``log10 w = -a log10 f_a + b``; ``a`` is the elasticity with the sign removed."""

    a: float
    b: float
    stderr_a: float
    stderr_b: float
    r: float
    n: int


def _segment_fit(years: np.ndarray, logs: np.ndarray) -> tuple[TrendFit, float]:
    t0 = int(years[0])
    res = ols(years - t0, logs)
    fit = TrendFit(
        alpha=res.slope,
        intercept=math.exp(res.intercept),
        stderr_alpha=res.stderr_slope,
        r=res.r,
        t0=t0,
        n=res.n,
    )
    return fit, res.sse


def scan_breaks(wage: AnnualSeries, min_segment: int = DEFAULT_MIN_SEGMENT) -> list[tuple[int, float]]:
    """Total squared log residual for every admissible break year, in order."""
    if min_segment < 2:
        raise DataError(f"min_segment must be >= 2, got {min_segment}")
    n = len(wage)
    if n < 2 * min_segment:
        raise InsufficientData(
            f"two-phase fit needs >= {2 * min_segment} points, got {n}"
        )
    require_positive(wage)
    years, values = wage.arrays()
    logs = np.log(values)
    out = []
    for i in range(min_segment, n - min_segment + 1):
        _, s1 = _segment_fit(years[:i], logs[:i])
        _, s2 = _segment_fit(years[i:], logs[i:])
        out.append((int(years[i]), s1 + s2))
    return out


def fit_two_phase(wage: AnnualSeries, min_segment: int = DEFAULT_MIN_SEGMENT) -> PhaseFit:
    """Split ``wage`` into two independent log-linear phases minimising total SSE.

    Candidates whose SSE is within a relative ``1e-12`` of the minimum count
    as ties and the earliest break year wins, so noiseless kinks resolve to
    the kink itself.
    """
    scan = scan_breaks(wage, min_segment)
    best = min(s for _, s in scan)
    _, values = wage.arrays()
    logs = np.log(values)
    scale = max(1.0, float(((logs - logs.mean()) ** 2).sum()))
    tol = 1e-12 * scale
    break_year = next(y for y, s in scan if s <= best + tol)

    years = np.asarray(wage.years, dtype=float)
    i = wage.years.index(break_year)
    phase1, s1 = _segment_fit(years[:i], logs[:i])
    phase2, s2 = _segment_fit(years[i:], logs[i:])
    return PhaseFit(break_year=break_year, phase1=phase1, phase2=phase2, sse=s1 + s2)


def _share_at(agrishare: AnnualSeries, year: int) -> tuple[float, str | None]:
    data = agrishare.as_dict()
    if year in data:
        return data[year], None
    before = [y for y in agrishare.years if y < year]
    after = [y for y in agrishare.years if y > year]
    if before and after:
        y0, y1 = before[-1], after[0]
        w = (year - y0) / (y1 - y0)
        v = data[y0] + w * (data[y1] - data[y0])
        return v, f"agricultural share at {year} interpolated between {y0} and {y1}"
    y_near = before[-1] if before else after[0]
    return data[y_near], f"agricultural share at {year} taken from nearest year {y_near}"


def classify_transition(
    fit: PhaseFit,
    agrishare: AnnualSeries | None = None,
    growth_floor: float = DEFAULT_GROWTH_FLOOR,
    stagnation_ceiling: float = DEFAULT_STAGNATION_CEILING,
) -> TransitionVerdict:
    """Apply the wage-transition rule to a two-phase fit.

    A transition needs phase-1 growth of at least ``growth_floor`` per year
    and phase-2 growth of at most ``stagnation_ceiling``. When an
    agricultural-share series (fractions) is given, whether the share had
    fallen under 10% by the break year is reported but does not gate the
    verdict.
    """
    if not growth_floor > stagnation_ceiling:
        raise DataError(
            f"growth_floor ({growth_floor}) must exceed stagnation_ceiling ({stagnation_ceiling})"
        )
    notes = []
    grew = fit.rate1 >= growth_floor
    stalled = fit.rate2 <= stagnation_ceiling
    if not grew:
        notes.append(f"phase-1 rate {fit.rate1:.4f}/yr below floor {growth_floor:.4f}")
    if not stalled:
        notes.append(f"phase-2 rate {fit.rate2:.4f}/yr above ceiling {stagnation_ceiling:.4f}")
    share = met = None
    if agrishare is not None and len(agrishare):
        share, note = _share_at(agrishare, fit.break_year)
        if note:
            notes.append(note)
        met = share < AGRISHARE_PRECONDITION
    return TransitionVerdict(
        is_transition=grew and stalled,
        break_year=fit.break_year,
        rate1=fit.rate1,
        rate2=fit.rate2,
        precondition_agrishare=share,
        precondition_met=met,
        notes=tuple(notes),
    )


def fit_wage_vs_agrishare(wage: AnnualSeries, agrishare: AnnualSeries) -> LogLogFit:
    """Base-10 log-log regression of wage on agricultural share over common years."""
    years = common_years(wage, agrishare)
    if len(years) < 3:
        raise InsufficientData(f"only {len(years)} common years; need >= 3")
    w = wage.as_dict()
    f = agrishare.as_dict()
    sub_w = AnnualSeries(tuple(years), tuple(w[y] for y in years))
    sub_f = AnnualSeries(tuple(years), tuple(f[y] for y in years))
    require_positive(sub_w)
    require_positive(sub_f)
    res = ols(np.log10(sub_f.values), np.log10(sub_w.values))
    return LogLogFit(
        a=-res.slope,
        b=res.intercept,
        stderr_a=res.stderr_slope,
        stderr_b=res.stderr_intercept,
        r=res.r,
        n=res.n,
    )
