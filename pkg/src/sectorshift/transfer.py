"""Two-sector productivity accounting.

Sector 1 is agriculture and sector 2 everything else. Shares are fractions
in (0, 1) throughout; conversion to percent happens only at the edges
(CLI output and :func:`relative_growth_per_share`, whose convention is
percent in and percent out).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DataError, DegenerateShare, InvariantViolation, MissingYear
from .series import AnnualSeries, OtherMetric, TrendFit, period_changes


class GapNotWidening(UserWarning):
    """The sector-2 trend does not outgrow sector 1, so the gap will not widen."""


@dataclass(frozen=True)
class EconomyYear:
    """One country-year: totals plus the agricultural slice.

    ``G`` and ``G1`` are real GDP in constant currency, ``E`` and ``E1``
    employment in persons.
    """

    year: int
    G: float
    E: float
    G1: float
    E1: float

    def __post_init__(self) -> None:
        vals = (self.G, self.E, self.G1, self.E1)
        if not all(math.isfinite(v) for v in vals):
            raise InvariantViolation(self.year, "non-finite value")
        if not 0 < self.G1 < self.G:
            raise InvariantViolation(self.year, f"need 0 < G1 < G, got G1={self.G1}, G={self.G}")
        if not 0 < self.E1 < self.E:
            raise InvariantViolation(self.year, f"need 0 < E1 < E, got E1={self.E1}, E={self.E}")

    @property
    def G2(self) -> float:
        return self.G - self.G1

    @property
    def E2(self) -> float:
        return self.E - self.E1

    @property
    def g1(self) -> float:
        return self.G1 / self.G

    @property
    def e1(self) -> float:
        return self.E1 / self.E

    @property
    def g2(self) -> float:
        return 1.0 - self.g1

    @property
    def e2(self) -> float:
        return 1.0 - self.e1


@dataclass(frozen=True)
class ProductivityState:
    p: float
    p1: float
    p2: float
    k: float
    g1: float
    e1: float


@dataclass(frozen=True)
class TransferResult:
    period: tuple[int, int]
    delta_e2: float
    transferred_workers: float
    mean_p1: float
    mean_p2: float
    delta_G_predicted: float
    delta_G_observed: float
    attribution_fraction: float | None
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class ShareBound:
    ratio: float
    fraction: float
    uncapped: float


@dataclass(frozen=True)
class GapModel:
    A1: float
    A2: float
    alpha1: float
    alpha2: float

    @property
    def d(self) -> float:
        return self.alpha2 - self.alpha1

    @property
    def widening(self) -> bool:
        return self.d > 0

    @classmethod
    def from_fits(cls, sector1: TrendFit, sector2: TrendFit) -> GapModel:
        if sector1.t0 != sector2.t0:
            raise DataError(
                f"trend fits use different reference years ({sector1.t0}, {sector2.t0})"
            )
        return cls(sector1.intercept, sector2.intercept, sector1.alpha, sector2.alpha)


def _check_share(name: str, x: float, closed: bool = False) -> None:
    ok = 0.0 <= x <= 1.0 if closed else 0.0 < x < 1.0
    if not ok:
        bounds = "[0, 1]" if closed else "(0, 1)"
        raise DegenerateShare(f"{name}={x!r} outside {bounds}")


def productivity_multiplier(g1: float, e1: float) -> float:
    """Ratio ``p2 / p1`` computed from the sector-1 GDP and employment shares."""
    _check_share("g1", g1)
    _check_share("e1", e1)
    return ((1.0 - g1) / (1.0 - e1)) / (g1 / e1)


def productivity_state(snapshot: EconomyYear) -> ProductivityState:
    g1, e1 = snapshot.g1, snapshot.e1
    p = snapshot.G / snapshot.E
    return ProductivityState(
        p=p,
        p1=(g1 / e1) * p,
        p2=((1.0 - g1) / (1.0 - e1)) * p,
        k=productivity_multiplier(g1, e1),
        g1=g1,
        e1=e1,
    )


def transfer_delta_g(state: ProductivityState, E: float, delta_e2: float) -> float:
    """GDP change from moving ``E * delta_e2`` workers at fixed productivities."""
    return (state.p2 - state.p1) * E * delta_e2


def transfer_delta_g_from_shares(g1: float, e1: float, G: float, delta_e2: float) -> float:
    """Same quantity written through ``k``: ``(k - 1) (g1/e1) G delta_e2``."""
    k = productivity_multiplier(g1, e1)
    return (k - 1.0) * (g1 / e1) * G * delta_e2


def relative_growth_per_share(k: float, mean_g1_over_e1: float, delta_e2: float) -> float:
    """Percent GDP growth implied by a ``delta_e2`` percent-point transfer."""
    return (k - 1.0) * mean_g1_over_e1 * delta_e2


def attribution(
    rows: Iterable[EconomyYear],
    year_a: int,
    year_b: int,
    productivities: Mapping[int, tuple[float, float]] | None = None,
) -> TransferResult:
    """Share of the observed GDP change explained by rural flight.

    Productivities are averaged over the two endpoints and held fixed while
    ``E1(a) - E1(b)`` workers move from sector 1 to sector 2.
    ``productivities`` optionally supplies published ``(p1, p2)`` pairs by
    year, overriding the values implied by the rows.

    The computation is antisymmetric in ``(year_a, year_b)``: reversing
    the period negates both GDP changes and leaves the fraction unchanged.
    A ``"NonPositiveGrowth"`` flag is raised when GDP did not grow over the
    period in calendar order.
    """
    if year_a == year_b:
        raise DataError("attribution needs two distinct years")
    by_year = {r.year: r for r in rows}
    for y in (year_a, year_b):
        if y not in by_year:
            raise MissingYear(y, "economy table")
    a, b = by_year[year_a], by_year[year_b]

    def pair(row: EconomyYear) -> tuple[float, float]:
        if productivities is not None and row.year in productivities:
            p1, p2 = productivities[row.year]
            return float(p1), float(p2)
        st = productivity_state(row)
        return st.p1, st.p2

    (p1a, p2a), (p1b, p2b) = pair(a), pair(b)
    mean_p1 = (p1a + p1b) / 2.0
    mean_p2 = (p2a + p2b) / 2.0
    moved = a.E1 - b.E1
    predicted = moved * (mean_p2 - mean_p1)
    observed = b.G - a.G

    flags = []
    chronological_growth = observed if year_b > year_a else -observed
    if chronological_growth <= 0:
        flags.append("NonPositiveGrowth")
    fraction = predicted / observed if observed != 0 else None
    return TransferResult(
        period=(year_a, year_b),
        delta_e2=b.e2 - a.e2,
        transferred_workers=moved,
        mean_p1=mean_p1,
        mean_p2=mean_p2,
        delta_G_predicted=predicted,
        delta_G_observed=observed,
        attribution_fraction=fraction,
        flags=tuple(flags),
    )


def counterfactual_share_bound(
    e1_start: float, e1_end: float, k: float, observed_multiplier: float
) -> ShareBound:
    """Upper bound on the growth share explainable by the employment shift.

    With sector-1 productivity frozen, GDP scales as ``e1 + k (1 - e1)``;
    the ratio of that factor between the two dates is compared with the
    observed growth multiplier. ``k`` is a caller-chosen ceiling, not
    estimated here. The extremes 0 and 1 are allowed for the shares so the
    "everyone leaves agriculture" thought experiment can be expressed.
    """
    _check_share("e1_start", e1_start, closed=True)
    _check_share("e1_end", e1_end, closed=True)
    if k < 1:
        raise DegenerateShare(f"multiplier ceiling k={k!r} must be >= 1")
    if not observed_multiplier > 1:
        raise DegenerateShare(f"observed multiplier {observed_multiplier!r} must exceed 1")
    ratio = (e1_end + k * (1.0 - e1_end)) / (e1_start + k * (1.0 - e1_start))
    uncapped = ratio / observed_multiplier
    return ShareBound(ratio=ratio, fraction=min(1.0, uncapped), uncapped=uncapped)


def productivity_gap(model: GapModel, t: float) -> float:
    """``p2(t) - p1(t)`` in the closed form ``p2(t) [1 - (A1/A2) e^{-d t}]``.

    ``t`` is measured from the fits' reference year. Emits
    :class:`GapNotWidening` when ``d <= 0``; the value is still returned.
    """
    if not model.widening:
        warnings.warn(f"d = {model.d:.4g} <= 0", GapNotWidening, stacklevel=2)
    p2 = model.A2 * math.exp(model.alpha2 * t)
    return p2 * (1.0 - (model.A1 / model.A2) * math.exp(-model.d * t))


def transfer_predicted_changes(
    agrishare: AnnualSeries,
    k: float,
    mean_g1_over_e1: float,
    step: int = 10,
    start: int | None = None,
) -> AnnualSeries:
    """Relative GDP-per-employee changes the transfer effect predicts.

    Each ``step``-year drop in the agricultural share ``f`` (a fraction) is
    a rise ``delta_e2`` in the non-agricultural share, and the predicted
    relative change is ``(k - 1) <g1/e1> delta_e2``.
    """
    drops = period_changes(agrishare, step, start=start)
    factor = (k - 1.0) * mean_g1_over_e1
    return drops.with_values(
        [-factor * v for v in drops.values],
        unit="relative change",
        metric=OtherMetric.GENERIC,
    )
