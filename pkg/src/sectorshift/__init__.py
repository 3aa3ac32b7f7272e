"""Two-sector labor-transfer growth accounting.

Series arithmetic, productivity multipliers and transfer attribution,
wage-transition detection, analog-country share forecasts and the bundled
reference datasets.
"""

from .errors import DataError, DomainError, SectorShiftError
from .forecast import (
    AgeDistribution,
    ScenarioSpec,
    ShareForecast,
    extrapolate_share_analog,
    forecast_wage_band,
    project_age_distribution,
)
from .ingest import (
    DatasetManifest,
    EconomyTable,
    SectorTable,
    interpolate_linear,
    list_bundled,
    load_bundled,
    parse_economy_csv,
    parse_series_csv,
)
from .series import (
    AnnualSeries,
    CorrelationReport,
    IncomeMetric,
    ShareMetric,
    TrendFit,
    correlate,
    deflate_series,
    doubling_time,
    fit_loglinear,
    moving_average_centered,
    period_changes,
)
from .transfer import (
    EconomyYear,
    GapModel,
    ProductivityState,
    TransferResult,
    attribution,
    counterfactual_share_bound,
    productivity_gap,
    productivity_multiplier,
    productivity_state,
    relative_growth_per_share,
    transfer_delta_g,
)
from .transition import (
    LogLogFit,
    PhaseFit,
    TransitionVerdict,
    classify_transition,
    fit_two_phase,
    fit_wage_vs_agrishare,
)

__version__ = "0.1.0"

__all__ = [
    "AgeDistribution",
    "AnnualSeries",
    "CorrelationReport",
    "DataError",
    "DatasetManifest",
    "DomainError",
    "EconomyTable",
    "EconomyYear",
    "GapModel",
    "IncomeMetric",
    "LogLogFit",
    "PhaseFit",
    "ProductivityState",
    "ScenarioSpec",
    "SectorShiftError",
    "SectorTable",
    "ShareForecast",
    "ShareMetric",
    "TransferResult",
    "TransitionVerdict",
    "TrendFit",
    "attribution",
    "classify_transition",
    "correlate",
    "counterfactual_share_bound",
    "deflate_series",
    "doubling_time",
    "extrapolate_share_analog",
    "fit_loglinear",
    "fit_two_phase",
    "fit_wage_vs_agrishare",
    "forecast_wage_band",
    "interpolate_linear",
    "list_bundled",
    "load_bundled",
    "moving_average_centered",
    "parse_economy_csv",
    "parse_series_csv",
    "period_changes",
    "productivity_gap",
    "productivity_multiplier",
    "productivity_state",
    "project_age_distribution",
    "relative_growth_per_share",
    "transfer_delta_g",
]
