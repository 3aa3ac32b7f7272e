"""Published reference figures used by tests, examples and defaults.

These are transcriptions, not inputs to any computation; the library always
recomputes derived quantities (``k``, fractions) from the raw shares.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Snapshot:
    country: str
    year: int
    p: float  # GDP per employee, 1982 USD or 2013 RMB
    e1: float
    g1: float
    g1_over_e1: float
    k: float  # as published


# Sector-1 shares as fractions. China 2000 prints g1 = 50%, which contradicts
# its own g1/e1 = 0.30 and k = 5.67; g1 = 15% satisfies both.
KEY_VARIABLES: tuple[Snapshot, ...] = (
    Snapshot("USA", 1900, 9_593, 0.41, 0.23, 0.56, 2.32),
    Snapshot("USA", 1950, 20_424, 0.11, 0.069, 0.62, 1.66),
    Snapshot("USA", 1980, 32_095, 0.034, 0.030, 0.88, 1.14),
    Snapshot("CHN", 1983, 5_114, 0.67, 0.33, 0.49, 4.12),
    Snapshot("CHN", 2000, 24_184, 0.50, 0.15, 0.30, 5.67),
    Snapshot("CHN", 2013, 73_513, 0.31, 0.10, 0.32, 4.04),
)

# Long-run averages of g1/e1.
MEAN_G1_OVER_E1 = {"USA": 0.69, "CHN": 0.35}

# China, 1990-1995 and 2010-2015 worked computation: endpoint (p1, p2) pairs
# in 2015 RMB as used in the text (p1(1990) = 5,231 differs from the tabulated
# 5,342).
CHINA_WORKED_PRODUCTIVITIES: dict[int, tuple[float, float]] = {
    1990: (5_231.0, 15_380.0),
    1995: (7_434.0, 27_323.0),
    2010: (20_030.0, 75_394.0),
    2015: (24_210.0, 108_875.0),
}
CHINA_TRANSFER_PER_5Y = 34e6
CHINA_PUBLISHED_ATTRIBUTION = {(1990, 1995): 0.091, (2010, 2015): 0.114}

# Counterfactual bound inputs: k ceiling of 6, e1 67% -> 31% (1985-2014),
# real GDP per employee multiplied by 10.3 over the period (11 in the ratio).
COUNTERFACTUAL_K_MAX = 6.0
CHINA_E1_1985, CHINA_E1_2014 = 0.67, 0.31

# Wage-growth scenario (percent per year): 8.2% baseline growth of real GDP
# per capita 1990-2015, healthcare drag to ~6%, non-salary drift to ~4%.
SCENARIO_BASELINE = 8.2
SCENARIO_HEALTHCARE_DRAG = 2.2
SCENARIO_NONSALARY_DRIFT = 2.0

# Rural survey, five central provinces, circa 2010 (percent of registered
# villagers): moved away (A); present < 3 months (B1); 3-6 months (B2);
# 6-10 months (B3); > 10 months (B4).
RURAL_PRESENCE_2010 = {"A": 29.0, "B1": 18.0, "B2": 3.2, "B3": 2.7, "B4": 47.0}

# Observed vs transfer-predicted US decadal wage changes: r and its published 95% interval.
TRANSFER_CORRELATION_R, TRANSFER_CORRELATION_CI = 0.64, (0.08, 0.90)

# Wage vs agricultural-share log-log regression, USA decadal 1900-1970.
WAGE_SHARE_A, WAGE_SHARE_A_ERR = 0.67, 0.09
WAGE_SHARE_B, WAGE_SHARE_B_ERR = 1.87, 0.06
WAGE_SHARE_R = 0.987
