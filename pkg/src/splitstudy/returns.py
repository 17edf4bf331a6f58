"""Period returns, beta estimation and abnormal-return computation.

The baseline ("normal") return is the gross adjusted-close return over the
120 trading days before the split. The post-split gross return over a
horizon is multiplied by the stock's beta to give the market-influenced
return; the abnormal return is the difference of the two. A variant
replaces the baseline's start price with the virtual demarcation price,
the midpoint of the 120-day pre-event window.

Beta is a covariance/variance ratio against a reference return series.
A correlation/variance variant exists as well; both are implemented and
every estimate is labeled with the variant that produced it. The
denominator is the variance of the stock's own returns in both.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CoverageError, DataError
from .models import EventWindow, ReferenceRateSeries
from .prices import ADJ_CLOSE, NEAREST_TOLERANCE, price_at

PRE_WINDOW_DAYS = 120
# Bars 60 and 61 of the 120-bar pre-event window, i.e. its midpoint.
DEMARCATION_OFFSETS = (-61, -60)

COVARIANCE = "covariance"
CORRELATION = "correlation"

FULL_PERIOD = "full_period"
DEMARCATION = "demarcation"


@dataclass(frozen=True)
class ReturnObservation:
    """Gross return (end price / start price) between two offsets."""

    period_start: int
    period_end: int
    gross_return: float

    def __post_init__(self) -> None:
        if not self.gross_return > 0:
            raise DataError(f"gross return ({self.gross_return}) must be > 0")


@dataclass(frozen=True)
class BetaEstimate:
    beta: float
    variant: str
    n_obs: int

    def __post_init__(self) -> None:
        if self.variant not in (COVARIANCE, CORRELATION):
            raise DataError(f"unknown beta variant {self.variant!r}")
        if self.n_obs < 2:
            raise DataError(f"beta needs n_obs >= 2, got {self.n_obs}")


@dataclass(frozen=True)
class AbnormalReturn:
    """Difference between the beta-scaled post-split return and the baseline."""

    horizon: int
    normal_return: float
    market_influenced_return: float
    abnormal: float
    baseline: str = FULL_PERIOD


def pct_change_series(values: Sequence[float]) -> list[float]:
    """Period-to-period simple returns; output is one shorter than input."""
    if len(values) < 2:
        raise DataError("need at least 2 values for a return series")
    arr = np.asarray(values, dtype=np.float64)
    if np.any(arr[:-1] == 0.0):
        raise DataError("zero value in series; percent change undefined")
    return (np.diff(arr) / arr[:-1]).tolist()


def variance(xs: Sequence[float]) -> float:
    """Population variance (divide by n); exactly 0 for a constant series."""
    if len(xs) < 2:
        raise DataError("variance needs at least 2 observations")
    arr = np.asarray(xs, dtype=np.float64)
    if float(arr.min()) == float(arr.max()):
        return 0.0
    return float(np.var(arr))


def covariance(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Population covariance (divide by n); symmetric in its arguments."""
    if len(xs) != len(ys):
        raise DataError(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise DataError("covariance needs at least 2 observations")
    a = np.asarray(xs, dtype=np.float64)
    b = np.asarray(ys, dtype=np.float64)
    return float(np.mean((a - a.mean()) * (b - b.mean())))


def beta(
    stock_returns: Sequence[float],
    reference_returns: Sequence[float],
    variant: str = COVARIANCE,
) -> BetaEstimate:
    """Sensitivity of stock returns to the reference series.

    covariance variant:  Cov(reference, stock) / Var(stock)
    correlation variant: Corr(reference, stock) / Var(stock)
    """
    if variant not in (COVARIANCE, CORRELATION):
        raise DataError(f"unknown beta variant {variant!r}")
    if len(stock_returns) != len(reference_returns):
        raise DataError(
            f"length mismatch: {len(stock_returns)} vs {len(reference_returns)}"
        )
    n = len(stock_returns)
    var_stock = variance(stock_returns)
    if var_stock == 0.0:
        raise DataError("stock return variance is zero; beta undefined")
    cov = covariance(reference_returns, stock_returns)
    if variant == COVARIANCE:
        value = cov / var_stock
    else:
        var_ref = variance(reference_returns)
        if var_ref == 0.0:
            raise DataError("reference return variance is zero; correlation undefined")
        corr = cov / float(np.sqrt(var_ref * var_stock))
        value = corr / var_stock
    return BetaEstimate(beta=value, variant=variant, n_obs=n)


def gross_return(
    window: EventWindow,
    start: int,
    end: int,
    price_field: str = ADJ_CLOSE,
    tolerance: int = NEAREST_TOLERANCE,
    min_offset: int | None = None,
    max_offset: int | None = None,
) -> ReturnObservation:
    """Gross return between two offsets using the nearest-bar rule."""
    p_start = price_at(
        window, start, price_field, tolerance, min_offset=min_offset,
        max_offset=max_offset,
    )
    p_end = price_at(
        window, end, price_field, tolerance, min_offset=min_offset,
        max_offset=max_offset,
    )
    return ReturnObservation(
        period_start=start, period_end=end, gross_return=p_end / p_start
    )


def demarcation_price(
    window: EventWindow, tolerance: int = NEAREST_TOLERANCE
) -> float:
    """Mean adjusted close at the midpoint of the 120-day pre-event window."""
    try:
        prices = [
            price_at(window, off, ADJ_CLOSE, tolerance, max_offset=-1)
            for off in DEMARCATION_OFFSETS
        ]
    except DataError as exc:
        raise CoverageError(f"demarcation bars unavailable: {exc}") from None
    return (prices[0] + prices[1]) / 2.0


def paired_returns(
    window: EventWindow, rates: ReferenceRateSeries, lo: int = -PRE_WINDOW_DAYS,
    hi: int = -1,
) -> tuple[list[float], list[float]]:
    """(stock, reference) daily returns over [lo, hi], paired by calendar date.

    Window dates with no reference rate are dropped; stock returns are then
    computed between consecutive matched dates and paired with the rate on
    the return's end date.
    """
    matched = [
        (bar.date, bar.adj_close)
        for _, bar in window.bars_between(lo, hi)
        if rates.rate_on(bar.date) is not None
    ]
    if len(matched) < 3:
        raise CoverageError(
            f"only {len(matched)} window dates match the reference series"
        )
    closes = [price for _, price in matched]
    stock = pct_change_series(closes)
    reference = [rates.rate_on(date) for date, _ in matched[1:]]
    return stock, reference


def beta_for_window(
    window: EventWindow,
    rates: ReferenceRateSeries,
    variant: str = COVARIANCE,
) -> BetaEstimate:
    """Beta over the 120-day pre-event window against the reference series."""
    stock, reference = paired_returns(window, rates)
    return beta(stock, reference, variant=variant)


def abnormal_return(
    window: EventWindow,
    rates: ReferenceRateSeries | None,
    horizon_days: int,
    beta_estimate: BetaEstimate | None = None,
    baseline: str = FULL_PERIOD,
    tolerance: int = NEAREST_TOLERANCE,
) -> AbnormalReturn:
    """Abnormal return at a horizon: post gross return x beta, minus baseline.

    When ``beta_estimate`` is omitted it is estimated from the pre-event
    window against ``rates``. The ``demarcation`` baseline replaces the
    pre-period start price with the virtual demarcation price.
    """
    if horizon_days < 0:
        raise DataError(f"horizon_days ({horizon_days}) must be >= 0")
    if baseline not in (FULL_PERIOD, DEMARCATION):
        raise DataError(f"unknown baseline {baseline!r}")
    if beta_estimate is None:
        if rates is None:
            raise DataError("either rates or beta_estimate must be provided")
        beta_estimate = beta_for_window(window, rates)

    try:
        end_price = price_at(window, -1, ADJ_CLOSE, tolerance, max_offset=-1)
        if baseline == FULL_PERIOD:
            start_price = price_at(
                window, -PRE_WINDOW_DAYS, ADJ_CLOSE, tolerance, max_offset=-1
            )
        else:
            start_price = demarcation_price(window, tolerance)
        normal = end_price / start_price
        post = gross_return(
            window, 0, horizon_days, ADJ_CLOSE, tolerance, min_offset=0
        ).gross_return
    except DataError as exc:
        raise CoverageError(f"insufficient coverage for abnormal return: {exc}") from None

    market_influenced = post * beta_estimate.beta
    return AbnormalReturn(
        horizon=horizon_days,
        normal_return=normal,
        market_influenced_return=market_influenced,
        abnormal=market_influenced - normal,
        baseline=baseline,
    )
