"""Price analytics: trajectory grouping, market-value algebra and the
high-low price-gap liquidity proxy.

The 183-day window is grouped as [-91,-31], [-30,+30], [+31,+91]
(61 trading days each). Price levels default to the adjusted close;
the raw close is selectable per run.

Gap analytics exist on two bases. The raw basis is what the tape shows
and mechanically shrinks by 1/ratio across a split; the split_adjusted
basis divides pre-split gaps by the ratio so a genuine liquidity change
can be separated from split arithmetic. Reports carry both.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from .errors import DataError
from .models import EventWindow, TradingBar

GROUP_1 = (-91, -31)
GROUP_2 = (-30, 30)
GROUP_3 = (31, 91)

RAW = "raw"
SPLIT_ADJUSTED = "split_adjusted"

ADJ_CLOSE = "adj_close"
CLOSE = "close"

# Month marks rarely land exactly on trading days; take the nearest bar
# within this many trading days, else fail.
NEAREST_TOLERANCE = 3


@dataclass(frozen=True)
class PeriodAverages:
    """Mean price per offset group over the 183-day event window."""

    g1_avg: float
    g2_avg: float
    g3_avg: float
    price_field: str = ADJ_CLOSE


@dataclass(frozen=True)
class ValueFactor:
    """Market-value ratio V2/V1 implied by a price factor and split ratio.

    Share count scales by the split ratio while per-share price scales by
    the price factor, so the value factor is exactly their product.
    """

    price_factor: float
    split_ratio: float
    value_factor: float


@dataclass(frozen=True)
class GapSeries:
    """Per-offset high-low gaps over a range, with before/after mean summary.

    Day 0 is excluded from both summary means, mirroring the volume
    comparison convention.
    """

    offsets: tuple[int, ...]
    gaps: tuple[float, ...]
    basis: str
    mean_gap_before: float | None
    mean_gap_after: float | None

    def __post_init__(self) -> None:
        for gap in self.gaps:
            if gap < 0:
                raise DataError(f"negative price gap {gap}")


def _price(bar: TradingBar, price_field: str) -> float:
    if price_field == ADJ_CLOSE:
        return bar.adj_close
    if price_field == CLOSE:
        return bar.close
    raise DataError(f"unknown price field {price_field!r}")


def period_averages(
    window: EventWindow, price_field: str = ADJ_CLOSE
) -> PeriodAverages:
    """Arithmetic mean price over the three fixed offset groups."""
    means = []
    for lo, hi in (GROUP_1, GROUP_2, GROUP_3):
        pairs = window.bars_between(lo, hi)
        if not pairs:
            raise DataError(f"no bars in group [{lo}, {hi}]")
        means.append(
            sum(_price(bar, price_field) for _, bar in pairs) / len(pairs)
        )
    return PeriodAverages(
        g1_avg=means[0], g2_avg=means[1], g3_avg=means[2], price_field=price_field
    )


def price_at(
    window: EventWindow,
    offset: int,
    price_field: str = ADJ_CLOSE,
    tolerance: int = NEAREST_TOLERANCE,
    min_offset: int | None = None,
    max_offset: int | None = None,
) -> float:
    """Price at an offset, falling back to the nearest bar within tolerance.

    ``min_offset``/``max_offset`` restrict which bars may substitute, so a
    pre-split endpoint never borrows a post-split bar and vice versa.
    Ties prefer the earlier offset.
    """
    best: tuple[int, int] | None = None  # (distance, offset)
    for candidate in window.offsets:
        if min_offset is not None and candidate < min_offset:
            continue
        if max_offset is not None and candidate > max_offset:
            continue
        distance = abs(candidate - offset)
        if distance > tolerance:
            continue
        if best is None or (distance, candidate) < best:
            best = (distance, candidate)
    if best is None:
        raise DataError(
            f"no bar within {tolerance} trading days of offset {offset}"
        )
    bar = window.bar_at(best[1])
    assert bar is not None
    return _price(bar, price_field)


def price_change_pct(
    window: EventWindow,
    lo: int,
    hi: int,
    price_field: str = ADJ_CLOSE,
    tolerance: int = NEAREST_TOLERANCE,
) -> float:
    """Percent price change from offset lo to offset hi."""
    start = price_at(window, lo, price_field, tolerance)
    end = price_at(window, hi, price_field, tolerance)
    return 100.0 * (end - start) / start


def value_factor(price_factor: float, split_ratio: float) -> ValueFactor:
    """Market-value factor V2/V1 = price_factor x split_ratio.

    Computed in decimal arithmetic on the operands' shortest decimal
    representations, so printed-decimal inputs multiply exactly
    (0.52 x 1.1 is 0.572, not 0.5720000000000001).
    """
    if not price_factor > 0:
        raise DataError(f"price factor ({price_factor}) must be > 0")
    if not split_ratio > 0:
        raise DataError(f"split ratio ({split_ratio}) must be > 0")
    product = Decimal(repr(price_factor)) * Decimal(repr(split_ratio))
    return ValueFactor(
        price_factor=price_factor,
        split_ratio=split_ratio,
        value_factor=float(product),
    )


def gap_series(
    window: EventWindow, lo: int, hi: int, basis: str = RAW
) -> GapSeries:
    """Per-offset high-low gap over [lo, hi] on the chosen basis."""
    if basis not in (RAW, SPLIT_ADJUSTED):
        raise DataError(f"unknown gap basis {basis!r}")
    pairs = window.bars_between(lo, hi)
    if not pairs:
        raise DataError(f"no bars in range [{lo}, {hi}]")
    ratio = window.event.ratio
    offsets = []
    gaps = []
    for offset, bar in pairs:
        gap = bar.high - bar.low
        if basis == SPLIT_ADJUSTED and bar.date < window.event.effective_date:
            gap /= ratio
        offsets.append(offset)
        gaps.append(gap)
    before = [g for o, g in zip(offsets, gaps) if o < 0]
    after = [g for o, g in zip(offsets, gaps) if o > 0]
    return GapSeries(
        offsets=tuple(offsets),
        gaps=tuple(gaps),
        basis=basis,
        mean_gap_before=sum(before) / len(before) if before else None,
        mean_gap_after=sum(after) / len(after) if after else None,
    )
