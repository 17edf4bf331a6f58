"""Fundamentals measures: split-year-indexed net profit, ROE change and
trend-consistency classification.

Indexed profits rescale each fiscal year so the split year equals 100,
preserving sign: a loss year after a profitable split year indexes
negative, never as an absolute value. Index arithmetic runs in decimal
on the inputs' shortest decimal representations so exact-decimal profit
vectors index exactly. Missing years are reported as absent, never
imputed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Sequence

from .errors import DataError
from .models import FundamentalRecord

_HUNDRED = Decimal(100)


@dataclass(frozen=True)
class IndexedProfitRow:
    """Net profit per fiscal year, indexed to split year = 100."""

    ticker: str
    split_year: int
    indexed: dict[int, float]
    total_diff: float

    def __post_init__(self) -> None:
        if self.split_year not in self.indexed:
            raise DataError("indexed row must include the split year")


@dataclass(frozen=True)
class TrendConsistency:
    """Whether price, profit and ROE changes share one direction.

    Zero agrees with either sign, so consistency fails only when two
    inputs have strictly opposite signs.
    """

    price_change_pct: float
    profit_change_pct: float
    roe_change_pct: float
    consistent: bool
    ticker: str = ""


def indexed_net_profit(
    records: Sequence[FundamentalRecord], split_year: int
) -> IndexedProfitRow:
    """Index one ticker's net profits so the split year is exactly 100."""
    if not records:
        raise DataError("no fundamental records given")
    tickers = {r.ticker for r in records}
    if len(tickers) != 1:
        raise DataError(f"records span multiple tickers: {sorted(tickers)}")
    by_year: dict[int, float] = {}
    for record in records:
        if record.fiscal_year in by_year:
            raise DataError(
                f"duplicate fundamentals for {record.ticker} "
                f"year {record.fiscal_year}"
            )
        by_year[record.fiscal_year] = record.net_profit
    if split_year not in by_year:
        raise DataError(f"no fundamentals record for split year {split_year}")
    base = by_year[split_year]
    if base == 0.0:
        raise DataError(f"split-year ({split_year}) net profit is zero")

    base_dec = Decimal(repr(base))
    indexed = {
        year: float(_HUNDRED * Decimal(repr(profit)) / base_dec)
        for year, profit in sorted(by_year.items())
    }
    final_year = max(indexed)
    total_diff = float(Decimal(repr(indexed[final_year])) - _HUNDRED)
    return IndexedProfitRow(
        ticker=records[0].ticker,
        split_year=split_year,
        indexed=indexed,
        total_diff=total_diff,
    )


def roe(record: FundamentalRecord) -> float:
    """Return on equity: net profit / shareholders' equity."""
    if record.shareholders_equity == 0.0:
        raise DataError(
            f"zero shareholders' equity for {record.ticker} "
            f"year {record.fiscal_year}"
        )
    return record.net_profit / record.shareholders_equity


def roe_change(start: FundamentalRecord, end: FundamentalRecord) -> float:
    """ROE change from start to end, in percentage points."""
    return 100.0 * (roe(end) - roe(start))


def classify_consistency(
    price_change_pct: float,
    profit_change_pct: float,
    roe_change_pct: float,
    ticker: str = "",
) -> TrendConsistency:
    """Classify whether the three change measures share one trend direction."""
    changes = (price_change_pct, profit_change_pct, roe_change_pct)
    for value in changes:
        if not math.isfinite(value):
            raise DataError(f"non-finite change value {value}")
    has_positive = any(v > 0 for v in changes)
    has_negative = any(v < 0 for v in changes)
    return TrendConsistency(
        price_change_pct=price_change_pct,
        profit_change_pct=profit_change_pct,
        roe_change_pct=roe_change_pct,
        consistent=not (has_positive and has_negative),
        ticker=ticker,
    )
