"""CSV ingestion and serialization for the four input schemas.

All files are UTF-8, comma-separated, header required:

    bars.csv:         ticker,date,open,high,low,close,adj_close,volume
    splits.csv:       ticker,effective_date,ratio
    fundamentals.csv: ticker,fiscal_year,net_profit,shareholders_equity
    rates.csv:        date,rate

Dates are ISO-8601 (YYYY-MM-DD). Parse errors always carry the offending
line number. Parsing then writing any valid file is lossless field-wise.
"""

from __future__ import annotations

import csv
import datetime
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DataError
from .models import FundamentalRecord, ReferenceRateSeries, SplitEvent, TradingBar

BARS_HEADER = ["ticker", "date", "open", "high", "low", "close", "adj_close", "volume"]
SPLITS_HEADER = ["ticker", "effective_date", "ratio"]
FUNDAMENTALS_HEADER = ["ticker", "fiscal_year", "net_profit", "shareholders_equity"]
RATES_HEADER = ["date", "rate"]


def _read_rows(path: str | Path, header: list[str]) -> list[tuple[int, list[str]]]:
    path = Path(path)
    if not path.exists():
        raise DataError(f"input file not found: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            first = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file, expected header {','.join(header)}")
        if [c.strip() for c in first] != header:
            raise DataError(
                f"{path}: header {','.join(first)!r} does not match expected "
                f"{','.join(header)!r}"
            )
        return [(lineno, row) for lineno, row in enumerate(reader, start=2) if row]


def _parse_date(text: str, lineno: int) -> datetime.date:
    try:
        return datetime.date.fromisoformat(text.strip())
    except ValueError:
        raise DataError(f"line {lineno}: bad date {text!r} (expected YYYY-MM-DD)")


def _parse_float(text: str, lineno: int, name: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise DataError(f"line {lineno}: bad {name} {text!r}")


def _parse_int(text: str, lineno: int, name: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise DataError(f"line {lineno}: bad {name} {text!r} (expected integer)")


def parse_bars(path: str | Path) -> list[TradingBar]:
    """Read bars.csv into validated bars sorted by (ticker, date)."""
    bars: list[TradingBar] = []
    seen: set[tuple[str, datetime.date]] = set()
    for lineno, row in _read_rows(path, BARS_HEADER):
        if len(row) != len(BARS_HEADER):
            raise DataError(
                f"line {lineno}: expected {len(BARS_HEADER)} fields, got {len(row)}"
            )
        ticker = row[0].strip()
        if not ticker:
            raise DataError(f"line {lineno}: empty ticker")
        date = _parse_date(row[1], lineno)
        key = (ticker, date)
        if key in seen:
            raise DataError(f"line {lineno}: duplicate bar for {ticker} on {date}")
        seen.add(key)
        try:
            bar = TradingBar(
                ticker=ticker,
                date=date,
                open=_parse_float(row[2], lineno, "open"),
                high=_parse_float(row[3], lineno, "high"),
                low=_parse_float(row[4], lineno, "low"),
                close=_parse_float(row[5], lineno, "close"),
                adj_close=_parse_float(row[6], lineno, "adj_close"),
                volume=_parse_int(row[7], lineno, "volume"),
            )
        except DataError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
        bars.append(bar)
    bars.sort(key=lambda b: (b.ticker, b.date))
    return bars


def parse_splits(path: str | Path) -> list[SplitEvent]:
    """Read splits.csv into events sorted by (ticker, effective_date)."""
    events: list[SplitEvent] = []
    seen: set[tuple[str, datetime.date]] = set()
    for lineno, row in _read_rows(path, SPLITS_HEADER):
        if len(row) != len(SPLITS_HEADER):
            raise DataError(
                f"line {lineno}: expected {len(SPLITS_HEADER)} fields, got {len(row)}"
            )
        ticker = row[0].strip()
        if not ticker:
            raise DataError(f"line {lineno}: empty ticker")
        date = _parse_date(row[1], lineno)
        ratio = _parse_float(row[2], lineno, "ratio")
        if not ratio > 0:
            raise DataError(f"line {lineno}: nonpositive split ratio {row[2]!r}")
        key = (ticker, date)
        if key in seen:
            raise DataError(f"line {lineno}: duplicate split for {ticker} on {date}")
        seen.add(key)
        events.append(SplitEvent(ticker=ticker, effective_date=date, ratio=ratio))
    events.sort(key=lambda e: (e.ticker, e.effective_date))
    return events


def parse_fundamentals(path: str | Path) -> list[FundamentalRecord]:
    """Read fundamentals.csv; one record per (ticker, fiscal_year)."""
    records: list[FundamentalRecord] = []
    seen: set[tuple[str, int]] = set()
    for lineno, row in _read_rows(path, FUNDAMENTALS_HEADER):
        if len(row) != len(FUNDAMENTALS_HEADER):
            raise DataError(
                f"line {lineno}: expected {len(FUNDAMENTALS_HEADER)} fields, "
                f"got {len(row)}"
            )
        ticker = row[0].strip()
        if not ticker:
            raise DataError(f"line {lineno}: empty ticker")
        year = _parse_int(row[1], lineno, "fiscal_year")
        key = (ticker, year)
        if key in seen:
            raise DataError(
                f"line {lineno}: duplicate fundamentals for {ticker} year {year}"
            )
        seen.add(key)
        records.append(
            FundamentalRecord(
                ticker=ticker,
                fiscal_year=year,
                net_profit=_parse_float(row[2], lineno, "net_profit"),
                shareholders_equity=_parse_float(row[3], lineno, "shareholders_equity"),
            )
        )
    records.sort(key=lambda r: (r.ticker, r.fiscal_year))
    return records


def parse_rates(path: str | Path) -> ReferenceRateSeries:
    """Read rates.csv into a strictly date-increasing return series."""
    pairs: list[tuple[datetime.date, float]] = []
    for lineno, row in _read_rows(path, RATES_HEADER):
        if len(row) != len(RATES_HEADER):
            raise DataError(
                f"line {lineno}: expected {len(RATES_HEADER)} fields, got {len(row)}"
            )
        date = _parse_date(row[0], lineno)
        if pairs and date <= pairs[-1][0]:
            raise DataError(
                f"line {lineno}: rate dates must be strictly increasing at {date}"
            )
        pairs.append((date, _parse_float(row[1], lineno, "rate")))
    return ReferenceRateSeries(
        dates=tuple(d for d, _ in pairs), rates=tuple(r for _, r in pairs)
    )


def _write(path: str | Path, header: list[str], rows: Iterable[Sequence[object]]) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_bars(path: str | Path, bars: Sequence[TradingBar]) -> None:
    _write(
        path,
        BARS_HEADER,
        (
            (
                b.ticker,
                b.date.isoformat(),
                repr(b.open),
                repr(b.high),
                repr(b.low),
                repr(b.close),
                repr(b.adj_close),
                b.volume,
            )
            for b in bars
        ),
    )


def write_splits(path: str | Path, events: Sequence[SplitEvent]) -> None:
    _write(
        path,
        SPLITS_HEADER,
        ((e.ticker, e.effective_date.isoformat(), repr(e.ratio)) for e in events),
    )


def write_fundamentals(path: str | Path, records: Sequence[FundamentalRecord]) -> None:
    _write(
        path,
        FUNDAMENTALS_HEADER,
        (
            (r.ticker, r.fiscal_year, repr(r.net_profit), repr(r.shareholders_equity))
            for r in records
        ),
    )


def write_rates(path: str | Path, series: ReferenceRateSeries) -> None:
    _write(
        path,
        RATES_HEADER,
        ((d.isoformat(), repr(r)) for d, r in zip(series.dates, series.rates)),
    )
