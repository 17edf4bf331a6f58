"""CSV parsing, validation errors and round-trip losslessness."""

import datetime

import pytest
from hypothesis import given, strategies as st

from splitstudy.errors import DataError
from splitstudy.ingest import (
    parse_bars,
    parse_fundamentals,
    parse_rates,
    parse_splits,
    write_bars,
    write_fundamentals,
    write_rates,
    write_splits,
)
from splitstudy.models import FundamentalRecord, ReferenceRateSeries
from splitstudy.synthetic import ScenarioSpec, generate_history

TABLE1_RATIOS = [1.25, 1.1, 1.015, 1.068, 1.569, 2, 1.333, 1.011, 4.899]


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_parse_bars_single_valid_row(tmp_path):
    path = _write(
        tmp_path,
        "bars.csv",
        "ticker,date,open,high,low,close,adj_close,volume\n"
        "X,2013-06-03,10,11,9,10.5,10.5,1000\n",
    )
    (bar,) = parse_bars(path)
    assert bar.ticker == "X"
    assert bar.date == datetime.date(2013, 6, 3)
    assert (bar.open, bar.high, bar.low, bar.close) == (10.0, 11.0, 9.0, 10.5)
    assert bar.volume == 1000


def test_parse_bars_reports_violated_invariant_with_line(tmp_path):
    path = _write(
        tmp_path,
        "bars.csv",
        "ticker,date,open,high,low,close,adj_close,volume\n"
        "X,2013-06-03,9.5,9,10,9.5,9.5,1000\n",
    )
    with pytest.raises(DataError) as exc_info:
        parse_bars(path)
    message = str(exc_info.value)
    assert "line 2" in message
    assert "low" in message


def test_parse_bars_183_consecutive_rows(tmp_path):
    bars, _ = generate_history(
        ScenarioSpec(seed=11, n_days=183, split_day=91)
    )
    path = tmp_path / "bars.csv"
    write_bars(path, bars)
    parsed = parse_bars(path)
    assert len(parsed) == 183
    assert all(a.date < b.date for a, b in zip(parsed, parsed[1:]))


def test_parse_bars_rejects_duplicates_and_bad_rows(tmp_path):
    dup = _write(
        tmp_path,
        "dup.csv",
        "ticker,date,open,high,low,close,adj_close,volume\n"
        "X,2013-06-03,10,11,9,10.5,10.5,1000\n"
        "X,2013-06-03,10,11,9,10.5,10.5,900\n",
    )
    with pytest.raises(DataError, match="duplicate"):
        parse_bars(dup)
    short = _write(
        tmp_path,
        "short.csv",
        "ticker,date,open,high,low,close,adj_close,volume\nX,2013-06-03,10\n",
    )
    with pytest.raises(DataError, match="line 2"):
        parse_bars(short)
    neg = _write(
        tmp_path,
        "neg.csv",
        "ticker,date,open,high,low,close,adj_close,volume\n"
        "X,2013-06-03,10,11,9,10.5,10.5,-4\n",
    )
    with pytest.raises(DataError, match="volume"):
        parse_bars(neg)


def test_parse_bars_header_and_missing_file(tmp_path):
    bad_header = _write(tmp_path, "h.csv", "a,b,c\n")
    with pytest.raises(DataError, match="header"):
        parse_bars(bad_header)
    with pytest.raises(DataError, match="not found"):
        parse_bars(tmp_path / "nope.csv")


def test_parse_splits_table1_ratios(tmp_path):
    rows = "\n".join(
        f"S{i},2014-01-0{1 + i % 9},{r}" for i, r in enumerate(TABLE1_RATIOS, 1)
    )
    path = _write(tmp_path, "splits.csv", "ticker,effective_date,ratio\n" + rows + "\n")
    events = parse_splits(path)
    assert len(events) == 9
    assert sorted(e.ratio for e in events) == sorted(TABLE1_RATIOS)


def test_parse_splits_rejects_nonpositive_ratio(tmp_path):
    path = _write(
        tmp_path, "splits.csv", "ticker,effective_date,ratio\nX,2014-01-02,0\n"
    )
    with pytest.raises(DataError, match="nonpositive"):
        parse_splits(path)


def test_parse_fundamentals_duplicate_year(tmp_path):
    path = _write(
        tmp_path,
        "f.csv",
        "ticker,fiscal_year,net_profit,shareholders_equity\n"
        "X,2013,100,1000\nX,2013,120,1100\n",
    )
    with pytest.raises(DataError, match="duplicate"):
        parse_fundamentals(path)


def test_parse_rates_requires_increasing_dates(tmp_path):
    path = _write(
        tmp_path, "r.csv", "date,rate\n2013-01-02,0.01\n2013-01-02,0.02\n"
    )
    with pytest.raises(DataError, match="increasing"):
        parse_rates(path)


def test_round_trip_bars_lossless(tmp_path):
    bars, event = generate_history(ScenarioSpec(seed=3, n_days=120, split_day=60))
    path = tmp_path / "bars.csv"
    write_bars(path, bars)
    assert parse_bars(path) == bars

    spath = tmp_path / "splits.csv"
    write_splits(spath, [event])
    assert parse_splits(spath) == [event]


def test_round_trip_fundamentals_and_rates(tmp_path):
    records = [
        FundamentalRecord("X", 2013, 123.45, 6789.01),
        FundamentalRecord("X", 2014, -282.94, 6500.0),
    ]
    fpath = tmp_path / "f.csv"
    write_fundamentals(fpath, records)
    assert parse_fundamentals(fpath) == records

    series = ReferenceRateSeries(
        dates=(datetime.date(2013, 1, 2), datetime.date(2013, 1, 3)),
        rates=(0.0123456789, -0.1),
    )
    rpath = tmp_path / "r.csv"
    write_rates(rpath, series)
    assert parse_rates(rpath) == series


@given(
    st.lists(
        st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
        min_size=1,
        max_size=20,
    )
)
def test_round_trip_rate_values_lossless(values):
    import tempfile
    from pathlib import Path

    base = datetime.date(2013, 1, 1)
    series = ReferenceRateSeries(
        dates=tuple(base + datetime.timedelta(days=i) for i in range(len(values))),
        rates=tuple(values),
    )
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "rates.csv"
        write_rates(path, series)
        assert parse_rates(path) == series
