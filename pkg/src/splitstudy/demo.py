"""Deterministic nine-sample demo universe for synthetic-mode runs.

Nine tickers spanning a wide split-ratio range (1.011 through 4.899),
each given its own volume response and drift so the demo report shows
increases, decreases and flat cases. Volume targets are expressed as the
post/pre percentage the raw tape should show, so the announcement boost
compensates the mechanical x-ratio share-count effect.
"""

from __future__ import annotations

import datetime
import random
from pathlib import Path

from .ingest import write_bars, write_fundamentals, write_rates, write_splits
from .models import (
    FundamentalRecord,
    ReferenceRateSeries,
    SplitEvent,
    TradingBar,
)
from .synthetic import ScenarioSpec, generate_history, reference_rates

N_DAYS = 540
SPLIT_DAY = 270
START_DATE = datetime.date(2013, 1, 1)

# (ticker, split ratio, target raw after/before volume pct, daily drift,
#  post-split drift shift)
DEMO_SAMPLES: tuple[tuple[str, float, float, float, float], ...] = (
    ("S01", 1.25, 112.0, 0.0008, 0.0004),
    ("S02", 1.1, 92.0, -0.0012, -0.0006),
    ("S03", 1.015, 95.0, 0.0004, 0.0002),
    ("S04", 1.068, 110.0, 0.0006, 0.0),
    ("S05", 1.569, 70.0, 0.0010, 0.0005),
    ("S06", 2.0, 135.0, 0.0003, 0.0004),
    ("S07", 1.333, 152.0, 0.0, 0.0),
    ("S08", 1.011, 100.0, 0.0005, 0.0),
    ("S09", 4.899, 77.0, -0.0006, -0.0004),
)


def demo_universe(
    seed: int,
) -> tuple[
    list[TradingBar],
    list[SplitEvent],
    list[FundamentalRecord],
    ReferenceRateSeries,
]:
    """Generate the nine-sample universe plus an independent reference series."""
    bars: list[TradingBar] = []
    events: list[SplitEvent] = []
    fundamentals: list[FundamentalRecord] = []
    for i, (ticker, ratio, target_pct, drift, shift) in enumerate(DEMO_SAMPLES):
        boost = target_pct / 100.0 / ratio
        spec = ScenarioSpec(
            seed=seed * 1_000 + i,
            n_days=N_DAYS,
            initial_price=20.0 + 10.0 * i,
            daily_drift=drift,
            daily_vol=0.015 + 0.002 * (i % 4),
            base_volume=50_000 + 25_000 * i,
            volume_noise=0.2,
            split_day=SPLIT_DAY,
            split_ratio=ratio,
            announcement_volume_boost=boost,
            volume_boost_days=N_DAYS,
            post_split_drift_shift=shift,
            ticker=ticker,
            start_date=START_DATE,
        )
        sample_bars, event = generate_history(spec)
        bars.extend(sample_bars)
        events.append(event)
        fundamentals.extend(_demo_fundamentals(ticker, event, seed, i))

    market_spec = ScenarioSpec(
        seed=seed * 1_000 + 999,
        n_days=N_DAYS,
        initial_price=1000.0,
        daily_drift=0.0002,
        daily_vol=0.01,
        split_day=SPLIT_DAY,
        split_ratio=1.0,
        ticker="MKT",
        start_date=START_DATE,
    )
    market_bars, _ = generate_history(market_spec)
    rates = reference_rates(market_bars)
    return bars, events, fundamentals, rates


def _demo_fundamentals(
    ticker: str, event: SplitEvent, seed: int, i: int
) -> list[FundamentalRecord]:
    rng = random.Random(seed * 1_000_003 + i * 101 + 7)
    split_year = event.effective_date.year
    profit = round(500.0 + 1500.0 * rng.random(), 2)
    records = []
    for year in range(split_year, split_year + 3):
        equity = round(profit / (0.05 + 0.10 * rng.random()), 2)
        records.append(
            FundamentalRecord(
                ticker=ticker,
                fiscal_year=year,
                net_profit=profit,
                shareholders_equity=equity,
            )
        )
        growth = -0.5 + 1.2 * rng.random()
        profit = round(profit * (1.0 + growth), 2) or 0.01
    return records


def write_demo_universe(out_dir: str | Path, seed: int) -> dict[str, Path]:
    """Write the demo universe as the four standard CSV inputs."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    bars, events, fundamentals, rates = demo_universe(seed)
    paths = {
        "bars": out_dir / "bars.csv",
        "splits": out_dir / "splits.csv",
        "fundamentals": out_dir / "fundamentals.csv",
        "rates": out_dir / "rates.csv",
    }
    write_bars(paths["bars"], bars)
    write_splits(paths["splits"], events)
    write_fundamentals(paths["fundamentals"], fundamentals)
    write_rates(paths["rates"], rates)
    return paths
