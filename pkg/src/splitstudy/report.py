"""Pipeline orchestration and report emission.

``run_pipeline`` ingests the four CSV inputs (or a generated synthetic
universe), runs every per-sample computation the hypothesis selection
asks for, and assembles a deterministic ``AnalysisReport``: identical
inputs and config produce byte-identical JSON, and permuting the split
calendar changes nothing numeric because samples are stable-sorted by
(ticker, effective date).

``emit`` serializes a report to ``report.json`` plus one CSV per selected
figure/table id. Every number in an emitted file comes straight from one
analytics operation; the emitters only format (percentages with 2
decimals, ratios with 6 significant digits).
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .adjust import PRICES_AND_VOLUME, split_adjust
from .errors import ConfigError, CoverageError, DataError, NoSamplesError
from .fundamentals import (
    IndexedProfitRow,
    TrendConsistency,
    classify_consistency,
    indexed_net_profit,
    roe,
    roe_change,
)
from .ingest import parse_bars, parse_fundamentals, parse_rates, parse_splits
from .models import (
    EventWindow,
    FundamentalRecord,
    ReferenceRateSeries,
    SplitEvent,
    TradingBar,
)
from .prices import (
    ADJ_CLOSE,
    CLOSE,
    GROUP_1,
    GROUP_2,
    GROUP_3,
    RAW,
    SPLIT_ADJUSTED,
    GapSeries,
    PeriodAverages,
    ValueFactor,
    gap_series,
    period_averages,
    price_at,
    price_change_pct,
    value_factor,
)
from .returns import (
    CORRELATION,
    COVARIANCE,
    DEMARCATION,
    FULL_PERIOD,
    PRE_WINDOW_DAYS,
    AbnormalReturn,
    BetaEstimate,
    abnormal_return,
    beta_for_window,
)
from .volume import (
    TrendFit,
    VolumeComparison,
    aggregate_volume_share,
    compare_volume,
    volume_trend,
)
from .windows import align_to_event

HYPOTHESES = ("h1", "h2", "h3", "all")
PRICE_BASES = ("adjusted", "raw")
VOLUME_BASES = ("raw", "adjusted")
BETA_VARIANTS = {"cov": COVARIANCE, "corr": CORRELATION}

SHORT_SPAN = 30
GAP_SPAN = 90
POST_CHANGE_MONTHS = (3, 6, 9, 12)
AROUND_SPLIT_MONTHS = (1, 2, 3, 4)
ABNORMAL_MONTHS = (1, 2, 3, 4)
VALUE_FACTOR_MONTHS = (6, 12)


@dataclass(frozen=True)
class RunParams:
    """Per-run analysis knobs, echoed verbatim into the report."""

    hypothesis: str = "all"
    price_basis: str = "adjusted"
    volume_basis: str = "raw"
    beta_variant: str = "cov"
    month_days: int = 21
    min_coverage: float = 0.95

    def __post_init__(self) -> None:
        if self.hypothesis not in HYPOTHESES:
            raise ConfigError(f"hypothesis must be one of {HYPOTHESES}")
        if self.price_basis not in PRICE_BASES:
            raise ConfigError(f"basis must be one of {PRICE_BASES}")
        if self.volume_basis not in VOLUME_BASES:
            raise ConfigError(f"volume_basis must be one of {VOLUME_BASES}")
        if self.beta_variant not in BETA_VARIANTS:
            raise ConfigError(f"beta_variant must be one of {tuple(BETA_VARIANTS)}")
        if self.month_days < 1:
            raise ConfigError("month_days must be >= 1")
        if not 0.0 <= self.min_coverage <= 1.0:
            raise ConfigError("min_coverage must be in [0, 1]")

    def wants(self, hypothesis: str) -> bool:
        return self.hypothesis in ("all", hypothesis)

    @property
    def price_field(self) -> str:
        return ADJ_CLOSE if self.price_basis == "adjusted" else CLOSE

    @property
    def half_year_days(self) -> int:
        return 6 * self.month_days

    @property
    def pre_span(self) -> int:
        return max(PRE_WINDOW_DAYS, 91, GAP_SPAN, self.half_year_days)

    @property
    def post_span(self) -> int:
        return max(91, GAP_SPAN, 12 * self.month_days)


@dataclass(frozen=True)
class RunConfig:
    """Resolved run configuration: input paths plus analysis parameters."""

    bars: str | None = None
    splits: str | None = None
    fundamentals: str | None = None
    rates: str | None = None
    out: str = "out"
    params: RunParams = field(default_factory=RunParams)
    seed: int | None = None
    emit: tuple[str, ...] | None = None
    timestamp: str | None = None


@dataclass
class SampleAnalysis:
    """Every metric computed for one split event."""

    sample_id: str
    event: SplitEvent
    window_coverage: float
    window_span: tuple[int, int]
    notes: list[str] = field(default_factory=list)
    # H1
    volume_comparison: VolumeComparison | None = None
    trend_before: TrendFit | None = None
    trend_after: TrendFit | None = None
    period_avgs: PeriodAverages | None = None
    volume_series: list[tuple[int, int]] | None = None
    price_series: list[tuple[int, float]] | None = None
    # H2
    post_price_changes: dict[int, float] | None = None
    around_price_changes: dict[int, float] | None = None
    value_factors: dict[int, ValueFactor] | None = None
    beta: BetaEstimate | None = None
    abnormal: list[AbnormalReturn] | None = None
    indexed_profit: IndexedProfitRow | None = None
    roe_by_year: dict[int, float] | None = None
    roe_change_pp: float | None = None
    roe_years: tuple[int, int] | None = None
    consistency: TrendConsistency | None = None
    # H3
    gap_90: dict[str, GapSeries] | None = None
    gap_half_year: dict[str, GapSeries] | None = None
    volume_comparison_90: VolumeComparison | None = None
    volume_comparison_half_year: VolumeComparison | None = None


@dataclass
class AnalysisReport:
    config: dict[str, Any]
    inputs: dict[str, Any]
    params: RunParams
    samples: list[SampleAnalysis]
    aggregate: dict[str, Any]
    exclusions: list[dict[str, str]]
    generated_at: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "engine": {"name": "splitstudy", "version": __version__},
            "generated_at": self.generated_at,
            "config": self.config,
            "inputs": self.inputs,
            "params": _params_dict(self.params),
            "samples": [_sample_dict(s, self.params) for s in self.samples],
            "aggregate": self.aggregate,
            "exclusions": self.exclusions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


# ---------------------------------------------------------------------------
# Per-sample analysis
# ---------------------------------------------------------------------------


def _maybe(analysis: SampleAnalysis, label: str, compute: Callable[[], Any]) -> Any:
    """Run one metric; on DataError record a note and leave it absent."""
    try:
        return compute()
    except DataError as exc:
        analysis.notes.append(f"{label}: {exc}")
        return None


def analyze_sample(
    event: SplitEvent,
    window: EventWindow,
    volume_window: EventWindow,
    rates: ReferenceRateSeries | None,
    fundamentals: Sequence[FundamentalRecord],
    params: RunParams,
) -> SampleAnalysis:
    """Compute all requested hypothesis metrics for one event."""
    md = params.month_days
    analysis = SampleAnalysis(
        sample_id=f"{event.ticker}@{event.effective_date.isoformat()}",
        event=event,
        window_coverage=window.coverage,
        window_span=window.span,
    )

    if params.wants("h1"):
        analysis.volume_comparison = _maybe(
            analysis, "volume_comparison",
            lambda: compare_volume(volume_window, SHORT_SPAN),
        )
        analysis.trend_before = _maybe(
            analysis, "trend_before",
            lambda: volume_trend(volume_window, -SHORT_SPAN, -1),
        )
        analysis.trend_after = _maybe(
            analysis, "trend_after",
            lambda: volume_trend(volume_window, 1, SHORT_SPAN),
        )
        analysis.period_avgs = _maybe(
            analysis, "period_averages",
            lambda: period_averages(window, params.price_field),
        )
        analysis.price_series = [
            (off, getattr(bar, params.price_field))
            for off, bar in window.bars_between(-91, 91)
        ]

    if params.wants("h1") or params.wants("h3"):
        analysis.volume_series = [
            (off, bar.volume)
            for off, bar in volume_window.bars_between(-GAP_SPAN, GAP_SPAN)
        ]

    if params.wants("h2"):
        analysis.post_price_changes = {}
        for months in POST_CHANGE_MONTHS:
            pct = _maybe(
                analysis, f"price_change_{months}m",
                lambda m=months: price_change_pct(
                    window, -1, m * md, params.price_field
                ),
            )
            if pct is not None:
                analysis.post_price_changes[months] = pct
        analysis.around_price_changes = {}
        for months in AROUND_SPLIT_MONTHS:
            pre = _maybe(
                analysis, f"price_change_pre_{months}m",
                lambda m=months: price_change_pct(
                    window, -m * md, -1, params.price_field
                ),
            )
            if pre is not None:
                analysis.around_price_changes[-months] = pre
            post = _maybe(
                analysis, f"price_change_post_{months}m",
                lambda m=months: price_change_pct(
                    window, -1, m * md, params.price_field
                ),
            )
            if post is not None:
                analysis.around_price_changes[months] = post

        analysis.value_factors = {}
        for months in VALUE_FACTOR_MONTHS:
            vf = _maybe(
                analysis, f"value_factor_{months}m",
                lambda m=months: value_factor(
                    price_at(window, m * md, CLOSE)
                    / price_at(window, -1, CLOSE, max_offset=-1),
                    event.ratio,
                ),
            )
            if vf is not None:
                analysis.value_factors[months] = vf

        if rates is not None:
            analysis.beta = _maybe(
                analysis, "beta",
                lambda: beta_for_window(
                    window, rates, BETA_VARIANTS[params.beta_variant]
                ),
            )
        else:
            analysis.notes.append("beta: no reference rate series provided")
        if analysis.beta is not None:
            analysis.abnormal = []
            for months in ABNORMAL_MONTHS:
                for baseline in (FULL_PERIOD, DEMARCATION):
                    result = _maybe(
                        analysis, f"abnormal_{months}m_{baseline}",
                        lambda m=months, b=baseline: abnormal_return(
                            window,
                            rates,
                            m * md,
                            beta_estimate=analysis.beta,
                            baseline=b,
                        ),
                    )
                    if result is not None:
                        analysis.abnormal.append(result)

        _analyze_fundamentals(analysis, event, fundamentals)

    if params.wants("h3"):
        analysis.gap_90 = {}
        analysis.gap_half_year = {}
        for basis in (RAW, SPLIT_ADJUSTED):
            series_90 = _maybe(
                analysis, f"gap_90_{basis}",
                lambda b=basis: gap_series(window, -GAP_SPAN, GAP_SPAN, b),
            )
            if series_90 is not None:
                analysis.gap_90[basis] = series_90
            half = params.half_year_days
            series_half = _maybe(
                analysis, f"gap_half_year_{basis}",
                lambda b=basis, h=half: gap_series(window, -h, h, b),
            )
            if series_half is not None:
                analysis.gap_half_year[basis] = series_half
        analysis.volume_comparison_90 = _maybe(
            analysis, "volume_comparison_90",
            lambda: compare_volume(volume_window, GAP_SPAN),
        )
        analysis.volume_comparison_half_year = _maybe(
            analysis, "volume_comparison_half_year",
            lambda: compare_volume(volume_window, params.half_year_days),
        )

    return analysis


def _analyze_fundamentals(
    analysis: SampleAnalysis,
    event: SplitEvent,
    fundamentals: Sequence[FundamentalRecord],
) -> None:
    records = sorted(
        (r for r in fundamentals if r.ticker == event.ticker),
        key=lambda r: r.fiscal_year,
    )
    if not records:
        analysis.notes.append("fundamentals: no records for ticker")
        return
    split_year = event.effective_date.year
    analysis.indexed_profit = _maybe(
        analysis, "indexed_net_profit",
        lambda: indexed_net_profit(records, split_year),
    )
    analysis.roe_by_year = {}
    for record in records:
        value = _maybe(
            analysis, f"roe_{record.fiscal_year}", lambda r=record: roe(r)
        )
        if value is not None:
            analysis.roe_by_year[record.fiscal_year] = value
    by_year = {r.fiscal_year: r for r in records}
    final_year = records[-1].fiscal_year
    if split_year in by_year and final_year != split_year:
        analysis.roe_change_pp = _maybe(
            analysis, "roe_change",
            lambda: roe_change(by_year[split_year], by_year[final_year]),
        )
        if analysis.roe_change_pp is not None:
            analysis.roe_years = (split_year, final_year)

    price_12m = (analysis.post_price_changes or {}).get(12)
    profit_diff = (
        analysis.indexed_profit.total_diff if analysis.indexed_profit else None
    )
    if price_12m is not None and profit_diff is not None and \
            analysis.roe_change_pp is not None:
        analysis.consistency = classify_consistency(
            price_12m, profit_diff, analysis.roe_change_pp, ticker=event.ticker
        )


# ---------------------------------------------------------------------------
# Universe analysis
# ---------------------------------------------------------------------------


def analyze_universe(
    bars: Sequence[TradingBar],
    events: Sequence[SplitEvent],
    fundamentals: Sequence[FundamentalRecord],
    rates: ReferenceRateSeries | None,
    params: RunParams,
) -> tuple[list[SampleAnalysis], list[dict[str, str]]]:
    """Analyze every event; return (samples, exclusions) in stable order."""
    if not events:
        raise NoSamplesError("split calendar is empty")
    if params.volume_basis == "adjusted":
        volume_bars = split_adjust(bars, events, PRICES_AND_VOLUME)
    else:
        volume_bars = list(bars)

    samples: list[SampleAnalysis] = []
    exclusions: list[dict[str, str]] = []
    for event in sorted(events, key=lambda e: (e.ticker, e.effective_date)):
        sample_id = f"{event.ticker}@{event.effective_date.isoformat()}"
        try:
            window = align_to_event(
                bars, event, params.pre_span, params.post_span,
                params.min_coverage,
            )
            volume_window = align_to_event(
                volume_bars, event, params.pre_span, params.post_span,
                params.min_coverage,
            )
        except CoverageError as exc:
            exclusions.append({"sample": sample_id, "reason": str(exc)})
            continue
        samples.append(
            analyze_sample(event, window, volume_window, rates, fundamentals, params)
        )
    if not samples:
        raise NoSamplesError(
            "no analyzable samples: "
            + "; ".join(e["reason"] for e in exclusions[:3])
        )
    return samples, exclusions


def _aggregate(samples: list[SampleAnalysis]) -> dict[str, Any]:
    aggregate: dict[str, Any] = {"n_samples": len(samples)}
    comparisons = [
        s.volume_comparison for s in samples if s.volume_comparison is not None
    ]
    if comparisons:
        before_share, after_share = aggregate_volume_share(comparisons)
        aggregate["volume_share"] = {
            "span": SHORT_SPAN,
            "before_share": before_share,
            "after_share": after_share,
        }
    statuses = [s.consistency for s in samples]
    aggregate["consistency"] = {
        "consistent": sum(1 for c in statuses if c is not None and c.consistent),
        "inconsistent": sum(
            1 for c in statuses if c is not None and not c.consistent
        ),
        "unknown": sum(1 for c in statuses if c is None),
    }
    return aggregate


def _sha256(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def run_pipeline(config: RunConfig) -> AnalysisReport:
    """Ingest inputs per config, analyze every sample, assemble the report."""
    config = _resolve_synthetic(config)
    if config.bars is None or config.splits is None:
        raise ConfigError("bars and splits inputs are required")

    inputs: dict[str, Any] = {}
    paths = {
        "bars": config.bars,
        "splits": config.splits,
        "fundamentals": config.fundamentals,
        "rates": config.rates,
    }
    for name, path in paths.items():
        if path is None:
            inputs[name] = None
            continue
        if not Path(path).exists():
            raise DataError(f"input file not found: {path}")
        inputs[name] = {"path": str(path), "sha256": _sha256(path)}

    bars = parse_bars(config.bars)
    events = parse_splits(config.splits)
    fundamentals = (
        parse_fundamentals(config.fundamentals) if config.fundamentals else []
    )
    rates = parse_rates(config.rates) if config.rates else None

    samples, exclusions = analyze_universe(
        bars, events, fundamentals, rates, config.params
    )
    return AnalysisReport(
        config=_config_dict(config),
        inputs=inputs,
        params=config.params,
        samples=samples,
        aggregate=_aggregate(samples),
        exclusions=exclusions,
        generated_at=config.timestamp,
    )


def _resolve_synthetic(config: RunConfig) -> RunConfig:
    """In synthetic mode, generate a universe under out/inputs and point at it."""
    if config.seed is None:
        return config
    from .demo import write_demo_universe

    inputs_dir = Path(config.out) / "inputs"
    inputs_dir.mkdir(parents=True, exist_ok=True)
    paths = write_demo_universe(inputs_dir, seed=config.seed)
    return replace(
        config,
        bars=str(paths["bars"]),
        splits=str(paths["splits"]),
        fundamentals=str(paths["fundamentals"]),
        rates=str(paths["rates"]),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _params_dict(params: RunParams) -> dict[str, Any]:
    return {
        "hypothesis": params.hypothesis,
        "price_basis": params.price_basis,
        "volume_basis": params.volume_basis,
        "beta_variant": params.beta_variant,
        "month_days": params.month_days,
        "min_coverage": params.min_coverage,
        "window_span": [-params.pre_span, params.post_span],
        "groups": [list(GROUP_1), list(GROUP_2), list(GROUP_3)],
    }


def _config_dict(config: RunConfig) -> dict[str, Any]:
    return {
        "bars": config.bars,
        "splits": config.splits,
        "fundamentals": config.fundamentals,
        "rates": config.rates,
        "out": config.out,
        "seed": config.seed,
        "emit": list(config.emit) if config.emit is not None else None,
        "timestamp": config.timestamp,
    }


def _comparison_dict(c: VolumeComparison | None, span: int, basis: str) -> Any:
    if c is None:
        return None
    return {
        "span": span,
        "ranges": [[-span, -1], [1, span]],
        "basis": basis,
        "before_total": c.before_total,
        "after_total": c.after_total,
        "after_pct_of_before": c.after_pct_of_before,
        "before_coverage": c.before_coverage,
        "after_coverage": c.after_coverage,
    }


def _trend_dict(t: TrendFit | None, lo: int, hi: int, basis: str) -> Any:
    if t is None:
        return None
    return {
        "range": [lo, hi],
        "basis": basis,
        "slope": t.slope,
        "intercept": t.intercept,
        "normalized_slope_pct": t.normalized_slope_pct,
        "n_points": t.n_points,
    }


def _gap_dict(g: GapSeries | None, lo: int, hi: int, with_series: bool) -> Any:
    if g is None:
        return None
    out: dict[str, Any] = {
        "range": [lo, hi],
        "basis": g.basis,
        "mean_gap_before": g.mean_gap_before,
        "mean_gap_after": g.mean_gap_after,
    }
    if with_series:
        out["series"] = [[o, v] for o, v in zip(g.offsets, g.gaps)]
    return out


def _sample_dict(s: SampleAnalysis, params: RunParams) -> dict[str, Any]:
    md = params.month_days
    out: dict[str, Any] = {
        "id": s.sample_id,
        "ticker": s.event.ticker,
        "effective_date": s.event.effective_date.isoformat(),
        "split_ratio": s.event.ratio,
        "degenerate": s.event.is_degenerate,
        "window": {"span": list(s.window_span), "coverage": s.window_coverage},
    }
    if params.wants("h1"):
        out["h1"] = {
            "volume_comparison": _comparison_dict(
                s.volume_comparison, SHORT_SPAN, params.volume_basis
            ),
            "trend_before": _trend_dict(
                s.trend_before, -SHORT_SPAN, -1, params.volume_basis
            ),
            "trend_after": _trend_dict(
                s.trend_after, 1, SHORT_SPAN, params.volume_basis
            ),
            "period_averages": None
            if s.period_avgs is None
            else {
                "groups": [list(GROUP_1), list(GROUP_2), list(GROUP_3)],
                "price_field": s.period_avgs.price_field,
                "g1_avg": s.period_avgs.g1_avg,
                "g2_avg": s.period_avgs.g2_avg,
                "g3_avg": s.period_avgs.g3_avg,
            },
        }
    if params.wants("h2"):
        out["h2"] = {
            "price_changes_post": None
            if s.post_price_changes is None
            else {
                str(m): {
                    "range": [-1, m * md],
                    "price_field": params.price_field,
                    "pct": pct,
                }
                for m, pct in sorted(s.post_price_changes.items())
            },
            "price_changes_around": None
            if s.around_price_changes is None
            else {
                str(m): {
                    "range": [-abs(m) * md, -1] if m < 0 else [-1, m * md],
                    "price_field": params.price_field,
                    "pct": pct,
                }
                for m, pct in sorted(s.around_price_changes.items())
            },
            "value_factors": None
            if s.value_factors is None
            else {
                str(m): {
                    "months": m,
                    "range": [-1, m * md],
                    "price_field": CLOSE,
                    "price_factor": vf.price_factor,
                    "split_ratio": vf.split_ratio,
                    "value_factor": vf.value_factor,
                }
                for m, vf in sorted(s.value_factors.items())
            },
            "beta": None
            if s.beta is None
            else {
                "window": [-PRE_WINDOW_DAYS, -1],
                "variant": s.beta.variant,
                "beta": s.beta.beta,
                "n_obs": s.beta.n_obs,
            },
            "abnormal_returns": None
            if s.abnormal is None
            else [
                {
                    "horizon_days": a.horizon,
                    "months": a.horizon // md,
                    "baseline": a.baseline,
                    "normal_return": a.normal_return,
                    "market_influenced_return": a.market_influenced_return,
                    "abnormal": a.abnormal,
                }
                for a in s.abnormal
            ],
            "indexed_net_profit": None
            if s.indexed_profit is None
            else {
                "split_year": s.indexed_profit.split_year,
                "indexed": {
                    str(y): v for y, v in sorted(s.indexed_profit.indexed.items())
                },
                "total_diff": s.indexed_profit.total_diff,
            },
            "roe": None
            if s.roe_by_year is None
            else {
                "by_year": {str(y): v for y, v in sorted(s.roe_by_year.items())},
                "change_pp": s.roe_change_pp,
                "change_years": list(s.roe_years) if s.roe_years else None,
            },
            "consistency": None
            if s.consistency is None
            else {
                "price_change_pct": s.consistency.price_change_pct,
                "profit_change_pct": s.consistency.profit_change_pct,
                "roe_change_pp": s.consistency.roe_change_pct,
                "consistent": s.consistency.consistent,
            },
        }
    if params.wants("h3"):
        half = params.half_year_days
        out["h3"] = {
            "gap_90": None
            if s.gap_90 is None
            else {
                basis: _gap_dict(g, -GAP_SPAN, GAP_SPAN, with_series=True)
                for basis, g in sorted(s.gap_90.items())
            },
            "gap_half_year": None
            if s.gap_half_year is None
            else {
                basis: _gap_dict(g, -half, half, with_series=False)
                for basis, g in sorted(s.gap_half_year.items())
            },
            "volume_comparison_90": _comparison_dict(
                s.volume_comparison_90, GAP_SPAN, params.volume_basis
            ),
            "volume_comparison_half_year": _comparison_dict(
                s.volume_comparison_half_year, half, params.volume_basis
            ),
        }
    if params.wants("h1") or params.wants("h3"):
        out["volume_series"] = (
            None
            if s.volume_series is None
            else [[o, v] for o, v in s.volume_series]
        )
    if params.wants("h1"):
        out["price_series"] = (
            None
            if s.price_series is None
            else [[o, v] for o, v in s.price_series]
        )
    out["notes"] = s.notes
    return out


# ---------------------------------------------------------------------------
# Figure/table emission
# ---------------------------------------------------------------------------


def _pct(value: float | None) -> str:
    return "" if value is None else f"{value:.2f}"


def _ratio(value: float | None) -> str:
    return "" if value is None else f"{value:.6g}"


def _fig_group(offset: int) -> str:
    if GROUP_1[0] <= offset <= GROUP_1[1]:
        return "g1"
    if GROUP_2[0] <= offset <= GROUP_2[1]:
        return "g2"
    return "g3"


def _rows_table1(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "ticker", "effective_date", "split_ratio"]
    rows = [
        [s.sample_id, s.event.ticker, s.event.effective_date.isoformat(),
         _ratio(s.event.ratio)]
        for s in samples
    ]
    return header, rows


def _rows_fig1(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "before_total", "after_total", "after_pct_of_before"]
    rows = []
    for s in samples:
        c = s.volume_comparison
        if c is None:
            continue
        rows.append(
            [s.sample_id, c.before_total, c.after_total, _pct(c.after_pct_of_before)]
        )
    return header, rows


def _rows_fig2(samples, params) -> tuple[list[str], list[list]]:
    comparisons = [s.volume_comparison for s in samples if s.volume_comparison]
    before_share, after_share = aggregate_volume_share(comparisons)
    return ["before_share", "after_share"], [[_ratio(before_share), _ratio(after_share)]]


def _rows_fig3(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "offset", "volume"]
    rows = []
    for s in samples:
        for offset, volume in s.volume_series or []:
            if -SHORT_SPAN <= offset <= SHORT_SPAN:
                rows.append([s.sample_id, offset, volume])
    return header, rows


def _rows_fig4(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "side", "slope", "intercept", "normalized_slope_pct"]
    rows = []
    for s in samples:
        for side, fit in (("before", s.trend_before), ("after", s.trend_after)):
            if fit is None:
                continue
            rows.append(
                [s.sample_id, side, _ratio(fit.slope), _ratio(fit.intercept),
                 _pct(fit.normalized_slope_pct)]
            )
    return header, rows


def _rows_fig5(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "offset", "group", "price"]
    rows = []
    for s in samples:
        for offset, price in s.price_series or []:
            rows.append([s.sample_id, offset, _fig_group(offset), _ratio(price)])
    return header, rows


def _rows_fig6(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "g1_avg", "g2_avg", "g3_avg"]
    rows = []
    for s in samples:
        p = s.period_avgs
        if p is None:
            continue
        rows.append([s.sample_id, _ratio(p.g1_avg), _ratio(p.g2_avg), _ratio(p.g3_avg)])
    return header, rows


def _rows_fig7(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "months", "price_change_pct"]
    rows = []
    for s in samples:
        for months, pct in sorted((s.post_price_changes or {}).items()):
            rows.append([s.sample_id, months, _pct(pct)])
    return header, rows


def _rows_fig9(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "fiscal_year", "roe", "roe_change_pp"]
    rows = []
    for s in samples:
        for year, value in sorted((s.roe_by_year or {}).items()):
            change = (
                _pct(s.roe_change_pp)
                if s.roe_years and year == s.roe_years[1]
                else ""
            )
            rows.append([s.sample_id, year, _ratio(value), change])
    return header, rows


def _rows_fig10(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "months", "price_change_pct"]
    rows = []
    for s in samples:
        for months, pct in sorted((s.around_price_changes or {}).items()):
            rows.append([s.sample_id, months, _pct(pct)])
    return header, rows


def _rows_abnormal(samples, params, baseline: str) -> tuple[list[str], list[list]]:
    header = [
        "sample", "months", "horizon_days", "normal_return",
        "market_influenced_return", "abnormal_pct",
    ]
    rows = []
    for s in samples:
        for a in s.abnormal or []:
            if a.baseline != baseline:
                continue
            rows.append(
                [
                    s.sample_id,
                    a.horizon // params.month_days,
                    a.horizon,
                    _ratio(a.normal_return),
                    _ratio(a.market_influenced_return),
                    _pct(100.0 * a.abnormal),
                ]
            )
    return header, rows


def _rows_fig13(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "offset", "gap_raw", "gap_split_adjusted"]
    rows = []
    for s in samples:
        raw = (s.gap_90 or {}).get(RAW)
        adj = (s.gap_90 or {}).get(SPLIT_ADJUSTED)
        if raw is None or adj is None:
            continue
        adj_by_offset = dict(zip(adj.offsets, adj.gaps))
        for offset, gap in zip(raw.offsets, raw.gaps):
            rows.append(
                [s.sample_id, offset, _ratio(gap), _ratio(adj_by_offset[offset])]
            )
    return header, rows


def _rows_fig14(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "offset", "volume"]
    rows = []
    for s in samples:
        for offset, volume in s.volume_series or []:
            rows.append([s.sample_id, offset, volume])
    return header, rows


def _rows_fig15(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "basis", "mean_gap_before", "mean_gap_after"]
    rows = []
    for s in samples:
        for basis, g in sorted((s.gap_half_year or {}).items()):
            rows.append(
                [s.sample_id, basis, _ratio(g.mean_gap_before), _ratio(g.mean_gap_after)]
            )
    return header, rows


def _rows_fig16(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "before_total", "after_total", "after_pct_of_before"]
    rows = []
    for s in samples:
        c = s.volume_comparison_half_year
        if c is None:
            continue
        rows.append(
            [s.sample_id, c.before_total, c.after_total, _pct(c.after_pct_of_before)]
        )
    return header, rows


def _rows_table2(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "split_year", "fiscal_year", "indexed_pct", "total_diff"]
    rows = []
    for s in samples:
        row = s.indexed_profit
        if row is None:
            continue
        for year, value in sorted(row.indexed.items()):
            rows.append(
                [s.sample_id, row.split_year, year, _pct(value), _pct(row.total_diff)]
            )
    return header, rows


def _rows_table3(samples, params) -> tuple[list[str], list[list]]:
    header = [
        "sample", "price_change_pct", "profit_change_pct", "roe_change_pp",
        "consistent",
    ]
    rows = []
    for s in samples:
        c = s.consistency
        if c is None:
            continue
        rows.append(
            [
                s.sample_id,
                _pct(c.price_change_pct),
                _pct(c.profit_change_pct),
                _pct(c.roe_change_pct),
                str(c.consistent).lower(),
            ]
        )
    return header, rows


def _rows_betas(samples, params) -> tuple[list[str], list[list]]:
    header = ["sample", "beta", "variant", "n_obs"]
    rows = []
    for s in samples:
        if s.beta is None:
            continue
        rows.append([s.sample_id, _ratio(s.beta.beta), s.beta.variant, s.beta.n_obs])
    return header, rows


SELECTORS: dict[str, tuple[str, Callable]] = {
    "table1": ("h1", _rows_table1),
    "fig1": ("h1", _rows_fig1),
    "fig2": ("h1", _rows_fig2),
    "fig3": ("h1", _rows_fig3),
    "fig4": ("h1", _rows_fig4),
    "fig5": ("h1", _rows_fig5),
    "fig6": ("h1", _rows_fig6),
    "fig7": ("h2", _rows_fig7),
    "fig8": ("h2", _rows_table2),
    "fig9": ("h2", _rows_fig9),
    "fig10": ("h2", _rows_fig10),
    "fig11": ("h2", lambda s, p: _rows_abnormal(s, p, FULL_PERIOD)),
    "fig12": ("h2", lambda s, p: _rows_abnormal(s, p, DEMARCATION)),
    "fig13": ("h3", _rows_fig13),
    "fig14": ("h3", _rows_fig14),
    "fig15": ("h3", _rows_fig15),
    "fig16": ("h3", _rows_fig16),
    "table2": ("h2", _rows_table2),
    "table3": ("h2", _rows_table3),
    "betas": ("h2", _rows_betas),
}


def available_selectors(params: RunParams) -> list[str]:
    return [
        name
        for name, (hypothesis, _) in SELECTORS.items()
        if params.wants(hypothesis) or name == "table1"
    ]


def emit(
    report: AnalysisReport,
    out_dir: str | Path,
    formats: Sequence[str] = ("json", "csv"),
    selectors: Sequence[str] | None = None,
) -> list[Path]:
    """Write report.json and/or one CSV per figure/table selector."""
    for fmt in formats:
        if fmt not in ("json", "csv"):
            raise ConfigError(f"unknown emit format {fmt!r}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if "json" in formats:
        path = out_dir / "report.json"
        path.write_text(report.to_json(), encoding="utf-8")
        written.append(path)

    if "csv" in formats:
        names = list(selectors) if selectors is not None else available_selectors(
            report.params
        )
        for name in names:
            if name not in SELECTORS:
                raise ConfigError(
                    f"unknown selector {name!r}; known: {sorted(SELECTORS)}"
                )
            hypothesis, renderer = SELECTORS[name]
            if not (report.params.wants(hypothesis) or name == "table1"):
                raise ConfigError(
                    f"selector {name!r} needs hypothesis {hypothesis!r} but the "
                    f"run computed {report.params.hypothesis!r}"
                )
            header, rows = renderer(report.samples, report.params)
            path = out_dir / f"{name}.csv"
            with path.open("w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(header)
                writer.writerows(rows)
            written.append(path)
    return written
