"""CLI surface: flags, config file, exit codes."""

import json

import pytest
from click.testing import CliRunner

from splitstudy.cli import build_config, cli, load_config_file, main
from splitstudy.errors import ConfigError


@pytest.fixture
def runner():
    return CliRunner()


def test_synthetic_run_succeeds(tmp_path, runner):
    result = runner.invoke(
        cli, ["--seed", "3", "--out", str(tmp_path), "--emit", "fig1,fig2,table1"]
    )
    assert result.exit_code == 0, result.output
    assert (tmp_path / "report.json").exists()
    assert (tmp_path / "fig1.csv").exists()
    assert not (tmp_path / "fig4.csv").exists()
    assert "analyzed 9 sample(s)" in result.output


def test_missing_inputs_exit_code_one(tmp_path, capsys):
    code = main_with_args(
        ["--bars", str(tmp_path / "none.csv"), "--splits", str(tmp_path / "s.csv")]
    )
    assert code == 1


def test_no_samples_exit_code_two(tmp_path):
    bars = tmp_path / "bars.csv"
    bars.write_text(
        "ticker,date,open,high,low,close,adj_close,volume\n"
        "X,2013-01-02,10,11,9,10,10,100\n"
    )
    splits = tmp_path / "splits.csv"
    splits.write_text("ticker,effective_date,ratio\n")
    code = main_with_args(
        ["--bars", str(bars), "--splits", str(splits), "--out", str(tmp_path)]
    )
    assert code == 2


def test_unknown_selector_exit_code_one(tmp_path):
    code = main_with_args(
        ["--seed", "3", "--out", str(tmp_path), "--emit", "fig99"]
    )
    assert code == 1


def main_with_args(args):
    import sys

    argv = sys.argv
    sys.argv = ["splitstudy"] + args
    try:
        return main()
    finally:
        sys.argv = argv


def test_config_file_with_flag_overrides(tmp_path, runner):
    config_path = tmp_path / "run.json"
    config_path.write_text(
        json.dumps(
            {
                "version": 1,
                "seed": 5,
                "out": str(tmp_path / "a"),
                "hypothesis": "h1",
                "emit": ["fig1"],
            }
        )
    )
    result = runner.invoke(
        cli, ["--config", str(config_path), "--out", str(tmp_path / "b")]
    )
    assert result.exit_code == 0, result.output
    assert (tmp_path / "b" / "fig1.csv").exists()  # flag overrode "out"
    report = json.loads((tmp_path / "b" / "report.json").read_text())
    assert report["params"]["hypothesis"] == "h1"


def test_config_file_validation(tmp_path):
    bad_version = tmp_path / "v.json"
    bad_version.write_text(json.dumps({"version": 9}))
    with pytest.raises(ConfigError, match="version"):
        load_config_file(str(bad_version))

    unknown = tmp_path / "u.json"
    unknown.write_text(json.dumps({"version": 1, "wat": True}))
    with pytest.raises(ConfigError, match="unknown config keys"):
        load_config_file(str(unknown))

    not_json = tmp_path / "n.json"
    not_json.write_text("{nope")
    with pytest.raises(ConfigError, match="JSON"):
        load_config_file(str(not_json))

    with pytest.raises(ConfigError, match="not found"):
        load_config_file(str(tmp_path / "missing.json"))


def test_build_config_emit_parsing():
    config = build_config({}, {"emit": "fig1, fig2"})
    assert config.emit == ("fig1", "fig2")
    config = build_config({"version": 1, "emit": ["table1"]}, {})
    assert config.emit == ("table1",)
    config = build_config({}, {"emit": "all"})
    assert config.emit is None
    with pytest.raises(ConfigError, match="hypothesis"):
        build_config({"hypothesis": "h9"}, {})


def test_timestamp_pinning(tmp_path, runner):
    config_path = tmp_path / "run.json"
    config_path.write_text(
        json.dumps(
            {
                "version": 1,
                "seed": 2,
                "out": str(tmp_path / "o"),
                "timestamp": "2026-08-08T00:00:00Z",
                "emit": ["table1"],
            }
        )
    )
    result = runner.invoke(cli, ["--config", str(config_path)])
    assert result.exit_code == 0, result.output
    report = json.loads((tmp_path / "o" / "report.json").read_text())
    assert report["generated_at"] == "2026-08-08T00:00:00Z"
