from __future__ import annotations

import json
import pathlib
import re

import pytest

from specbound import __version__
from specbound.cmdline import main as specbound_main
from specbound.report import CSV_COLUMNS


def _code(sysexit: SystemExit | int) -> str | int | None:
    if isinstance(sysexit, int):
        return sysexit
    return sysexit.code


def _run(argv: list[str]) -> str | int | None:
    try:
        specbound_main(argv=argv)
    except SystemExit as e:
        return _code(e)
    return 0


def test_verify_with_no_trials_writes_header_only(
    capsys: pytest.CaptureFixture[str],
) -> None:
    assert _run(["verify", "--trials", "0"]) == 0
    out, _ = capsys.readouterr()
    assert out == ",".join(CSV_COLUMNS) + "\n"


def test_verify_small_run_passes(capsys: pytest.CaptureFixture[str]) -> None:
    assert _run(["verify", "--trials", "1", "--dims", "2..3", "--seed", "5"]) == 0
    out, _ = capsys.readouterr()
    lines = out.splitlines()
    assert len(lines) > 1
    assert all(line.endswith(",PASS") for line in lines[1:])
    assert {line.split(",")[2] for line in lines[1:]} == {"2", "3"}


def test_verify_injected_violation_exits_1(capsys: pytest.CaptureFixture[str]) -> None:
    assert _run(["verify", "--trials", "1", "--dims", "2", "--inject-violation"]) == 1
    out, _ = capsys.readouterr()
    assert ",FAIL\n" in out


def test_verify_output_is_independent_of_threads(
    capsys: pytest.CaptureFixture[str],
) -> None:
    argv = ["verify", "--trials", "2", "--dims", "2..4"]
    assert _run(argv + ["--threads", "1"]) == 0
    serial, _ = capsys.readouterr()
    assert _run(argv + ["--threads", "2"]) == 0
    parallel, _ = capsys.readouterr()
    assert serial == parallel


def test_out_dir_receives_table_and_summary(tmp_path: pathlib.Path) -> None:
    out_dir = tmp_path / "results"
    assert _run(["truncation", "--out", str(out_dir), "--format", "json"]) == 0

    table = json.loads((out_dir / "truncation.json").read_text(encoding="utf-8"))
    assert table["rows"]
    assert "summary" not in table
    summary = json.loads(
        (out_dir / "truncation-summary.json").read_text(encoding="utf-8")
    )
    assert summary["command"] == "truncation"
    assert summary["exit_code"] == 0
    assert summary["rows"] == len(table["rows"])


def test_json_to_stdout_includes_summary(capsys: pytest.CaptureFixture[str]) -> None:
    assert _run(["asymptote", "--family", "gf", "--n", "1", "--format", "json"]) == 0
    out, _ = capsys.readouterr()
    document = json.loads(out)
    assert document["summary"]["command"] == "asymptote"
    assert {row["suite"] for row in document["rows"]} == {"asymptote"}


def test_shift_uses_config_file(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
) -> None:
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"epsilon_grid": [1e-2, 1e-3], "n_shift": 3}))
    assert _run(["shift", "--config", str(config)]) == 0
    out, _ = capsys.readouterr()
    rows = out.splitlines()[1:]
    assert {row.split(",")[2] for row in rows} == {"3"}
    assert any(row.startswith("shift,eps=0.001,") for row in rows)


@pytest.mark.parametrize(
    "argv, message",
    [
        (["verify", "--config", "/nonexistent/config.json"], "could not read"),
        (["verify", "--seed", "abc"], "--seed must be an integer"),
        (["verify", "--trials=-1"], "--trials must be >= 0"),
        (["verify", "--dims", "5..2"], "dims"),
        (["verify", "--threads", "0"], "--threads must be >= 1"),
        (["verify", "--format", "xml"], "--format"),
        (["asymptote", "--family", "nope"], "--family must be one of"),
        (["shift", "--n", "1"], "--n must be >= 2"),
        (["asymptote", "--t-window", "5..2"], "lo < hi"),
        (["asymptote", "--t-window", "low..high"], "lo..hi"),
    ],
)
def test_config_errors_exit_2(
    argv: list[str], message: str, capsys: pytest.CaptureFixture[str]
) -> None:
    assert _run(argv) == 2
    _, err = capsys.readouterr()
    assert err.startswith("fatal: ")
    assert message in err
    assert "Traceback" not in err


def test_traceback_option_prints_traceback(capsys: pytest.CaptureFixture[str]) -> None:
    assert _run(["verify", "--traceback", "--seed", "abc"]) == 2
    _, err = capsys.readouterr()
    assert "--traceback on, full traceback follows" in err
    assert re.search(r"ConfigError: --seed must be an integer", err)


def test_unwritable_out_dir(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
) -> None:
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert _run(["truncation", "--out", str(blocker)]) == 2
    _, err = capsys.readouterr()
    assert "could not write results" in err


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    assert _run(["--version"]) in (0, None)
    out, _ = capsys.readouterr()
    assert out.strip() == __version__


def test_help(capsys: pytest.CaptureFixture[str]) -> None:
    assert _run(["--help"]) in (0, None)
    out, _ = capsys.readouterr()
    assert "usage: specbound verify [options]" in out
    assert "--inject-violation" in out


def test_cmdline_prints_usage_error_when_cli_arguments_are_wrong(
    capsys: pytest.CaptureFixture[str],
) -> None:
    assert _run(["--frob"]) == 2
    _, err = capsys.readouterr()
    assert re.search(
        "specbound couldn't understand the command line options it received", err
    )
    assert re.search("^usage: specbound", err, re.MULTILINE)
    assert re.search("specbound --help", err)


def test_asymptote_t_window(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["asymptote", "--family", "gf", "--n", "1", "--t-window=-30..-20"]
    assert _run(argv) == 0
    out, _ = capsys.readouterr()
    assert re.search(r"^asymptote,gf n=1,1,0,exponent_window,.*,PASS$", out, re.MULTILINE)
