from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from anzb import bounds as bd
from anzb.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, CliConfig, UsageError, build_parser, main


def _run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_help_lists_every_default():
    parser = build_parser()
    sub = parser._subparsers._group_actions[0].choices
    for name, p in sub.items():
        fmt = p._get_formatter()
        for action in p._actions:
            if action.option_strings and action.dest != "help":
                assert "%(default)" in fmt._get_help_string(action), (name, action.dest)
        text = " ".join(p.format_help().split())
        assert "(default: 128)" in text
        assert "(default: 100000000)" in text
        assert "ANZB_ZEROS" in text


def test_module_entry_point_help():
    r = subprocess.run([sys.executable, "-m", "anzb", "bounds", "--help"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "--compare-prior" in r.stdout and "(default: False)" in r.stdout


def test_no_command_is_usage_error(capsys):
    assert _run([], capsys)[0] == EXIT_USAGE


def test_bounds_table(capsys):
    code, out, _ = _run(["bounds", "--t", "1e30"], capsys)
    assert code == EXIT_OK
    assert "thm13        8.45896" in out
    assert "lls_abs" not in out
    code, out, _ = _run(["bounds", "--t", "1e10", "--compare-prior"], capsys)
    assert "lls_abs" in out and "lls_recip" in out


def test_bounds_below_threshold_notes(capsys):
    code, out, _ = _run(["bounds", "--t", "5"], capsys)
    assert code == EXIT_OK
    assert "below threshold" in out


def test_bounds_rejects_heights_at_or_below_e(capsys):
    assert _run(["bounds", "--t", "2"], capsys)[0] == EXIT_USAGE


def test_bounds_json_is_deterministic(capsys):
    _, a, _ = _run(["bounds", "--t", "e^18", "--output", "json", "--compare-prior"], capsys)
    _, b, _ = _run(["bounds", "--t", "e^18", "--output", "json", "--compare-prior"], capsys)
    assert a == b
    doc = json.loads(a)
    assert doc["bounds"]["thm11_upper"] == pytest.approx(5.62407, abs=1e-5)


def test_sweep_rows_and_schema(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = _run(["sweep", "--t-min", "6.6e7", "--t-max", "1e9", "--points", "20", "--out", str(out)], capsys)
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert tuple(rows[0]) == bd.CSV_COLUMNS
    assert len(rows) == 21
    first = out.read_bytes()
    _run(["sweep", "--t-min", "6.6e7", "--t-max", "1e9", "--points", "20", "--out", str(out)], capsys)
    assert out.read_bytes() == first


def test_sweep_with_empirical_column(tmp_path, capsys):
    out = tmp_path / "e.csv"
    code, _, _ = _run(["sweep", "--t-min", "1e5", "--t-max", "1e6", "--points", "3",
                       "--empirical", "re-logderiv", "--out", str(out)], capsys)
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert all(r["emp_re_logderiv"] for r in rows)
    assert all(r["emp_abs_zeta"] == "" for r in rows)


@pytest.mark.parametrize("args", [
    ["sweep", "--t-min", "1e3", "--t-max", "1e4", "--points", "0"],
    ["sweep", "--t-min", "1e4", "--t-max", "1e3"],
    ["sweep", "--t-min", "1e3", "--t-max", "1e4", "--empirical", "bogus"],
    ["explicit-formula", "--delta", "0.4"],
    ["verify", "--precision", "32"],
    ["verify", "--claims", "C99"],
    ["bounds", "--t", "1e20", "--output", "xml"],
])
def test_usage_errors(args, capsys):
    assert _run(args, capsys)[0] == EXIT_USAGE


def test_unwritable_output_is_usage_error(capsys):
    args = ["sweep", "--t-min", "1e3", "--t-max", "1e4", "--points", "2", "--out", "/nonexistent/dir/x.csv"]
    assert _run(args, capsys)[0] == EXIT_USAGE


def test_explicit_formula_without_table_is_data_error(monkeypatch, capsys):
    monkeypatch.delenv("ANZB_ZEROS", raising=False)
    assert _run(["explicit-formula"], capsys)[0] == EXIT_DATA
    assert _run(["explicit-formula", "--zeros", "/nonexistent/z.txt"], capsys)[0] == EXIT_DATA


def test_explicit_formula_with_table(zero_table, capsys):
    code, out, _ = _run(["explicit-formula", "--delta", "0.7", "--t", "50", "--zeros", zero_table.source], capsys)
    assert code == EXIT_OK
    assert out.count("consistent") >= 2


def test_zeros_path_precedence(monkeypatch):
    parser = build_parser()
    monkeypatch.setenv("ANZB_ZEROS", "/env/z.txt")
    assert CliConfig.from_args(parser.parse_args(["explicit-formula"])).zeros_path == "/env/z.txt"
    args = parser.parse_args(["explicit-formula", "--zeros", "/flag/z.txt"])
    assert CliConfig.from_args(args).zeros_path == "/flag/z.txt"
    monkeypatch.delenv("ANZB_ZEROS")
    assert CliConfig.from_args(parser.parse_args(["explicit-formula"])).zeros_path is None


def test_config_validation():
    assert CliConfig().precision_bits == 128
    with pytest.raises(UsageError):
        CliConfig(precision_bits=63)
    with pytest.raises(UsageError):
        CliConfig(output="xml")


def test_verify_single_claim_json(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = _run(["verify", "--claims", "C7", "--output", "json", "--json-out", str(path)], capsys)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc["claims"]) == 1
    assert list(doc["claims"][0])[:4] == ["id", "description", "paper_anchor", "verdict"]
    assert path.read_text() == out
    _run(["verify", "--claims", "C7", "--output", "json", "--json-out", str(path)], capsys)
    assert path.read_text() == out


def test_verify_low_precision_exit_code(capsys):
    code, out, _ = _run(["verify", "--precision", "64", "--max-precision", "64"], capsys)
    assert code in (EXIT_OK, 3)
    assert "0 violated" in out
