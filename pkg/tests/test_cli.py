import csv
import io
import json
import subprocess
import sys

import pytest

from degharm.cli import main, parse_coeff_field
from degharm.exact import PolyLambda


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_H_symbolic(capsys):
    code, out, _ = run(capsys, "table", "--seq", "H", "--n", "3")
    assert code == 0
    assert out.splitlines() == ["0, 0", "1, 1", "2, 3/2 − 1/2·λ", "3, 11/6 − λ + 1/6·λ²"]


def test_table_H_at_zero(capsys):
    code, out, _ = run(capsys, "table", "--seq", "H", "--n", "3", "--lambda", "0")
    assert code == 0
    assert out.splitlines() == ["0, 0", "1, 1", "2, 3/2", "3, 11/6"]


def test_table_K(capsys):
    code, out, _ = run(capsys, "table", "--seq", "K", "--n", "2", "--m", "2")
    assert code == 0
    assert out.splitlines()[-1] == "2, 7/4 − 1/4·λ"


def test_table_ascii(capsys):
    _, out, _ = run(capsys, "table", "--seq", "H", "--n", "3", "--ascii")
    assert out.splitlines()[-1] == "3, 11/6 - L + 1/6*L^2"


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--seq", "K", "--n", "3"],
        ["table", "--seq", "bogus", "--n", "3"],
        ["table", "--seq", "H"],
        ["table", "--seq", "H_order", "--n", "3", "--m", "9"],
        ["table", "--seq", "H", "--n", "3", "--lambda", "x/y"],
        ["series", "--gf", "nope", "--terms", "3"],
        ["series", "--gf", "lah", "--terms", "3"],
        ["series", "--gf", "H", "--terms", "0"],
        ["limit", "--seq", "K"],
        ["limit", "--seq", "lah"],
        ["verify", "--only", "nonsense"],
        ["verify", "--max-n", "0"],
        ["verify", "--max-n", "40", "--series-order", "10"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2
    assert "usage" in capsys.readouterr().err


def _rows(out):
    return list(csv.DictReader(io.StringIO(out)))


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--seq", "H", "--n", "8"],
        ["table", "--seq", "K", "--n", "6", "--m", "3"],
        ["table", "--seq", "stirling1_signed", "--n", "5"],
        ["series", "--gf", "K", "--m", "2", "--terms", "7"],
        ["series", "--gf", "derangement", "--terms", "6"],
    ],
)
def test_csv_and_json_round_trip_to_text(capsys, argv):
    _, text, _ = run(capsys, *argv)
    _, csv_out, _ = run(capsys, *argv, "--format", "csv")
    _, json_out, _ = run(capsys, *argv, "--format", "json")
    text_values = [line.split(", ")[-1] for line in text.splitlines()]

    rows = _rows(csv_out)
    assert [parse_coeff_field(r["coeffs"]).render() for r in rows] == text_values
    assert [r["text"] for r in rows] == text_values

    doc = json.loads(json_out)
    assert doc["tool"] == "degharm" and "version" in doc and doc["command"] == argv[0]
    rebuilt = [PolyLambda.from_pairs(r["value"]["coeffs"]).render() for r in doc["rows"]]
    assert rebuilt == text_values
    assert [r["value"]["text"] for r in doc["rows"]] == text_values


def test_series_H(capsys):
    code, out, _ = run(capsys, "series", "--gf", "H", "--terms", "2")
    assert code == 0
    assert out.splitlines() == ["0, 0", "1, 1", "2, 3/2 − 1/2·λ"]


def test_series_lah(capsys):
    _, out, _ = run(capsys, "series", "--gf", "lah", "--k", "2", "--terms", "3")
    assert out.splitlines()[3] == "3, 1"


def test_series_degexp(capsys):
    _, out, _ = run(capsys, "series", "--gf", "degexp", "--x", "1", "--terms", "2")
    assert out.splitlines() == ["0, 1", "1, 1", "2, 1/2 − 1/2·λ"]


def test_series_polylog_negative_m(capsys):
    code, out, _ = run(capsys, "series", "--gf", "polylog", "--m", "-1", "--terms", "2", "--lambda", "0")
    assert code == 0
    assert out.splitlines() == ["0, 0", "1, 1", "2, 2"]


def test_limit_H(capsys):
    code, out, _ = run(capsys, "limit", "--seq", "H", "--n", "5")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 6
    assert all(line.endswith("match") for line in lines)
    assert lines[3] == "3, 11/6, 11/6, match"


def test_limit_H_order(capsys):
    code, out, _ = run(capsys, "limit", "--seq", "H_order", "--n", "4", "--m", "2")
    assert code == 0
    assert out.splitlines()[2] == "2, 5/4, 5/4, match"


@pytest.mark.parametrize("seq", ["deg_derangement", "stirling1_unsigned"])
def test_limit_other_sequences(capsys, seq):
    code, out, _ = run(capsys, "limit", "--seq", seq, "--n", "6", "--format", "json")
    assert code == 0
    assert all(r["match"] for r in json.loads(out)["rows"])


def test_verify_misprint_only(capsys):
    code, out, _ = run(capsys, "verify", "--only", "thm_2_10_as_printed", "--max-n", "4")
    assert code == 0
    assert "XFAIL thm_2_10_as_printed" in out
    assert "n=2: 3 + λ vs 3/2 − 1/2·λ" in out
    assert out.splitlines()[-1] == "OK"


def test_verify_json_small(capsys):
    code, out, _ = run(
        capsys, "verify", "--max-n", "5", "--max-m", "2", "--random-trials", "2", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "verify"
    assert doc["report"]["ok"] is True
    assert "seconds" not in doc["report"]["summary"]["thm_2_1"]


def test_verify_timing_flag(capsys):
    _, out, _ = run(capsys, "verify", "--only", "thm_2_1", "--max-n", "3", "--format", "json", "--timing")
    assert "seconds" in json.loads(out)["report"]["summary"]["thm_2_1"]


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--only", "thm_2_10_as_printed", "--max-n", "3", "--format", "csv")
    assert code == 0
    rows = _rows(out)
    fail = next(r for r in rows if r["cell"] == "n=2")
    assert fail["status"] == "fail" and fail["lhs"] == "3 + λ"


def test_verify_lambda_flag_restricts_samples(capsys):
    _, out, _ = run(capsys, "verify", "--only", "thm_2_1", "--max-n", "3", "--lambda", "5/7", "--format", "json")
    doc = json.loads(out)
    assert doc["params"]["lambda_samples"] == ["5/7"]


def test_verify_exit_1_when_expectation_violated(capsys, monkeypatch):
    from degharm import verify

    bad = verify.Identity(
        "thm_2_1",
        "broken",
        lambda c: [verify.Check(verify.Cell(n=1), PolyLambda([1]), PolyLambda([2]))],
    )
    monkeypatch.setitem(verify.REGISTRY, "thm_2_1", bad)
    code, out, _ = run(capsys, "verify", "--only", "thm_2_1", "--max-n", "2")
    assert code == 1
    assert out.splitlines()[-1] == "FAILED"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "degharm", "table", "--seq", "harmonic", "--n", "3"],
        capture_output=True,
        text=True,
        encoding="utf-8",
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "3, 11/6"
