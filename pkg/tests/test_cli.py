import csv
import io
import json

import pytest

from resonantmv.cli import SCHEMA, main


def _json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_trails_g2(capsys):
    code, doc = _json(capsys, ["trails", "--series", "G2", "--word", "212121"])
    assert code == 0
    assert doc["schema"] == SCHEMA and doc["command"] == "trails" and doc["ok"]
    assert doc["result"]["counts"] == {"1": 1, "2": 6}


def test_trails_comma_word(capsys):
    code, doc = _json(capsys, ["trails", "--series", "A3", "--word", "3,2,1,2,3,2"])
    assert code == 0
    assert doc["result"]["counts"] == {"1": 4, "2": 1, "3": 2}


def test_tokuyama_g2_exit_zero(capsys):
    code, doc = _json(capsys, ["verify-tokuyama-g2", "--lambda", "1,2", "--variant", "v1"])
    assert code == 0
    assert doc["ok"]


def test_truncated_variant_reports_mismatch(capsys):
    code, doc = _json(capsys, ["verify-tokuyama-g2", "--lambda", "0,1", "--variant", "truncated"])
    assert code == 1
    assert not doc["ok"]


@pytest.mark.parametrize("argv", [
    ["verify-tokuyama-g2", "--lambda", "-1,0"],
    ["verify-tokuyama-g2", "--lambda=-1,0"],
    ["verify-tokuyama-g2", "--lambda", "1,2,3"],
    ["verify-tokuyama-g2", "--lambda", "x"],
    ["trails", "--series", "Q7"],
    ["trails", "--series", "A2", "--word", "112"],
    ["no-such-command"],
    ["mv-eval", "--lambda", "0,0", "--m", "1,2"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    capsys.readouterr()


def test_mv_eval(capsys):
    code, doc = _json(capsys, ["mv-eval", "--lambda", "0,2", "--m", "0,0,2,2,2,0"])
    assert code == 0
    (r,) = doc["result"]
    assert r["coefficient"] == "q^-1 - 2*q^-2 + q^-3"
    assert r["weight"] == [16, 8]


def test_crystal_csv(capsys):
    assert main(["crystal", "--series", "A2", "--lambda", "0,0", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 8
    assert rows[0]["m"] == "0,0,0"


def test_text_format(capsys):
    assert main(["trails", "--series", "G2", "--format", "text"]) == 0
    assert capsys.readouterr().out.startswith("trails: ok")


def test_outdir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("RESONANTMV_OUTDIR", str(tmp_path))
    assert main(["sfunctions", "--series", "G2"]) == 0
    written = json.loads((tmp_path / "sfunctions.json").read_text())
    assert written == json.loads(capsys.readouterr().out)


def test_families_and_vanishing(capsys):
    code, doc = _json(capsys, ["verify-vanishing", "--lambda", "0,0", "--decoration-cap", "3"])
    assert code == 0
    code, doc = _json(capsys, ["families", "--lambda", "0,0", "--decoration-cap", "1"])
    assert code == 0


def test_parallel_output_is_deterministic(capsys):
    argv = ["verify-crystal-axioms", "--grid", "1", "--decoration-cap", "2"]
    code = main(argv)
    serial = capsys.readouterr().out
    assert main(argv + ["--jobs", "2"]) == code
    assert capsys.readouterr().out == serial
    doc = json.loads(serial)
    assert all(not r["failures"] for r in doc["result"])
    # exit 1 iff some relevant family with positive decoration is a complete crystal
    assert code == (0 if doc["ok"] else 1)


def test_type_a(capsys):
    code, doc = _json(capsys, ["verify-tokuyama-typeA", "--rank", "2", "--lambda", "1,0"])
    assert code == 0


def test_padic_commands(capsys):
    code, doc = _json(capsys, ["padic-geomalgo", "--n", "3", "--word", "121", "--samples", "5"])
    assert code == 0
    assert doc["result"]["passed"] == 5
    code, doc = _json(capsys, ["padic-appendix", "--samples", "8"])
    assert code in (0, 1)
    assert doc["result"]["samples"] == 8
