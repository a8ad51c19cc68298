import json

import pytest

from torsiongrowth.cli import main


def test_mahler_command(capsys):
    assert main(["mahler", "t^2-3t+1"]) == 0
    out = capsys.readouterr().out
    assert "2.618033989" in out


def test_mahler_exactly_one(capsys):
    assert main(["mahler", "t^2-t+1"]) == 0
    assert "exactly 1" in capsys.readouterr().out


def test_mahler_multivariate(capsys):
    assert main(["mahler", "1+x+y", "--grid", "128"]) == 0
    assert "0.32306" in capsys.readouterr().out


def test_mahler_bad_input(capsys):
    assert main(["mahler", "t^^2"]) == 1
    assert "error" in capsys.readouterr().err


def test_knot_command(capsys):
    assert main(["knot", "--alexander", "t^2-3t+1", "--nmax", "4"]) == 0
    out = capsys.readouterr().out
    assert "= 5" in out and "= 16" in out and "= 45" in out


def test_l2_command(capsys):
    assert main(["l2", "sl3", "--w", "0,0,0"]) == 0
    out = capsys.readouterr().out
    assert "√2/π^2" in out and "0.143290" in out
    assert main(["l2", "sl2c", "--w", "0,0"]) == 0
    assert "-1/(6·π)" in capsys.readouterr().out


def test_l2_rejects_non_acyclic_prediction(capsys):
    assert main(["l2", "sl2c", "--w", "2,2", "--vol", "1.0"]) == 1
    assert "error" in capsys.readouterr().err


def test_complex_command(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"dims": [2, 2],
                             "differentials": [[[2, 0], [0, 6]]]}))
    assert main(["complex", str(p)]) == 0
    out = capsys.readouterr().out
    assert "Z/2·Z/6" in out and "ok" in out


def test_complex_bad_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"dims": [1, 2')
    assert main(["complex", str(p)]) == 1
    assert "error" in capsys.readouterr().err


def test_tower_command(tmp_path, capsys):
    p = tmp_path / "t.json"
    p.write_text(json.dumps(
        {"m": 1, "dims": [1, 1],
         "differentials": [[[[{"exp": [0], "coef": 1},
                              {"exp": [1], "coef": -1},
                              {"exp": [2], "coef": -1}]]]]}))
    csv_path = tmp_path / "seq.csv"
    assert main(["tower", str(p), "--nmax", "10",
                 "--csv", str(csv_path)]) == 0
    out = capsys.readouterr().out
    assert "τ²" in out and csv_path.exists()
    header = csv_path.read_text().splitlines()[0]
    assert header.startswith("N,")


def test_tower_plot(tmp_path, capsys):
    p = tmp_path / "t.json"
    p.write_text(json.dumps(
        {"m": 1, "dims": [1, 1],
         "differentials": [[[[{"exp": [0], "coef": 1},
                              {"exp": [1], "coef": -1},
                              {"exp": [2], "coef": -1}]]]]}))
    png = tmp_path / "seq.png"
    assert main(["tower", str(p), "--nmax", "8", "--plot", str(png)]) == 0
    capsys.readouterr()
    assert png.exists() and png.stat().st_size > 0


def test_regularize_demo(capsys):
    assert main(["regularize-demo"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
