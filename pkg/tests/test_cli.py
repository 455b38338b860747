import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from lcdcu.cli import main
from lcdcu.postprocess import read_snapshot


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_run_writes_snapshots_and_log(tmp_path, capsys):
    code, out, err = run(["run", "--case", "stationary_contact", "--scheme", "both", "--nx", "50",
                          "--snapshots", "0.01", "--out", str(tmp_path)], capsys)
    assert code == 0, err
    for scheme in ("old", "new"):
        final = read_snapshot(tmp_path / f"stationary_contact_{scheme}_t0.03.csv")
        assert final.shape == (50,) and np.all(final.column("p") > 0)
        assert (tmp_path / f"stationary_contact_{scheme}_t0.01.csv").exists()
        rows = (tmp_path / f"stationary_contact_{scheme}_log.csv").read_text().splitlines()
        assert rows[0] == "step,t,dt,min_rho,min_p,fallbacks" and rows[-1].startswith("# wall_time_s")
        assert float(rows[-2].split(",")[1]) == 0.03
    assert out.count("steps=") == 2


def test_manifest_and_binary_output(tmp_path, capsys):
    manifest = tmp_path / "m.json"
    manifest.write_text(json.dumps({"case": "explosion", "nx": 16, "tfinal": 0.05, "format": "bin",
                                    "out": str(tmp_path / "o"), "scheme": "old"}))
    code, _, err = run(["run", "--manifest", str(manifest), "--scheme", "new"], capsys)
    assert code == 0, err
    snap = read_snapshot(tmp_path / "o" / "explosion_new_t0.05.bin")
    assert snap.shape == (16, 16)
    np.testing.assert_array_equal(snap.column("rho"), snap.column("rho").T)


def test_custom_problem(tmp_path, capsys):
    manifest = tmp_path / "m.json"
    manifest.write_text(json.dumps({"problem": {"family": "riemann1d", "left": [1, 0, 1], "right": [0.125, 0, 0.1],
                                                "x0": 0.5, "domain": [0, 1], "cells": [40], "t_final": 0.1},
                                    "out": str(tmp_path)}))
    code, out, err = run(["run", "--manifest", str(manifest)], capsys)
    assert code == 0, err
    assert "custom_riemann1d_new" in out


@pytest.mark.parametrize(
    "argv, code",
    [
        (["run", "--case", "nonsense"], 2),
        (["run", "--case", "blast", "--ny", "10"], 2),
        (["run", "--case", "blast", "--cfl", "2"], 2),
        (["run"], 2),
        (["frobnicate"], 2),
        (["convergence", "--grids", "100"], 2),
        (["cesaro", "--levels", "4,6"], 2),
        (["run", "--case", "stationary_contact", "--scheme", "old", "--strict", "--nx", "200"], 3),
    ],
)
def test_exit_codes(argv, code, tmp_path, capsys):
    got, _, err = run(argv + ["--out", str(tmp_path / "o")] if argv[0] in ("run", "cesaro", "convergence") else argv,
                      capsys)
    assert got == code
    assert err.startswith(f"error: {code}: ")
    assert len(err.strip().splitlines()) == 1


def test_bad_manifest(tmp_path, capsys):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"case": "blast", "colour": "red"}))
    assert run(["run", "--manifest", str(m)], capsys)[0] == 2
    assert run(["run", "--manifest", str(tmp_path / "missing.json")], capsys)[0] in (2, 4)


def test_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(["run", "--case", "blast", "--nx", "20", "--tfinal", "0.001", "--out", str(blocker / "x")],
                       capsys)
    assert code == 4 and err.startswith("error: 4: ")


def test_compare_is_deterministic(tmp_path, capsys):
    args = ["compare", "--case", "stationary_contact", "--grids", "50,100", "--tfinal", "0.01"]
    code, out, err = run(args, capsys)
    assert code == 0, err
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["scheme"] for r in rows] == ["old", "old", "new", "new"]
    assert float(rows[1]["l1_density"]) == 0.0
    _, again, _ = run(args, capsys)
    assert [r["l1_density"] for r in csv.DictReader(io.StringIO(again))] == [r["l1_density"] for r in rows]


def test_convergence_table(tmp_path, capsys):
    target = tmp_path / "conv.csv"
    code, _, err = run(["convergence", "--grids", "50,100,200", "--scheme", "new", "--out", str(target)], capsys)
    assert code == 0, err
    rows = list(csv.DictReader(target.open()))
    assert len(rows) == 2 and float(rows[1]["order"]) > 1.7


def test_first_order_convergence_is_first_order(capsys):
    code, out, _ = run(["convergence", "--grids", "100,200,400", "--scheme", "old",
                        "--reconstruction", "first_order"], capsys)
    assert code == 0
    order = float(list(csv.DictReader(io.StringIO(out)))[1]["order"])
    assert 0.8 < order < 1.2


def test_cesaro_two_levels(tmp_path, capsys):
    code, out, err = run(["cesaro", "--levels", "5,6", "--scheme", "old", "--tfinal", "0.05",
                          "--out", str(tmp_path)], capsys)
    assert code == 0, err
    m5 = read_snapshot(tmp_path / "kelvin_helmholtz_old_cesaro_m5.csv")
    m6 = read_snapshot(tmp_path / "kelvin_helmholtz_old_cesaro_m6.csv")
    assert m5.shape == (32, 32) and m6.shape == (64, 64)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lcdcu", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "0.1.0" in res.stdout
