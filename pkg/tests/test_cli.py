"""End-to-end runs of the command-line front end."""

from __future__ import annotations

import json
import shutil
from pathlib import Path

import pytest

from ldpckw.alist import parse_alist
from ldpckw.cli import run

DATA = Path(__file__).parent / "data"


@pytest.fixture
def ising(tmp_path):
    dst = tmp_path / "ising3.alist"
    shutil.copy(DATA / "ising3.alist", dst)
    return dst


def test_code_info(ising, capsys):
    assert run(["code", "info", str(ising)]) == 0
    out = capsys.readouterr().out
    assert "rank 2" in out and "k 1" in out and "kT 1" in out


def test_transpose_and_perp(ising, tmp_path):
    out = tmp_path / "t.alist"
    assert run(["code", "transpose", str(ising), "-o", str(out)]) == 0
    assert parse_alist(out.read_text()).H.shape == (3, 3)
    assert run(["code", "perp", str(ising), "-o", str(out)]) == 0
    assert parse_alist(out.read_text()).H.tolist() == [[1, 1, 1]]


def test_extract_then_verify(ising, tmp_path, capsys):
    proc = tmp_path / "p.json"
    for realization in ("defect", "minimal"):
        assert run(["extract", str(ising), "--realization", realization, "-o", str(proc)]) == 0
        assert run(["verify", str(ising), str(proc)]) == 0


def test_verify_json_records(ising, tmp_path, capsys):
    proc = tmp_path / "p.json"
    run(["extract", str(ising), "-o", str(proc)])
    capsys.readouterr()
    assert run(["verify", "--json", str(ising), str(proc)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] and len(doc["relations"]) == 6


def test_verify_fails_on_mutated_process(ising, tmp_path):
    proc = tmp_path / "p.json"
    run(["extract", str(ising), "-o", str(proc)])
    doc = json.loads(proc.read_text())
    doc["gates"] = doc["gates"][1:]
    proc.write_text(json.dumps(doc))
    assert run(["verify", str(ising), str(proc)]) == 1


def test_simulate(ising, tmp_path, capsys):
    proc = tmp_path / "p.json"
    run(["extract", str(ising), "-o", str(proc)])
    capsys.readouterr()
    assert run(["simulate", str(proc), "--input", "plus", "--ancilla", "plus"]) == 0
    out = capsys.readouterr().out
    assert "probability 1" in out and "000 +1.0" in out
    expect = tmp_path / "e.txt"
    expect.write_text("111\n")
    assert run(["simulate", str(proc), "--ancilla", "minus", "--expect", str(expect)]) == 0
    assert run(["simulate", str(proc), "--ancilla", "plus", "--expect", str(expect)]) == 1
    assert run(["simulate", str(proc), "--ancilla", "amp:1,1"]) == 0


def test_products(ising, tmp_path):
    out = tmp_path / "o.alist"
    a = str(ising)
    assert run(["product", "pq", "--q", "2", a, a, a, "-o", str(out)]) == 0
    assert parse_alist(out.read_text()).H.shape == (81, 27)
    assert run(["product", "tensor", a, a, "-o", str(out)]) == 0
    assert parse_alist(out.read_text()).H.shape == (18, 9)
    assert run(["product", "check", a, a, a]) == 2
    proc = tmp_path / "m.json"
    assert run(["extract-product", "check", a, a, "-o", str(proc)]) == 0
    assert run(["verify", a, a, str(proc)]) == 0
    assert run(["verify", a, str(proc)]) == 2


def test_spectrum_and_perturbation(ising, tmp_path, capsys):
    assert run(["spectrum", str(ising), "--J", "1", "--h", "0", "-k", "2"]) == 0
    assert capsys.readouterr().out.split() == ["-3.000000000000", "-3.000000000000"]
    ring = tmp_path / "ring2.alist"
    ring.write_text("11\n11\n")
    assert run(["--dense", "perturbation", "tensor", str(ring), str(ring), "--lambdas", "50,100"]) == 0
    out = capsys.readouterr().out
    assert "fit exponent -1.0" in out


def test_usage_errors(tmp_path):
    assert run(["nonsense"]) == 2
    assert run(["code", "info", str(tmp_path / "missing.alist")]) == 2
    bad = tmp_path / "bad.alist"
    bad.write_text("3 3\n")
    assert run(["code", "info", str(bad)]) == 2
    assert run(["extract"]) == 2
