import json
import subprocess
import sys

import numpy as np
import pytest

from qws import cli
from qws.circuits import random_circuit_with_t, random_clifford_circuit
from qws.dsl import Circuit, format_circuit, parse_circuit
from qws.errors import BackendRefused, SizeLimitExceeded
from qws.weyl import WignerTable
from qws.zmod import Dim

CLIFFORD = "qudits 2 dim 3\nF 0\nC 0 1\nP 1\n"
WITH_T = "qudits 1 dim 3\nF 0\nT 0\n"


@pytest.fixture
def clifford_file(tmp_path):
    p = tmp_path / "bell.qws"
    p.write_text(CLIFFORD)
    return p


def test_stabilizer_wigner_csv(clifford_file, tmp_path, capsys):
    out = tmp_path / "w.csv"
    assert cli.main([str(clifford_file), "--backend", "stabilizer", "--out", str(out)]) == 0
    tbl = WignerTable.from_csv(out.read_text())
    nonzero = tbl.values[np.abs(tbl.values) > 1e-12]
    assert len(nonzero) == 9
    assert np.allclose(nonzero, 1 / 9)
    assert capsys.readouterr().out == ""


def test_backends_emit_identical_csv(clifford_file, capsys):
    texts = []
    for backend in cli.BACKENDS:
        assert cli.main([str(clifford_file), "--backend", backend]) == 0
        texts.append(capsys.readouterr().out)
    assert texts[0] == texts[1] == texts[2]


def test_stabilizer_refuses_t():
    with pytest.raises(BackendRefused, match="hbar"):
        cli.run(cli.RunConfig(backend="stabilizer"), parse_circuit(WITH_T))


def test_refusal_exit_status(tmp_path, capsys):
    p = tmp_path / "t.qws"
    p.write_text(WITH_T)
    assert cli.main([str(p), "--backend", "stabilizer"]) == cli.EXIT_ERROR
    assert "hbar^1" in capsys.readouterr().err


def test_hbar_report():
    c = parse_circuit("qudits 2 dim 3\nF 0\nT 0\nC 0 1\n")
    body = json.loads(cli.run(cli.RunConfig(report="hbar"), c).output)
    assert body["total_terms"] == 9
    assert [g["kind"] for g in body["gates"]] == ["F", "T", "C"]


def test_support_and_gaussian_reports(clifford_file, capsys):
    assert cli.main([str(clifford_file), "--report", "support"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["class"] in ("both", "q-only", "p-only", "neither")
    assert cli.main([str(clifford_file), "--report", "gaussian", "--backend", "stabilizer"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert len(body["Phi"]) == 4 and len(body["r"]) == 4
    assert body["gaussian_form"] is not None


def test_gaussian_report_without_form():
    body = json.loads(cli.run(cli.RunConfig(report="gaussian"), parse_circuit(WITH_T)).output)
    assert body["Phi"] is None and body["gaussian_form"] is None


def test_cap_is_enforced():
    with pytest.raises(SizeLimitExceeded):
        cli.run(cli.RunConfig(cap=80), parse_circuit(CLIFFORD))


def test_parse_error_exit_status(tmp_path, capsys):
    p = tmp_path / "bad.qws"
    p.write_text("qudits 1 dim 4\nF 0\n")
    assert cli.main([str(p)]) == cli.EXIT_ERROR
    assert "line 1" in capsys.readouterr().err


def test_verify_detects_mismatch(monkeypatch):
    c = parse_circuit(CLIFFORD)
    real = cli._simulate

    def skewed(backend, circuit, cap):
        tbl, psi, s = real(backend, circuit, cap)
        if backend == "dense":
            tbl = WignerTable(tbl.values + 1e-6, tbl.dim)
        return tbl, psi, s

    monkeypatch.setattr(cli, "_simulate", skewed)
    res = cli.run(cli.RunConfig(backend="stabilizer", verify=True), c)
    assert res.exit_code == cli.EXIT_MISMATCH


@pytest.mark.parametrize("d", [3, 5])
def test_verify_random_clifford(d, rng):
    for n in (1, 2):
        dim = Dim(d, n)
        for _ in range(25):
            c = Circuit(dim, random_clifford_circuit(dim, int(rng.integers(1, 21)), rng))
            res = cli.run(cli.RunConfig(backend="stabilizer", verify=True), c)
            assert res.exit_code == cli.EXIT_OK, res.message


@pytest.mark.parametrize("d", [3, 5])
def test_verify_random_with_t(d, rng):
    dim = Dim(d, 2)
    for _ in range(10):
        c = Circuit(dim, random_circuit_with_t(dim, 6, int(rng.integers(1, 3)), rng))
        res = cli.run(cli.RunConfig(backend="reflection", verify=True), c)
        assert res.exit_code == cli.EXIT_OK, res.message


def test_console_script_with_thread_cap(tmp_path):
    p = tmp_path / "c.qws"
    p.write_text(format_circuit(parse_circuit(CLIFFORD)))
    proc = subprocess.run(
        [sys.executable, "-m", "qws.cli", str(p), "--report", "hbar"],
        capture_output=True,
        text=True,
        env={"QWS_THREADS": "1", "PATH": ""},
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["total_terms"] == 1
