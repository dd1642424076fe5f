import subprocess
import sys

import pytest

from dlmq.cli import main

MZI = "QUBITS 1\nX 1\nPHASESHIFT 1 pi/2\nX 1\n"


@pytest.fixture
def mzi_file(tmp_path):
    p = tmp_path / "mzi.txt"
    p.write_text(MZI)
    return p


def test_help(capsys):
    assert main(["--help"]) == 0
    out = capsys.readouterr().out
    for cmd in ("run-circuit", "hadamard", "mzi", "cnot-reversed", "shor", "oracle"):
        assert cmd in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "dlmq", "shor", "--help"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "--window" in r.stdout


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nonsense"],
        ["hadamard", "--p0", "1.5"],
        ["hadamard", "--alpha", "1"],
        ["hadamard", "--events", "10"],
        ["hadamard", "--points", "0"],
        ["shor", "--a", "2"],
        ["mzi", "--sweep", "PHASESHIFT:0:10"],
        ["mzi", "--sweep", "H:0:10:5"],
        ["cnot-reversed", "--discard", "0"],
    ],
)
def test_usage_errors(argv, capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 1
    assert capsys.readouterr().err


def test_bad_seed_env(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("DLMQ_SEED", "abc")
    assert main(["hadamard", "--points", "1", "--events", "100"]) == 1


def test_runtime_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("QUBITS 1\nH 1\nCNOT 1 2\n")
    assert main(["run-circuit", str(bad)]) == 2
    assert "line 3" in capsys.readouterr().err
    assert main(["oracle", str(tmp_path / "missing.txt")]) == 2
    assert main(["mzi", "--events", "100", "--out", str(tmp_path / "no" / "x.csv")]) == 2


def test_hadamard_reruns_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert main(["hadamard", "--p0", "1", "--seed", "7", "--points", "4", "--events", "1000", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_seed_from_environment(tmp_path, monkeypatch):
    args = ["hadamard", "--p0", "0.5", "--points", "3", "--events", "500"]
    monkeypatch.setenv("DLMQ_SEED", "7")
    assert main([*args, "--out", str(tmp_path / "env.csv")]) == 0
    assert main([*args, "--seed", "7", "--out", str(tmp_path / "flag.csv")]) == 0
    assert main([*args, "--seed", "8", "--out", str(tmp_path / "other.csv")]) == 0
    env = (tmp_path / "env.csv").read_bytes()
    assert env == (tmp_path / "flag.csv").read_bytes()
    assert env != (tmp_path / "other.csv").read_bytes()


def test_default_output_name(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(["cnot-reversed", "--events", "200"]) == 0
    assert (tmp_path / "cnot-reversed_0.99_deterministic.csv").exists()
    assert "wrote 4 rows" in capsys.readouterr().out


def test_shor(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert main(["shor", "--a", "11", "--events", "2000", "--out", str(out)]) == 0
    assert "factors (3, 5)" in capsys.readouterr().out
    assert out.read_text().splitlines()[0] == "window_index,q1,q2,q3,oracle_q1,oracle_q2,oracle_q3"


def test_mzi_sweep(tmp_path):
    out = tmp_path / "m.csv"
    assert main(["mzi", "--sweep", "PHASESHIFT:0:180:90", "--events", "200", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 4


def test_oracle(mzi_file, capsys, tmp_path):
    out = tmp_path / "o.csv"
    assert main(["oracle", str(mzi_file), "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "0,0,0.5\n1,1,0.5\n" in text
    assert "qubit,expectation\n1,0.5\n" in text
    assert out.read_text().startswith("state,probability\n")


def test_oracle_bad_input(mzi_file):
    assert main(["oracle", str(mzi_file), "--input", "2"]) == 1


def test_run_circuit_sweep(mzi_file, tmp_path):
    out = tmp_path / "r.csv"
    rc = main(["run-circuit", str(mzi_file), "--sweep", "PHASESHIFT:0:180:180", "--events", "2000", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "point,angle_deg,f0,f1,oracle_f0,oracle_f1"
    assert len(lines) == 3


def test_run_circuit_sweep_missing_gate(mzi_file):
    assert main(["run-circuit", str(mzi_file), "--sweep", "R:0:90:45"]) == 1
