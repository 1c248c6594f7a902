import subprocess
import sys

import pytest

from eig3 import EPS
from eig3.cli import parse_config, run


def cli(*args, stdin=""):
    return subprocess.run([sys.executable, "-m", "eig3", *args], input=stdin,
                          capture_output=True, text=True, timeout=300)


def test_eigvals_stdin():
    out = cli("eigvals", stdin="1 0 0 0 2 0 0 0 3")
    assert out.returncode == 0
    vals = [float(x) for x in out.stdout.split()]
    assert len(vals) == 3
    for x, r in zip(vals, (1, 2, 3)):
        assert abs(x - r) <= 10 * EPS * 3


def test_eigvals_file_and_byte_identical(tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("0 5e-15 1\n-1 1 1\n1 5e-15 5e-15\n")
    a, b = cli("eigvals", str(f)), cli("eigvals", str(f))
    assert a.returncode == 0 and a.stdout == b.stdout
    vals = [float(x) for x in a.stdout.split()]
    assert vals == sorted(vals)


def test_eigvals_nonreal_warns():
    out = cli("eigvals", stdin="0 1 0 -1 0 0 0 0 1")
    assert out.returncode == 0
    assert "warning" in out.stderr
    assert len(out.stdout.split()) == 3


def test_eigvals_bad_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("1 2 3"))
    assert run(["eigvals"]) == 2
    assert "9 numbers" in capsys.readouterr().err


@pytest.mark.parametrize("argv, flag", [
    (["bench-invariants", "--gamma", "0.1"], "--gamma"),
    (["bench-invariants", "--delta-min", "1e-4", "--delta-max", "1e-6"], "--delta-min"),
    (["bench-eigvals", "--points", "1"], "--points"),
    (["bench-perf", "--iterations", "10"], "--iterations"),
    (["bench-invariants", "--transform", "u3"], "--transform"),
    (["bench-invariants", "--transform", "u2", "--gamma", "0"], "--gamma"),
])
def test_usage_errors(argv, flag, capsys, tmp_path):
    target = tmp_path / "out.csv"
    assert run(argv + ["--output", str(target)]) == 2
    assert flag in capsys.readouterr().err
    assert not target.exists()


def test_defaults():
    cfg = parse_config(["bench-invariants"])
    assert (cfg.path, cfg.transform, cfg.gamma, cfg.quantity, cfg.points) == \
        ("d1", "u1", 1e-3, "j2", 61)
    cfg = parse_config(["bench-invariants", "--transform", "u2", "--gamma", "1e-2"])
    assert cfg.gamma == 1e-2
    cfg = parse_config(["bench-perf"])
    assert (cfg.path, cfg.transform, cfg.delta, cfg.iterations) == ("d2", "u1", 1e-14, 1_000_000)


def test_bench_invariants_csv(tmp_path):
    target = tmp_path / "j2.csv"
    assert run(["bench-invariants", "--path", "d1", "--transform", "symm", "--quantity", "j2",
                "--delta-min", "1e-12", "--delta-max", "1e-2", "--points", "11",
                "--output", str(target)]) == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "delta,exact,err_stable,err_naive,err_tensor,bound"
    assert len(lines) == 12
    for line in lines[1:]:
        cols = line.split(",")
        assert float(cols[2]) <= 10 * float(cols[5])


def test_bench_eigvals_stdout(capsys):
    assert run(["bench-eigvals", "--delta-min", "1e-8", "--delta-max", "1e-4",
                "--points", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "delta,err_stable,err_naive,err_baseline,bound"
    assert len(lines) == 4


def test_bench_perf_report(capsys):
    assert run(["bench-perf", "--iterations", "100000"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("Method")
    rows = [ln for ln in lines[1:] if "ns" not in ln and "+-" in ln]
    assert len(rows) == 2


def test_runtime_error_exit_code(tmp_path, capsys):
    missing = tmp_path / "nope.txt"
    assert run(["eigvals", str(missing)]) == 1
