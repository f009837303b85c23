import json
import shutil
import subprocess

import pytest

from qalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dim_en0_n4_expect(capsys):
    code, out, _ = run(capsys, "dim", "En0", "--n", "4", "--deg", "12",
                       "--expect", "(1+t)^4*(1+t^2)^2*(1+t+t^2)^2")
    assert code == 0
    assert "total=576" in out and out.rstrip().endswith("verdict=pass")


def test_dim_bn0_n3_expect(capsys):
    code, out, _ = run(capsys, "dim", "Bn0", "--n", "3", "--deg", "5", "--expect", "1+3t+4t^2+3t^3+t^4")
    assert code == 0


def test_dim_gn_n2(capsys):
    code, out, _ = run(capsys, "dim", "Gn", "--n", "2", "--deg", "3")
    assert code == 0
    dims = [line.split("dim=")[1] for line in out.splitlines() if line.startswith("degree=")]
    assert dims == ["1", "1", "1", "1"]


def test_dim_expect_mismatch_exits_1(capsys):
    code, out, _ = run(capsys, "dim", "Bn0", "--n", "3", "--deg", "5", "--expect", "1+3t+4t^2+3t^3+t^5")
    assert code == 1
    assert "mismatch_degree=4" in out


def test_dim_with_oracle_and_torsion(capsys):
    code, out, _ = run(capsys, "dim", "Bn0", "--n", "3", "--deg", "5", "--oracle", "--torsion", "--primes", "2")
    assert code == 0
    assert out.count("agrees=true") == 6
    assert "discrepancy_prime=2 degree=3" in out


def test_dim_from_file(tmp_path, capsys):
    f = tmp_path / "g3.txt"
    f.write_text("name: mine\nn: 3\nring: Q\n[1,2]^2\n[1,3]^2\n[2,3]^2\n")
    code, out, _ = run(capsys, "dim", "--file", str(f), "--deg", "2")
    assert code == 0
    assert "degree=2 dim=6" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "dunkl-commute", "--preset", "Gn", "--n", "5", "--deg", "4"],
        ["verify", "hecke-limit", "--n", "5"],
        ["verify", "dk-commute-garside", "--n", "5"],
    ],
)
def test_verify_examples(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.rstrip().endswith("verdict=pass")


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0
    assert "check=fn-zero" in out and "check=hecke-limit" in out


def test_verify_failing_check_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "fourteen-term")
    assert code == 1
    assert "nonzero-with-witness" in out


@pytest.mark.parametrize(
    "preset, n, expr, want",
    [
        ("En0", "3", "[1,3]*[2,3]*[1,3] + [2,3]*[1,3]*[2,3]", "0"),
        ("Gn", "3", "[1,2]*[2,3]", "[2,3]*[1,3] + [1,3]*[1,2]"),
        ("Gn", "3", "0", "0"),
    ],
)
def test_reduce_examples(capsys, preset, n, expr, want):
    code, out, _ = run(capsys, "reduce", preset, "--n", n, "--expr", expr, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["records"][0]["normal_form"] == want


def test_reduce_emits_replayable_log(capsys):
    code, out, _ = run(capsys, "reduce", "Gn", "--n", "3", "--expr", "[1,2]*[2,3]", "--emit-log")
    assert code == 0
    assert "step=" in out and "replay=ok" in out


def test_op_check(capsys):
    code, out, _ = run(capsys, "op-check", "T(1)*T(1)", "(t-1)*T(1)+t", "--n", "3", "--deg", "4")
    assert code == 0
    code, out, _ = run(capsys, "op-check", "T(1)", "T(2)", "--n", "3", "--deg", "1")
    assert code == 1 and "witness=x1" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["dim", "Nope", "--n", "3"],
        ["dim", "Gn", "--n", "3", "--deg", "-1"],
        ["reduce", "Gn", "--n", "3", "--expr", "[2,1]"],
        ["verify", "no-such-check"],
        ["dim", "Gn", "--n", "3", "--threads", "0"],
    ],
)
def test_usage_errors_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3
    assert err


def test_guard_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("QALG_GUARD_TERMS", "5")
    code, out, _ = run(capsys, "reduce", "Gn", "--n", "4", "--expr", "([1,2]+[1,3]+[2,3]+[1,4])^4")
    assert code == 2 and "verdict=guard" in out


def test_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        code, _, _ = run(capsys, "dim", "Bn0", "--n", "4", "--deg", "6", "--output", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.skipif(shutil.which("qalg") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["qalg", "dim", "Gn", "--n", "2", "--deg", "1"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "verdict=pass" in res.stdout
