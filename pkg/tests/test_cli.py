import json
import subprocess
import sys

import pytest

from hankelcf.cli import run_command


def test_verify_json():
    res = run_command(["verify", "--preset", "conj2", "--param", "r=1", "--param", "s=1",
                       "--nmax", "10", "--format", "json"])
    assert res.code == 0, res.stderr
    report = json.loads(res.stdout)
    assert report["pass"] is True
    assert (report["alpha"], report["beta"]) == ("0", "9")


def test_verify_json_is_byte_identical():
    argv = ["verify", "--preset", "conj3", "--param", "r=1/2", "--param", "s=-1",
            "--format", "json"]
    assert run_command(argv).stdout == run_command(argv).stdout


def test_hankel_geometric():
    res = run_command(["hankel", "--expr", "1/(1-x)", "--nmax", "4"])
    assert res.code == 0
    assert res.stdout.strip() == "1, 1, 0, 0, 0"


def test_unknown_preset():
    res = run_command(["verify", "--preset", "conj9"])
    assert res.code == 2
    assert "unknown preset" in res.stderr


def test_parse_error_exit_code():
    res = run_command(["series", "--expr", "1/(1 - x"])
    assert res.code == 2
    assert "position" in res.stderr


def test_missing_subcommand():
    assert run_command([]).code == 2


def test_degenerate_exit_code():
    res = run_command(["verify", "--preset", "conj2", "--param", "r=-1", "--param", "s=0"])
    assert res.code == 3


def test_failed_check_exit_code():
    res = run_command(["somos-fit", "--values", "1,1,1,1,2,3,7,23,60,314"])
    assert res.code == 1
    assert res.stdout.strip() == "none"


def test_somos_fit():
    res = run_command(["somos-fit", "--values", "1,1,1,1,2,3,7,23,59,314"])
    assert res.stdout.strip() == "alpha=1 beta=1"


def test_series_from_cf():
    res = run_command(["series", "--cf", "1,0,0,0,0,0", "--nmax", "3"])
    assert res.stdout.strip() == "1, 0, 0, 0"


def test_series_with_params():
    res = run_command(["series", "--expr", "1/(1-r*x)", "--param", "r=1/2", "--nmax", "3"])
    assert res.stdout.strip() == "1, 1/2, 1/4, 1/8"


def test_tau_table():
    res = run_command(["tau", "--cf", "1,-1,-2,-1,-1,1", "--steps", "2"])
    lines = res.stdout.strip().splitlines()
    assert lines[0].split("\t") == ["n", "a", "b", "c", "d", "e", "f"]
    assert lines[2].split("\t") == ["1", "3", "-3", "-2", "3", "-1", "1"]


def test_tau_breakdown_at_start():
    res = run_command(["tau", "--cf", "0,1,1,1,1,1"])
    assert res.code == 3


def test_fit_command():
    res = run_command(["fit", "--expr", "1/(1-x)"])
    assert res.stdout.splitlines()[0] == "1, 0, -1, 0, 0, 0"


def test_fit_none():
    res = run_command(["fit", "--expr", "1 + 2*x + 7*x^2 - x^3 + 5*x^5 + 3*x^7 - 4*x^9"])
    assert res.stdout.strip() == "none"


def test_cf_wrong_arity():
    assert run_command(["series", "--cf", "1,2,3"]).code == 2


@pytest.mark.parametrize("fmt", ["csv", "text"])
def test_sweep_formats(fmt):
    res = run_command(["sweep", "--preset", "conj2", "--samples", "2", "--seed", "3",
                       "--nmax", "8", "--format", fmt])
    assert res.code == 0
    if fmt == "csv":
        assert res.stdout.splitlines()[0] == "sample,n,H_n,somos_residual"
    else:
        assert res.stdout.count("PASS") == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hankelcf", "verify", "--preset", "somos",
                           "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
