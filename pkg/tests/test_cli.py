import json

import pytest
from click.testing import CliRunner

from virk.catalog import CHECKS, ParameterError, list_checks, run_check
from virk.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def _record(result):
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


def test_catalog():
    entries = list_checks()
    assert len(entries) == 17
    assert [e["name"] for e in entries][-1] == "all"
    assert all(e["anchor"] for e in entries)


def test_list_json_roundtrip(runner):
    result = runner.invoke(main, ["--list"])
    assert result.exit_code == 0
    parsed = [json.loads(line) for line in result.stdout.splitlines()]
    assert parsed == json.loads(json.dumps(list_checks()))


def test_rho2_eigen(runner):
    result = runner.invoke(main, ["--check", "rho2-eigen", "--param", "nmax=3"])
    assert result.exit_code == 0, result.output
    rec = _record(result)
    assert rec["status"] == "pass"
    first = rec["details"][0]["details"][0]
    assert first["eigenvalues"] == ["1/16 + 3/4*alpha^2", "9/16 + 3/4*alpha^2"]
    assert "[PASS]" in result.stderr


def test_k_bracket(runner):
    result = runner.invoke(main, ["--check", "k-bracket", "--param", "rmax=10"])
    assert result.exit_code == 0


def test_gram(runner):
    result = runner.invoke(main, ["--check", "gram", "--param", "c=1/2", "--param", "h=1/16", "--level", "4"])
    assert result.exit_code == 0
    details = _record(result)["details"][0]
    assert details["rank"] == 2 and details["radical_dimension"] == 3  # Ising sigma: 1,1,1,2,2


def test_failure_exit_code(runner):
    result = runner.invoke(main, ["--check", "psd", "--param", "c=1/2", "--param", "h=1/3", "--level", "3"])
    assert result.exit_code == 1
    rec = _record(result)
    assert rec["status"] == "fail" and rec["counterexample"]


@pytest.mark.parametrize(
    "args",
    [
        ["--check", "nope"],
        ["--check", "psd", "--param", "c=one"],
        ["--check", "psd", "--param", "novalue"],
        ["--check", "psd", "--param", "x=1"],
        ["--check", "k-bracket", "--level", "2"],
        ["--check", "k-bracket", "--format", "xml"],
        [],
    ],
)
def test_usage_errors(runner, args):
    assert runner.invoke(main, args).exit_code == 2


def test_deterministic(runner):
    args = ["--check", "overlap", "--no-timing"]
    a, b = runner.invoke(main, args), runner.invoke(main, args)
    assert a.exit_code == 0 and a.stdout == b.stdout
    assert "timing" not in json.loads(a.stdout)


def test_seed_is_forwarded(runner):
    result = runner.invoke(main, ["--check", "vir-jacobi", "--param", "bound=2", "--param", "samples=5", "--seed", "7"])
    assert result.exit_code == 0
    assert _record(result)["parameters"]["seed"] == 7


def test_text_format(runner):
    result = runner.invoke(main, ["--check", "admissible", "--param", "c=3", "--param", "h=1/5", "--format", "text"])
    assert result.exit_code == 0
    assert result.stdout.startswith("[PASS] admissible")


def test_run_check_api():
    assert run_check("crosscheck-universal", {"degree": "2"}).passed
    with pytest.raises(ParameterError):
        run_check("crosscheck-universal", {"degree": "5"})
    with pytest.raises(ParameterError):
        run_check("k-alpha-relations", {"alpha2": "2"})
    assert run_check("k-alpha-relations", {"alpha2": "0", "range": "2", "level": "3"}).passed
    assert set(CHECKS) >= {"vir-jacobi", "all"}


def test_all_fails_only_on_functional_solver():
    report = run_check("all")
    statuses = {d["check"]: d["status"] for d in report.details}
    assert len(statuses) == 16
    assert report.status == "fail"
    assert [k for k, s in statuses.items() if s != "pass"] == ["functional-solver"]
