"""The verification harness and its command-line interface."""

import json
import subprocess
import sys

import pytest

from chainspec.cli import main
from chainspec.verify import (
    CheckReport,
    SuiteConfig,
    UsageError,
    check_rng,
    run_all,
    run_suite,
    suite_names,
)


def test_suite_names_nonempty_and_sorted():
    names = suite_names()
    assert len(names) >= 20
    assert names == sorted(names)


def test_check_rng_deterministic_and_distinct():
    cfg = SuiteConfig(seed=3)
    a = check_rng(cfg, "s", "c").random()
    b = check_rng(cfg, "s", "c").random()
    c = check_rng(cfg, "s", "other").random()
    assert a == b != c


def test_report_verdict_consistency_enforced():
    with pytest.raises(ValueError):
        CheckReport("s", "c", 10, 1, "pass")
    with pytest.raises(ValueError):
        CheckReport("s", "c", 10, 0, "fail")


def test_unknown_suite_raises_usage_error():
    with pytest.raises(UsageError):
        run_suite("no-such-suite", SuiteConfig(trials=1))
    with pytest.raises(UsageError):
        run_all(SuiteConfig(trials=1), ["no-such-suite"])


def test_run_suite_small():
    reports = run_suite("perm-laws", SuiteConfig(trials=5))
    assert all(r.verdict == "pass" for r in reports)
    assert {r.suite for r in reports} == {"perm-laws"}


def test_cli_list_suites(capsys):
    assert main(["list-suites"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out == suite_names()


def test_cli_exit_codes_and_json(capsys):
    rc = main(["verify", "--suite", "rho-sign", "--trials", "5", "--format", "json"])
    assert rc == 0  # expected-discrepancy does not fail the run
    data = json.loads(capsys.readouterr().out)
    assert any(r["verdict"] == "expected-discrepancy" for r in data)
    for r in data:
        assert list(r)[:5] == ["suite", "check", "trials", "failures", "verdict"]


def test_cli_usage_error_exit_2(capsys):
    assert main(["verify", "--suite", "bogus"]) == 2
    assert main(["verify", "--complex", "/nonexistent/file.json"]) == 2


def test_cli_report_dir(tmp_path, capsys):
    rc = main(["verify", "--suite", "rho-sign", "--trials", "5",
               "--report-dir", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "report.csv").exists()
    assert (tmp_path / "summary.png").stat().st_size > 0
    header = (tmp_path / "report.csv").read_text().splitlines()[0]
    assert header == "suite,check,trials,failures,verdict,witness"


def test_cli_extra_complex(tmp_path, capsys):
    from chainspec.chain import two_term

    path = tmp_path / "m3.json"
    path.write_text(json.dumps(two_term(3).to_json_dict()))
    rc = main(["verify", "--suite", "spectrum-validation", "--trials", "5",
               "--complex", str(path), "--format", "json"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    validates = next(r for r in data if r["check"] == "corpus-validates")
    assert validates["trials"] == 8  # 7 built-in members + R(m3)


def test_cli_seeded_runs_identical():
    cmd = [sys.executable, "-m", "chainspec.cli", "verify", "--seed", "7",
           "--suite", "monoid", "--trials", "20", "--format", "json"]
    out1 = subprocess.run(cmd, capture_output=True, check=True).stdout
    out2 = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert out1 == out2
