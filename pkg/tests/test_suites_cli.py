import json

import pytest

from abhomotopy.cli import main
from abhomotopy.suites import (
    SuiteConfig,
    coalgebra_suite,
    run_check_algebra,
    run_mutation,
    run_verify_envelope,
)

FAST = dict(max_word_len=2, max_sym_factors=2, max_total_letters=3, probe_gens=2)


def test_coalgebra_suite_passes():
    for record in coalgebra_suite():
        assert record.status == "pass", (record.check, record.witness)


def test_check_algebra_report():
    report = run_check_algebra(SuiteConfig(algebra="poisson-super"))
    assert report.status == "pass"
    assert report.exit_code() == 0
    checks = {r.check for r in report.records}
    assert "bracket-jacobi" in checks and "tensor-cyclic-closure" in checks


def test_verify_envelope_report_is_deterministic():
    cfg = SuiteConfig(algebra="gerstenhaber-toy", suites=("core", "envelope"), **FAST)
    first = run_verify_envelope(cfg).to_json()
    second = run_verify_envelope(cfg).to_json()
    assert first == second
    assert first.endswith("\n")
    doc = json.loads(first)
    assert doc["status"] == "pass"
    assert doc["summary"]["fail"] == 0


def test_verify_envelope_parallel_matches_serial():
    cfg = SuiteConfig(algebra="gerstenhaber-toy", suites=("core", "envelope"), **FAST)
    serial = run_verify_envelope(cfg).to_json()
    parallel = run_verify_envelope(
        SuiteConfig(algebra="gerstenhaber-toy", suites=("core", "envelope"), jobs=4, **FAST)
    ).to_json()
    assert serial == parallel


def test_mutation_detects_each_round():
    cfg = SuiteConfig(algebra="poisson-super", **FAST)
    report = run_mutation(cfg, rounds=3)
    assert report.status == "pass"
    assert all(r.status == "pass" for r in report.records)
    assert all("detected by" in r.witness for r in report.records)


def test_mutation_is_seed_deterministic():
    cfg = SuiteConfig(algebra="poisson-super", seed=5, **FAST)
    assert run_mutation(cfg, rounds=2).to_json() == run_mutation(cfg, rounds=2).to_json()


def test_cli_check_algebra_json(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code = main(
        [
            "check-algebra",
            "--algebra",
            "poisson-super",
            "--format",
            "json",
            "--report",
            str(report_path),
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert doc["status"] == "pass"
    on_disk = report_path.read_text(encoding="utf-8")
    assert on_disk == out
    assert on_disk.endswith("\n")


def test_cli_unknown_algebra_is_usage_error(capsys):
    assert main(["check-algebra", "--algebra", "mystery"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_bad_suites_is_usage_error(capsys):
    code = main(["verify-envelope", "--algebra", "poisson-super", "--suites", "nope"])
    assert code == 2


def test_cli_param_overrides(capsys):
    code = main(
        [
            "check-algebra",
            "--algebra",
            "gerstenhaber-toy",
            "--param",
            "differential=zero",
            "--format",
            "json",
        ]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["config"]["params"]["differential"] == "zero"


def test_cli_file_algebra_and_failure_exit(tmp_path, capsys):
    good = {
        "name": "file-toy",
        "a": 0,
        "b": -1,
        "generators": [{"id": "u", "degree": 0}, {"id": "v", "degree": 1}],
        "differential": [["u", [["v", 1]]]],
    }
    path = tmp_path / "algebra.json"
    path.write_text(json.dumps(good), encoding="utf-8")
    assert main(["check-algebra", "--algebra", str(path)]) == 0
    capsys.readouterr()

    bad = {
        "name": "bad-bracket",
        "a": 0,
        "b": 0,
        "generators": [
            {"id": "u1", "degree": 0},
            {"id": "u2", "degree": 0},
            {"id": "w", "degree": 0},
        ],
        # a symmetric degree-0 bracket violates graded antisymmetry
        "bracket": [["u1", "u2", [["w", 1]]], ["u2", "u1", [["w", 1]]]],
    }
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(bad), encoding="utf-8")
    assert main(["check-algebra", "--algebra", str(bad_path)]) == 1
    out = capsys.readouterr().out
    assert "bracket-antisymmetry" in out and "FAIL" in out


def test_cli_all_skipped_exit_code(tmp_path, capsys):
    stub = {
        "name": "stub",
        "a": 0,
        "b": 0,
        "generators": [{"id": "u", "degree": 2}],
        "max_degree": 2,
    }
    path = tmp_path / "stub.json"
    path.write_text(json.dumps(stub), encoding="utf-8")
    code = main(["check-algebra", "--algebra", str(path)])
    assert code == 3


def test_cli_mutation_exit_zero(capsys):
    code = main(
        [
            "mutation",
            "--algebra",
            "poisson-super",
            "--rounds",
            "2",
            "--seed",
            "3",
            "--max-word-len",
            "2",
            "--max-total-letters",
            "3",
        ]
    )
    assert code == 0
