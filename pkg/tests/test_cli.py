import csv
import io
import json

import pytest

from amicable.cli import (
    EXIT_COUNTEREXAMPLE,
    EXIT_OK,
    EXIT_UNRESOLVED,
    EXIT_USAGE,
    main,
)
from amicable.report import ReportDocument

FAST_SCAN = ["--sieve-bound", "20000", "--full-test-max-bits", "4600"]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sigma(capsys):
    code, out, _ = run(capsys, "sigma", "2024")
    assert code == EXIT_OK and out.strip() == "2296"
    code, out, _ = run(capsys, "sigma", "1")
    assert code == EXIT_OK and out.strip() == "0"
    code, out, _ = run(capsys, "sigma", "17296")
    assert code == EXIT_OK and out.strip() == "18416"
    code, _, err = run(capsys, "sigma", "0")
    assert code == EXIT_USAGE


def test_sigma_non_numeric_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sigma", "twelve"])
    assert exc.value.code == EXIT_USAGE
    capsys.readouterr()


def test_verify_pair(capsys):
    code, out, _ = run(capsys, "verify-pair", "220", "284")
    assert code == EXIT_OK and "amicable" in out and "not amicable" not in out
    code, out, _ = run(capsys, "verify-pair", "2024", "2296")
    assert code == EXIT_OK
    assert "not amicable" in out
    assert "2024 is a father of 2296" in out
    code, out, _ = run(capsys, "verify-pair", "10", "10")
    assert code == EXIT_OK and "not amicable" in out


def test_table1(capsys):
    code, out, _ = run(capsys, "table", "1")
    assert code == EXIT_OK
    for cell in ("| 2 | 5 | 11 | 71 | 220 | 284 | Amicable |",
                 "| 3 | 11 | 23 | 287 | 2024 | 2296 | None |",
                 "| 4 | 23 | 47 | 1151 | 17296 | 18416 | Amicable |",
                 "| 7 | 191 | 383 | 73727 | 9363584 | 9437056 | Amicable |"):
        assert cell in out


def test_table2(capsys):
    code, out, _ = run(capsys, "table", "2", "--format", "json")
    assert code == EXIT_OK
    doc = ReportDocument.from_json(out)
    m_column = [row["m_{n+1}"] for row in doc.rows]
    assert m_column == [7, 15, 31, 255]
    met = {row["n"]: row["conditions met"] for row in doc.rows}
    assert met == {2: "T", 3: "F", 4: "T", 7: "F"}


def test_table4(capsys):
    code, out, _ = run(capsys, "table", "4", "--format", "json")
    assert code == EXIT_OK
    doc = ReportDocument.from_json(out)
    assert [(r["n"], r["alpha_n is Prime"], r["beta_n ∧ gamma_n are Prime"])
            for r in doc.rows] == [(2, "T", "T"), (4, "T", "F"), (8, "T", "F"), (16, "T", "F")]


def test_table3_reduced_budget(capsys, tmp_path):
    code, out, _ = run(
        capsys, "table", "3", "--format", "json",
        "--full-test-max-bits", "256", "--sieve-bound", "20000",
    )
    assert code == EXIT_OK
    doc = ReportDocument.from_json(out)
    assert len(doc.rows) == 51
    by_n = {r["n"]: r for r in doc.rows}
    assert by_n[1]["a_n ∧ b_n are Prime"] == "T"
    assert by_n[2]["a_n ∧ b_n are Prime"] == "T"
    assert by_n[4]["a_n ∧ b_n are Prime"] == "T"
    assert all(
        r["a_n ∧ b_n are Prime"] in ("T", "F", "Unresolved") for r in doc.rows
    )
    # unresolved rows are rendered with an explicit marker, never blank
    assert all(r["a_n ∧ b_n are Prime"] for r in doc.rows)


def test_rule_kashi(capsys):
    code, out, _ = run(capsys, "rule", "kashi", "--n", "3", "--format", "json")
    assert code == EXIT_OK
    doc = ReportDocument.from_json(out)
    row = doc.rows[0]
    assert row["pair_first"] == "2024" and row["pair_second"] == "2296"
    assert row["pair_status"] == "NotAmicable"
    assert row["father"] == "T"


def test_rule_thabit_range(capsys):
    code, out, _ = run(capsys, "rule", "thabit", "--range", "2..10", "--format", "json")
    assert code == EXIT_OK
    doc = ReportDocument.from_json(out)
    amicable = [r["n"] for r in doc.rows if r["pair_status"] == "Amicable"]
    assert amicable == [2, 4, 7]


def test_rule_conjecture2(capsys):
    code, out, _ = run(capsys, "rule", "conjecture2", "--n", "2", "--format", "json")
    assert code == EXIT_OK
    doc = ReportDocument.from_json(out)
    row = doc.rows[0]
    assert row["pair_status"] == "Amicable"
    assert row["pair_first"] == "220" and row["pair_second"] == "284"


def test_scan2_exit_zero(capsys):
    code, out, _ = run(capsys, "scan", "2", "--format", "json")
    assert code == EXIT_OK
    doc = ReportDocument.from_json(out)
    assert [r["beta_n ∧ gamma_n are Prime"] for r in doc.rows] == ["T", "F", "F", "F"]


def test_scan1_fast(capsys, tmp_path):
    code, out, err = run(
        capsys, "scan", "1", "--format", "json",
        "--cache", str(tmp_path / "cache.log"), *FAST_SCAN,
    )
    assert code in (EXIT_OK, EXIT_UNRESOLVED)
    doc = ReportDocument.from_json(out)
    assert len(doc.rows) == 51
    assert not any(r["counterexample_candidate"] for r in doc.rows)


def test_scan1_unresolved_exit(capsys, tmp_path):
    # starve the budgets so large rows cannot resolve
    code, out, err = run(
        capsys, "scan", "1", "--format", "json",
        "--sieve-bound", "3", "--full-test-max-bits", "64",
    )
    assert code == EXIT_UNRESOLVED
    assert "unresolved" in err


def test_scan1_missing_catalog(capsys):
    code, _, err = run(capsys, "scan", "1", "--catalog", "does-not-exist.txt")
    assert code == EXIT_USAGE
    assert "error" in err


def test_scan1_byte_identical_and_cache_transparent(capsys, tmp_path):
    cache = str(tmp_path / "cache.log")
    args = ["scan", "1", "--format", "json", "--seed", "5", "--cache", cache, *FAST_SCAN]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)  # warm cache
    assert code1 == code2
    assert out1 == out2
    code3, out3, _ = run(capsys, "scan", "1", "--format", "json", "--seed", "5", *FAST_SCAN)
    assert out3 == out1  # cold, no cache file at all


def test_format_equivalence(capsys):
    code, json_out, _ = run(capsys, "table", "4", "--format", "json")
    code, csv_out, _ = run(capsys, "table", "4", "--format", "csv")
    code, md_out, _ = run(capsys, "table", "4", "--format", "md")
    doc = ReportDocument.from_json(json_out)
    csv_rows = list(csv.DictReader(io.StringIO(csv_out)))
    assert len(csv_rows) == len(doc.rows)
    for json_row, csv_row in zip(doc.rows, csv_rows):
        for key, value in json_row.items():
            rendered = "" if value is None else str(value)
            assert csv_row[key] == rendered
    for row in doc.rows:
        md_line = "| " + " | ".join(
            "" if row[c] is None else str(row[c]) for c in doc.columns
        ) + " |"
        assert md_line in md_out


def test_json_roundtrip(capsys):
    code, out, _ = run(capsys, "table", "2", "--format", "json")
    doc = ReportDocument.from_json(out)
    assert doc.to_json() == out


def test_scan1_counterexample_exit_code(capsys, monkeypatch):
    # no real counterexample exists, so fabricate one to pin the exit contract
    from amicable import search
    from amicable.primality import PrimalityVerdict, Status

    prime = PrimalityVerdict(Status.PROVEN_PRIME, "fake")
    composite = PrimalityVerdict(Status.COMPOSITE, "fake", witness_factor=3)
    record = search.ScanRecord(
        n=99, m_next_prime=prime, a_verdict=prime, b_verdict=prime,
        combined_ab="T", is_counterexample_candidate=True, c_verdict=composite,
    )
    monkeypatch.setattr("amicable.cli.search.scan_conjecture1", lambda *a, **k: [record])
    code, out, err = run(capsys, "scan", "1", "--format", "json")
    assert code == EXIT_COUNTEREXAMPLE
    assert "COUNTEREXAMPLE" in err


def test_rule_counterexample_exit_code(capsys, monkeypatch):
    from amicable import cli, rules
    from amicable.primality import PrimalityVerdict, Status

    prime = PrimalityVerdict(Status.PROVEN_PRIME, "fake")
    report = rules.RuleReport(
        rule_id=rules.RuleId.CONJECTURE1_IBN_SINA,
        index_n=99,
        conditions=(rules.Condition("a", 5, prime),),
        pair=(10, 20),
        pair_status=rules.PairStatus.NOT_AMICABLE,
        sigma_forward=1,
        sigma_backward=1,
    )
    monkeypatch.setitem(cli._RULES, "conjecture1", lambda n, policy: report)
    code, out, err = run(capsys, "rule", "conjecture1", "--n", "99")
    assert code == EXIT_COUNTEREXAMPLE
    assert "COUNTEREXAMPLE" in err


def test_scan_anomaly_aborts_loudly(capsys, monkeypatch):
    from amicable import search

    def explode(*a, **k):
        raise search.ScanAnomalyError("row n=6 resolved both values prime")

    monkeypatch.setattr("amicable.cli.search.scan_conjecture1", explode)
    code, out, err = run(capsys, "scan", "1")
    assert code == EXIT_COUNTEREXAMPLE
    assert "SCAN ANOMALY" in err


def test_policy_precedence(capsys, tmp_path, monkeypatch):
    config = tmp_path / "policy.json"
    config.write_text(json.dumps({"sieve_bound": 111, "seed": 3}))
    monkeypatch.setenv("AMICABLE_SIEVE_BOUND", "222")
    code, out, _ = run(
        capsys, "table", "4", "--format", "json",
        "--config", str(config), "--seed", "9",
    )
    doc = ReportDocument.from_json(out)
    assert doc.policy["sieve_bound"] == 222  # env beats file
    assert doc.policy["seed"] == 9  # flag beats everything
