from amicable.cli import main
from amicable.primality import PrimalityVerdict, Status
from amicable.report import ReportDocument, describe_verdict, format_value


def test_format_value_small_numbers_stay_decimal():
    assert format_value(71) == "71"
    assert format_value(9437056) == "9437056"


def test_format_value_huge_numbers_become_descriptors():
    v = 3 * 2**300 - 1  # 91 digits
    assert format_value(v, "3*2^300-1") == "3*2^300-1 (91 digits)"
    assert format_value(v, "3*2^300-1", full=True) == str(v)
    # digit counts stay exact even when estimated from the bit length
    w = 3 * 2**4421 - 1
    assert format_value(w, "a(4422)").endswith(f"({len(str(w))} digits)")


def test_describe_verdict():
    v = PrimalityVerdict(Status.COMPOSITE, "sieve", witness_factor=5)
    assert describe_verdict(v) == "Composite[sieve] witness=5"
    v = PrimalityVerdict(Status.PROVEN_PRIME, "llr(P=3)")
    assert describe_verdict(v) == "ProvenPrime[llr(P=3)]"


def test_document_renders_all_formats():
    doc = ReportDocument(
        title="t", command="c", policy={"seed": 0},
        columns=["x", "y"], rows=[{"x": 1, "y": None}, {"x": 2, "y": "a,b"}],
    )
    md = doc.to_markdown()
    assert "| x | y |" in md and "| 1 |  |" in md
    csv_text = doc.to_csv()
    assert '"a,b"' in csv_text  # RFC-style quoting of embedded commas
    assert ReportDocument.from_json(doc.to_json()).rows == doc.rows


def test_markdown_timestamp_only_when_stamped(capsys):
    main(["table", "4"])
    out = capsys.readouterr().out
    assert "generated at" not in out
    main(["table", "4", "--stamp"])
    out = capsys.readouterr().out
    assert "generated at" in out


def test_huge_condition_values_render_as_descriptors(capsys):
    # a(300) has 91 digits: the conditions cell must not dump the decimal
    code = main(["rule", "kashi", "--n", "300", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    row = ReportDocument.from_json(out).rows[0]
    assert "digits)" in row["conditions"]
    code = main(["rule", "kashi", "--n", "300", "--format", "json", "--full-decimal"])
    out = capsys.readouterr().out
    row = ReportDocument.from_json(out).rows[0]
    assert "digits)" not in row["conditions"]
