import dataclasses

import pytest

from amicable.policy import Policy
from amicable.primality import PrimalityVerdict, Status
from amicable.search import (
    KNOWN_MERSENNE_EXPONENTS,
    CatalogError,
    MersenneCatalog,
    ResultCache,
    default_catalog,
    default_catalog_path,
    load_catalog,
    resolve_pow2_form,
    scan_conjecture1,
    scan_conjecture2,
)

FAST = Policy(sieve_bound=50_000, full_test_max_bits=4600)


@pytest.fixture(scope="module")
def catalog():
    return default_catalog()


@pytest.fixture(scope="module")
def fast_records(catalog):
    return scan_conjecture1(catalog, FAST)


def test_default_catalog(catalog):
    assert len(catalog.exponents) == 51
    assert catalog.exponents[:5] == (2, 3, 5, 7, 13)
    assert catalog.indices()[:5] == (1, 2, 4, 6, 12)
    assert catalog.exponents == KNOWN_MERSENNE_EXPONENTS


def test_catalog_count_violation(tmp_path):
    path = tmp_path / "short.txt"
    path.write_text("\n".join(str(p) for p in KNOWN_MERSENNE_EXPONENTS[:50]) + "\n")
    with pytest.raises(CatalogError, match="expected 51"):
        load_catalog(path)


def test_catalog_rejects_non_mersenne_exponent(tmp_path):
    # 2^11 - 1 = 2047 = 23 * 89, so 11 has no place in the list
    assert 2**11 - 1 == 23 * 89
    bad = (11,) + KNOWN_MERSENNE_EXPONENTS[1:]
    path = tmp_path / "bad.txt"
    path.write_text("\n".join(str(p) for p in sorted(bad)) + "\n")
    with pytest.raises(CatalogError, match="11"):
        load_catalog(path)


def test_catalog_rejects_composite_exponent(tmp_path):
    bad = KNOWN_MERSENNE_EXPONENTS[:-1] + (82589935,)  # 5 * 16517987
    path = tmp_path / "bad.txt"
    path.write_text("\n".join(str(p) for p in bad) + "\n")
    with pytest.raises(CatalogError):
        load_catalog(path)


def test_catalog_rejects_garbage_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2\n3\nfive\n")
    with pytest.raises(CatalogError, match="five"):
        load_catalog(path, expected=None)


def test_catalog_comments_and_blanks(tmp_path):
    path = tmp_path / "ok.txt"
    path.write_text("# header\n\n2\n3 # inline\n5\n")
    cat = load_catalog(path, expected=None)
    assert cat.exponents == (2, 3, 5)


def test_scan1_expected_columns(fast_records):
    by_n = {rec.n: rec for rec in fast_records}
    assert by_n[2].combined_ab == "T"
    assert by_n[2].c_verdict is not None and by_n[2].c_verdict.is_proven_prime
    assert not by_n[2].is_counterexample_candidate
    assert by_n[6].combined_ab == "F"
    assert by_n[6].a_verdict.is_composite  # 95 = 5 * 19
    assert by_n[12].combined_ab == "F"
    assert by_n[82589932].combined_ab in ("F", "Unresolved")
    t_rows = [rec.n for rec in fast_records if rec.combined_ab == "T"]
    assert t_rows == [1, 2, 4]


def test_scan1_no_candidates(fast_records):
    assert not any(rec.is_counterexample_candidate for rec in fast_records)


def test_scan1_desk_slice_matches_known_primes(fast_records):
    for rec in fast_records:
        if rec.n > 4422:
            continue
        expected = "T" if rec.n in (1, 2, 4) else "F"
        assert rec.combined_ab == expected, rec.n
        if expected == "F":
            # every F is backed by a witness factor or a completed deciding test
            composites = [v for v in (rec.a_verdict, rec.b_verdict) if v.is_composite]
            assert composites
            assert any(
                v.witness_factor is not None
                or v.method.startswith(("llr", "lucas", "miller-rabin-deterministic"))
                for v in composites
            )


def test_scan1_large_rows_consistent(fast_records):
    for rec in fast_records:
        if rec.n <= 4422:
            continue
        assert rec.combined_ab in ("F", "Unresolved")
        for v in (rec.a_verdict, rec.b_verdict):
            if v.method == "sieve":
                assert v.status in (Status.COMPOSITE, Status.UNRESOLVED)


def test_scan_determinism(catalog, fast_records):
    again = scan_conjecture1(catalog, FAST)
    assert again == fast_records


def test_scan_parallel_matches_serial(catalog, fast_records):
    parallel = scan_conjecture1(catalog, FAST, jobs=4)
    assert parallel == fast_records


def test_scan_witnesses_divide(fast_records):
    for rec in fast_records:
        for e, v in ((rec.n - 1, rec.a_verdict), (rec.n, rec.b_verdict)):
            if v.witness_factor is not None:
                assert (3 * pow(2, e, v.witness_factor) - 1) % v.witness_factor == 0


def test_scan2_rows():
    records = scan_conjecture2()
    assert [(r.n, r.combined_bg) for r in records] == [
        (2, "T"), (4, "F"), (8, "F"), (16, "F"),
    ]
    assert all(r.alpha_verdict.is_proven_prime for r in records)
    records = scan_conjecture2(max_fermat_index=4)
    assert [r.n for r in records] == [2, 4]


def test_resolve_cascade_order():
    # the mod-4 shortcut must fire before anything else for 3*2^n - 1
    v = resolve_pow2_form(3, 9, -1, FAST)
    assert v.method == "mod4-shortcut" and v.witness_factor == 5
    # word-sized values go to the direct test
    v = resolve_pow2_form(3, 7, -1, FAST)
    assert v.is_proven_prime
    # beyond the cap with no small factor: honest Unresolved
    tight = Policy(sieve_bound=100, full_test_max_bits=64)
    v = resolve_pow2_form(3, 127, -1, tight)
    assert v.status is Status.UNRESOLVED and v.reason is not None


def test_cache_roundtrip(tmp_path):
    path = str(tmp_path / "cache.log")
    cache = ResultCache(path)
    verdict = PrimalityVerdict(Status.COMPOSITE, "sieve", witness_factor=5)
    cache.put("pow2", "3,6,-1", verdict)
    assert cache.get("pow2", "3,6,-1") == verdict
    reloaded = ResultCache(path)
    assert reloaded.get("pow2", "3,6,-1") == verdict


def test_cache_never_weakens(tmp_path):
    path = str(tmp_path / "cache.log")
    cache = ResultCache(path)
    proven = PrimalityVerdict(Status.PROVEN_PRIME, "llr(P=3)")
    probable = PrimalityVerdict(Status.PROBABLE_PRIME, "miller-rabin", rounds=64)
    cache.put("pow2", "3,7,-1", proven)
    cache.put("pow2", "3,7,-1", probable)
    assert cache.get("pow2", "3,7,-1") == proven
    reloaded = ResultCache(path)
    assert reloaded.get("pow2", "3,7,-1") == proven


def test_cache_fresh_get_absent(tmp_path):
    cache = ResultCache(str(tmp_path / "cache.log"))
    assert cache.get("pow2", "3,6,-1") is None


def test_cache_corruption_treated_as_absent(tmp_path):
    path = tmp_path / "cache.log"
    cache = ResultCache(str(path))
    cache.put("pow2", "3,6,-1", PrimalityVerdict(Status.COMPOSITE, "sieve", witness_factor=5))
    text = path.read_text()
    path.write_text(text.replace("Composite", "Composte"))
    reloaded = ResultCache(str(path))
    assert reloaded.get("pow2", "3,6,-1") is None
    # a bad checksum is equally fatal for the line
    path.write_text(text[:-2] + "0\n")
    reloaded = ResultCache(str(path))
    assert reloaded.get("pow2", "3,6,-1") is None


def test_cache_transparency_for_scans(catalog, tmp_path, fast_records):
    path = str(tmp_path / "cache.log")
    cache = ResultCache(path)
    cold = scan_conjecture1(catalog, FAST, cache)
    warm = scan_conjecture1(catalog, FAST, ResultCache(path))
    assert cold == warm == fast_records


def test_scan_record_dict_roundtrip(fast_records):
    rec = fast_records[5]
    data = dataclasses.asdict(rec)
    assert data["n"] == rec.n
    assert data["a_verdict"]["status"] == rec.a_verdict.status
