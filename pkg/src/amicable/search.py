"""Batch scans over the known Mersenne and Fermat primes, with a
persistent verdict cache and row-level parallelism.

Catalog file: UTF-8 text, one decimal Mersenne exponent per line, `#`
starts a comment, blank lines ignored.  The bundled default carries the
51 known exponents.

Cache file: line-oriented append log, one record per line,
whitespace-separated decimal fields:

    kind params status method witness? checksum

where `kind` names the value form (``pow2`` for k*2^n + delta), `params`
is the comma-joined parameter list (``k,n,delta``), `status` and `method`
come from the verdict, `witness` is present only for Composite verdicts
that carry a factor, and `checksum` is the crc32 (hex, 8 digits) of the
preceding fields joined by single spaces.  Corrupt lines are ignored; a
definitive entry (ProvenPrime / Composite) is never overwritten by a
weaker one.
"""

from __future__ import annotations

import threading
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

from . import numerics, primality
from .policy import Policy
from .primality import PrimalityVerdict, Status
from .sequences import thabit_triple

_DEFAULT_POLICY = Policy()

# The 51 known Mersenne prime exponents (mersenne.org); the scan's n
# column is p - 1.  Kept as a constant to cross-check edited catalogs.
KNOWN_MERSENNE_EXPONENTS = (
    2, 3, 5, 7, 13, 17, 19, 31, 61, 89,
    107, 127, 521, 607, 1279, 2203, 2281, 3217, 4253, 4423,
    9689, 9941, 11213, 19937, 21701, 23209, 44497, 86243, 110503, 132049,
    216091, 756839, 859433, 1257787, 1398269, 2976221, 3021377, 6972593,
    13466917, 20996011, 24036583, 25964951, 30402457, 32582657, 37156667,
    42643801, 43112609, 57885161, 74207281, 77232917, 82589933,
)

# Scan indices where both a(n) and b(n) are prime.  Follows from the
# known list of exponents with 3*2^e - 1 prime (OEIS A002235): both are
# prime exactly when e-1 and e are consecutive members, which never
# happens again at p - 1 for a known Mersenne exponent p.  A proven T
# anywhere else trips the anomaly guard.
KNOWN_AB_PRIME_INDICES = (1, 2, 4)

# Fermat-prime exponents relevant to the first-family scan (n >= 2).
FERMAT_SCAN_INDICES = (2, 4, 8, 16)


class CatalogError(ValueError):
    """Malformed or inconsistent Mersenne-exponent catalog."""


class ScanAnomalyError(RuntimeError):
    """A resolved scan row contradicts the known prime catalogs.

    Either the primality engine is broken or something genuinely new has
    been found; both demand a human, so the scan aborts loudly.
    """


@dataclass(frozen=True)
class MersenneCatalog:
    exponents: tuple[int, ...]

    def indices(self) -> tuple[int, ...]:
        """The scan's n values (p - 1 for each exponent)."""
        return tuple(p - 1 for p in self.exponents)


def load_catalog(source, expected: tuple[int, ...] | None = KNOWN_MERSENNE_EXPONENTS) -> MersenneCatalog:
    """Parse and validate a catalog file.

    Validates: parseability, expected count, strict increase, primality of
    every exponent, and (unless expected is None) agreement with the
    known-exponent list.  Errors name the offending line.
    """
    with open(source, encoding="utf-8") as fh:
        lines = fh.readlines()
    exponents: list[tuple[int, int]] = []  # (line number, exponent)
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            p = int(text)
        except ValueError:
            raise CatalogError(f"{source}:{lineno}: not a decimal exponent: {text!r}")
        exponents.append((lineno, p))
    if expected is not None and len(exponents) != len(expected):
        raise CatalogError(
            f"{source}: expected {len(expected)} exponents, found {len(exponents)}"
        )
    values = [p for _, p in exponents]
    for (ln_a, a), (ln_b, b) in zip(exponents, exponents[1:]):
        if b <= a:
            raise CatalogError(f"{source}:{ln_b}: exponents must strictly increase")
    for lineno, p in exponents:
        if not numerics.deterministic_prime_check(p):
            raise CatalogError(f"{source}:{lineno}: exponent {p} is not prime")
        if expected is not None and p not in expected:
            raise CatalogError(
                f"{source}:{lineno}: exponent {p} is not a known Mersenne prime exponent"
            )
    return MersenneCatalog(tuple(values))


def default_catalog_path() -> str:
    return str(resources.files("amicable").joinpath("data/mersenne_exponents.txt"))


def default_catalog() -> MersenneCatalog:
    return load_catalog(default_catalog_path())


_STRENGTH = {
    Status.PROVEN_PRIME: 3,
    Status.COMPOSITE: 3,
    Status.PROBABLE_PRIME: 2,
    Status.UNRESOLVED: 1,
}


def _cache_line(kind: str, params: str, verdict: PrimalityVerdict) -> str:
    fields = [kind, params, verdict.status.value, verdict.method.replace(" ", "_")]
    if verdict.witness_factor is not None:
        fields.append(str(verdict.witness_factor))
    payload = " ".join(fields)
    checksum = format(zlib.crc32(payload.encode()), "08x")
    return f"{payload} {checksum}"


def _parse_cache_line(line: str):
    parts = line.split()
    if len(parts) not in (5, 6):
        return None
    payload, checksum = " ".join(parts[:-1]), parts[-1]
    if format(zlib.crc32(payload.encode()), "08x") != checksum:
        return None
    kind, params, status_text, method = parts[0], parts[1], parts[2], parts[3]
    try:
        status = Status(status_text)
    except ValueError:
        return None
    witness = None
    if len(parts) == 6:
        try:
            witness = int(parts[4])
        except ValueError:
            return None
    return (kind, params), PrimalityVerdict(status, method, witness_factor=witness)


class ResultCache:
    """Persistent verdict memoization over an append-only log file.

    Entries only ever strengthen: a definitive verdict is never replaced
    by a weaker one.  Corrupt lines are detected by their checksum and
    treated as absent.  Writes are serialized; reads are lock-free.
    """

    def __init__(self, path: str | None):
        self.path = path
        self._entries: dict[tuple[str, str], PrimalityVerdict] = {}
        self._times: dict[tuple[str, str], float] = {}
        self._lock = threading.Lock()
        if path is not None:
            try:
                with open(path, encoding="utf-8") as fh:
                    for line in fh:
                        parsed = _parse_cache_line(line.strip())
                        if parsed is None:
                            continue
                        key, verdict = parsed
                        old = self._entries.get(key)
                        if old is None or _STRENGTH[verdict.status] > _STRENGTH[old.status]:
                            self._entries[key] = verdict
            except FileNotFoundError:
                pass

    def get(self, kind: str, params: str) -> PrimalityVerdict | None:
        return self._entries.get((kind, params))

    def put(self, kind: str, params: str, verdict: PrimalityVerdict) -> None:
        key = (kind, params)
        with self._lock:
            old = self._entries.get(key)
            if old is not None and _STRENGTH[old.status] >= _STRENGTH[verdict.status]:
                return
            self._entries[key] = verdict
            self._times[key] = time.time()
            if self.path is not None:
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(_cache_line(kind, params, verdict) + "\n")

    def __len__(self) -> int:
        return len(self._entries)


@dataclass(frozen=True)
class ScanRecord:
    """One row of the Mersenne scan (the n = p - 1 indexing)."""

    n: int
    m_next_prime: PrimalityVerdict
    a_verdict: PrimalityVerdict
    b_verdict: PrimalityVerdict
    combined_ab: str  # "T", "F" or "Unresolved"
    is_counterexample_candidate: bool
    c_verdict: PrimalityVerdict | None = None
    timestamp: float | None = None


@dataclass(frozen=True)
class FermatScanRecord:
    """One row of the first-family scan over Fermat-prime indices."""

    n: int
    alpha_verdict: PrimalityVerdict
    beta_verdict: PrimalityVerdict
    gamma_verdict: PrimalityVerdict
    combined_bg: str
    timestamp: float | None = None


def _combined(policy: Policy, *verdicts: PrimalityVerdict) -> str:
    if any(v.is_composite for v in verdicts):
        return "F"
    if all(v.is_proven_prime for v in verdicts):
        return "T"
    if policy.allow_probable and all(v.is_prime_like for v in verdicts):
        return "T"
    return "Unresolved"


def resolve_pow2_form(
    k: int,
    n: int,
    delta: int,
    policy: Policy | None = None,
    cache: ResultCache | None = None,
) -> PrimalityVerdict:
    """Verdict for k*2^n + delta through the cheap-first cascade.

    Order: cache, the mod-4 divisibility shortcut (for 3*2^n - 1), direct
    testing for word-sized values, the small-factor sieve, then the full
    proving test within the bit budget.  Anything still open comes back
    Unresolved with the reason attached.
    """
    policy = policy or _DEFAULT_POLICY
    params = f"{k},{n},{delta}"
    if cache is not None:
        hit = cache.get("pow2", params)
        if hit is not None and _STRENGTH[hit.status] >= 2:
            return hit
    verdict = None
    if k == 3 and delta == -1 and n >= 2:
        verdict = primality.mod4_shortcut(n)
    if verdict is None and n + k.bit_length() <= 64:
        verdict = primality.is_prime((k << n) + delta, policy)
    if verdict is None:
        sieve = primality.small_factor_sieve(k, n, delta, policy.sieve_bound)
        if sieve.is_composite:
            verdict = sieve
        elif delta == -1 and n + k.bit_length() + 1 <= policy.full_test_max_bits:
            verdict = llr_or_ll(k, n, policy)
        else:
            verdict = PrimalityVerdict(
                Status.UNRESOLVED,
                "cascade",
                reason=f"no factor below {policy.sieve_bound} and value above the "
                f"{policy.full_test_max_bits}-bit full-test cap",
            )
    if cache is not None:
        cache.put("pow2", params, verdict)
    return verdict


def llr_or_ll(k: int, n: int, policy: Policy) -> PrimalityVerdict:
    """Route k*2^n - 1 to the matching proving test."""
    if k == 1:
        return primality.lucas_lehmer(n, policy)
    return primality.llr_riesel(k, n, policy)


def _scan1_row(n: int, policy: Policy, cache: ResultCache | None) -> ScanRecord:
    p = n + 1
    if policy.reprove_mersenne_max_bits and p <= policy.reprove_mersenne_max_bits:
        m_verdict = primality.lucas_lehmer(p, policy)
    else:
        m_verdict = PrimalityVerdict(
            Status.PROVEN_PRIME, "catalog", reason="listed Mersenne prime exponent"
        )
    # a(n) = 3*2^(n-1) - 1, b(n) = 3*2^n - 1
    a_verdict = resolve_pow2_form(3, n - 1, -1, policy, cache)
    b_verdict = resolve_pow2_form(3, n, -1, policy, cache)
    combined = _combined(policy, a_verdict, b_verdict)
    c_verdict = None
    candidate = False
    if m_verdict.is_proven_prime and combined == "T":
        # every condition of the variant rule holds: the candidate test
        # is whether c(n) = 9*2^(2n-1) - 1 is composite
        c_verdict = resolve_pow2_form(9, 2 * n - 1, -1, policy, cache)
        candidate = c_verdict.is_composite
    return ScanRecord(
        n=n,
        m_next_prime=m_verdict,
        a_verdict=a_verdict,
        b_verdict=b_verdict,
        combined_ab=combined,
        is_counterexample_candidate=candidate,
        c_verdict=c_verdict,
    )


def scan_conjecture1(
    catalog: MersenneCatalog,
    policy: Policy | None = None,
    cache: ResultCache | None = None,
    jobs: int = 1,
) -> list[ScanRecord]:
    """Evaluate the variant rule's conditions at every catalog row.

    Rows are independent; with jobs > 1 they run on a thread pool (the
    compiled sieve kernel releases the GIL) and results are merged back
    in index order, so the output never depends on scheduling.
    """
    policy = policy or _DEFAULT_POLICY
    ns = catalog.indices()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda n: _scan1_row(n, policy, cache), ns))
    else:
        records = [_scan1_row(n, policy, cache) for n in ns]
    records.sort(key=lambda rec: rec.n)
    for rec in records:
        if rec.combined_ab == "T" and rec.n not in KNOWN_AB_PRIME_INDICES:
            raise ScanAnomalyError(
                f"row n={rec.n} resolved both values prime, contradicting the "
                "known catalog of 3*2^e - 1 primes; primality engine bug or a "
                "new mathematical finding, refusing to continue"
            )
    return records


def scan_conjecture2(
    max_fermat_index: int = 16, policy: Policy | None = None
) -> list[FermatScanRecord]:
    """Evaluate the first family at the Fermat-prime indices up to the cap."""
    policy = policy or _DEFAULT_POLICY
    records = []
    for n in FERMAT_SCAN_INDICES:
        if n > max_fermat_index:
            break
        alpha = primality.is_prime((1 << n) + 1, policy)
        beta = primality.is_prime((1 << (n + 1)) + 3, policy)
        gamma = primality.is_prime((1 << n) + 3, policy)
        records.append(
            FermatScanRecord(
                n=n,
                alpha_verdict=alpha,
                beta_verdict=beta,
                gamma_verdict=gamma,
                combined_bg=_combined(policy, beta, gamma),
            )
        )
    return records


def counterexample_candidates(records: list[ScanRecord]) -> list[ScanRecord]:
    return [rec for rec in records if rec.is_counterexample_candidate]


def unresolved_rows(records: list[ScanRecord]) -> list[ScanRecord]:
    return [rec for rec in records if rec.combined_ab == "Unresolved"]
