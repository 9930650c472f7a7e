"""The four historical extraction rules as executable evaluators, the two
supporting lemmas, the amicability verifier, and the father relation.

A rule report never asserts more than was computed: conditions carry full
primality verdicts, generated pairs are re-verified by actual divisor-sum
computation wherever that is feasible, and anything beyond budget is
reported Unresolved rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import numerics, primality
from .numerics import FactorizationError
from .policy import Policy
from .primality import PrimalityVerdict, Status
from .sequences import baghdadi_first, thabit_triple

_DEFAULT_POLICY = Policy()


class RuleId(str, Enum):
    THABIT = "Thabit"
    CONJECTURE1_IBN_SINA = "Conjecture1_IbnSina"
    CONJECTURE2_BAGHDADI_FIRST = "Conjecture2_BaghdadiFirst"
    CONJECTURE3_KASHI = "Conjecture3_Kashi"
    BAGHDADI_GENERAL = "BaghdadiGeneral"


class PairStatus(str, Enum):
    AMICABLE = "Amicable"
    NOT_AMICABLE = "NotAmicable"
    CONDITIONS_NOT_MET = "ConditionsNotMet"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class Condition:
    label: str
    value: int
    verdict: PrimalityVerdict


@dataclass(frozen=True)
class RuleReport:
    rule_id: RuleId
    index_n: int
    conditions: tuple[Condition, ...]
    pair: tuple[int, int] | None
    pair_status: PairStatus
    sigma_forward: int | None = None
    sigma_backward: int | None = None
    note: str | None = None

    @property
    def is_conjecture1_counterexample(self) -> bool:
        return (
            self.rule_id is RuleId.CONJECTURE1_IBN_SINA
            and self.pair_status is PairStatus.NOT_AMICABLE
        )


@dataclass(frozen=True)
class AmicabilityVerdict:
    m: int
    n: int
    sigma_m: int
    sigma_n: int
    amicable: bool
    father_m_of_n: bool
    father_n_of_m: bool

    @property
    def self_pair(self) -> bool:
        # a perfect number paired with itself satisfies the bare definition
        return self.m == self.n


def verify_amicable(m: int, n: int) -> AmicabilityVerdict:
    """Amicability and father flags for (m, n), by direct sigma computation."""
    if m < 1 or n < 1:
        raise ValueError("both members must be >= 1")
    sigma_m = numerics.sigma_proper(m)
    sigma_n = numerics.sigma_proper(n)
    return AmicabilityVerdict(
        m=m,
        n=n,
        sigma_m=sigma_m,
        sigma_n=sigma_n,
        amicable=(sigma_m == n and sigma_n == m),
        father_m_of_n=(sigma_m == n),
        father_n_of_m=(sigma_n == m),
    )


def _condition_ok(v: PrimalityVerdict, policy: Policy) -> bool:
    if v.is_proven_prime:
        return True
    return policy.allow_probable and v.status is Status.PROBABLE_PRIME


def _sigma_of_2n_pq(n: int, p: int, q: int) -> int:
    # full divisor sum of 2^n * p * q for distinct odd primes p, q
    return ((1 << (n + 1)) - 1) * (p + 1) * (q + 1)


def _verify_generated_pair(
    n: int,
    p: int,
    q: int,
    c: int,
    c_verdict: PrimalityVerdict | None,
    policy: Policy,
):
    """Verify the pair (2^n*p*q, 2^n*c) given p, q prime and c = p + q + p*q.

    Returns (status, sigma_forward, sigma_backward, note).  sigma of the
    first member follows from the proven structure; sigma of the second
    needs c's factorization, which stays within budget at desk scale.  A
    proven composite c settles NotAmicable even when c cannot be factored,
    because sigma(2^n*c) then strictly exceeds the first member.
    """
    first = (p * q) << n
    second = c << n
    sigma_first = _sigma_of_2n_pq(n, p, q) - first
    forward = sigma_first == second
    if c_verdict is not None and _condition_ok(c_verdict, policy):
        sigma_second = ((1 << (n + 1)) - 1) * (c + 1) - second
    elif second.bit_length() <= policy.verify_max_bits:
        try:
            sigma_second = ((1 << (n + 1)) - 1) * numerics.factorize(
                c, policy.factor_budget
            ).sigma() - second
        except FactorizationError:
            sigma_second = None
    else:
        sigma_second = None
    if sigma_second is None:
        if c_verdict is not None and c_verdict.is_composite:
            return (
                PairStatus.NOT_AMICABLE,
                sigma_first,
                None,
                "composite c-part: sigma of the second member strictly exceeds the first",
            )
        return PairStatus.UNRESOLVED, sigma_first, None, "second member beyond verification budget"
    status = PairStatus.AMICABLE if forward and sigma_second == first else PairStatus.NOT_AMICABLE
    return status, sigma_first, sigma_second, None


def thabit_rule(n: int, policy: Policy | None = None) -> RuleReport:
    """The classic three-condition rule: a, b, c prime makes (r, s) amicable."""
    policy = policy or _DEFAULT_POLICY
    if n < 2:
        raise ValueError("the rule is stated for n > 1")
    t = thabit_triple(n)
    conditions = tuple(
        Condition(label, value, primality.is_prime(value, policy))
        for label, value in (("a", t.a), ("b", t.b), ("c", t.c))
    )
    return _finish_rsn_report(RuleId.THABIT, t, conditions, policy, c_cond_index=2)


def conjecture1_rule(n: int, policy: Policy | None = None) -> RuleReport:
    """The variant rule: a, b and m(n+1) prime; a NotAmicable outcome here
    would be the sought counterexample and is surfaced loudly by callers."""
    policy = policy or _DEFAULT_POLICY
    if n < 2:
        raise ValueError("the rule is stated for n > 1")
    t = thabit_triple(n)
    conditions = tuple(
        Condition(label, value, primality.is_prime(value, policy))
        for label, value in (("a", t.a), ("b", t.b), ("m_next", t.m_next))
    )
    return _finish_rsn_report(RuleId.CONJECTURE1_IBN_SINA, t, conditions, policy)


def conjecture3_rule(n: int, policy: Policy | None = None) -> RuleReport:
    """The two-condition reduction: a, b prime only.  The pair is generated
    whenever the conditions hold and then actually verified, so the rule's
    failure at n = 3 is exhibited by computation, not assumed."""
    policy = policy or _DEFAULT_POLICY
    if n < 2:
        raise ValueError("the rule is stated for n > 1")
    t = thabit_triple(n)
    conditions = tuple(
        Condition(label, value, primality.is_prime(value, policy))
        for label, value in (("a", t.a), ("b", t.b))
    )
    return _finish_rsn_report(RuleId.CONJECTURE3_KASHI, t, conditions, policy)


def _finish_rsn_report(
    rule_id: RuleId,
    t,
    conditions: tuple[Condition, ...],
    policy: Policy,
    c_cond_index: int | None = None,
) -> RuleReport:
    met = all(_condition_ok(c.verdict, policy) for c in conditions)
    if not met:
        status = (
            PairStatus.CONDITIONS_NOT_MET
            if any(c.verdict.is_composite for c in conditions)
            else PairStatus.UNRESOLVED
        )
        return RuleReport(rule_id, t.n, conditions, None, status)
    if c_cond_index is not None:
        c_verdict = conditions[c_cond_index].verdict
    else:
        c_verdict = primality.is_prime(t.c, policy)
    status, sf, sb, note = _verify_generated_pair(t.n, t.a, t.b, t.c, c_verdict, policy)
    return RuleReport(rule_id, t.n, conditions, (t.r, t.s), status, sf, sb, note)


def conjecture2_rule(n: int, policy: Policy | None = None) -> RuleReport:
    """The first-family rule: alpha, beta, gamma prime should make
    (lambda, mu) amicable.  The residual equation says that can only work
    at n = 2, and the verification here computes it rather than citing it."""
    policy = policy or _DEFAULT_POLICY
    if n < 2:
        raise ValueError("the rule is stated for n > 1")
    fam = baghdadi_first(n)
    conditions = tuple(
        Condition(label, value, primality.is_prime(value, policy))
        for label, value in (("alpha", fam.alpha), ("beta", fam.beta), ("gamma", fam.gamma))
    )
    met = all(_condition_ok(c.verdict, policy) for c in conditions)
    if not met:
        status = (
            PairStatus.CONDITIONS_NOT_MET
            if any(c.verdict.is_composite for c in conditions)
            else PairStatus.UNRESOLVED
        )
        return RuleReport(RuleId.CONJECTURE2_BAGHDADI_FIRST, n, conditions, None, status)
    # mu = 2^n * (alpha + beta + alpha*beta); the odd part plays c's role
    c_part = fam.alpha + fam.beta + fam.alpha * fam.beta
    c_verdict = primality.is_prime(c_part, policy)
    status, sf, sb, note = _verify_generated_pair(
        n, fam.alpha, fam.beta, c_part, c_verdict, policy
    )
    return RuleReport(
        RuleId.CONJECTURE2_BAGHDADI_FIRST, n, conditions, (fam.lam, fam.mu), status, sf, sb, note
    )


def sigma_r_closed_form(n: int) -> int:
    """sigma(r(n)) by the divisor-block closed form, valid when a, b prime.

    (2^(n+1) - 1)(9*2^(n-1) - 1) + (2^n - 1)(9*2^(2n-1) - 9*2^(n-1) + 1),
    which collapses to s(n).  Rejects indices where a or b is composite,
    since the divisor enumeration behind the formula is then wrong.
    """
    if n < 2:
        raise ValueError("index must be >= 2")
    t = thabit_triple(n)
    for label, value in (("a", t.a), ("b", t.b)):
        v = primality.is_prime(value)
        if not v.is_proven_prime:
            raise ValueError(f"{label}({n}) = {value} is not proven prime ({v.status.value})")
    total = ((1 << (n + 1)) - 1) * (9 * (1 << (n - 1)) - 1) + ((1 << n) - 1) * (
        9 * (1 << (2 * n - 1)) - 9 * (1 << (n - 1)) + 1
    )
    if total != t.s:
        raise ArithmeticError("closed form failed to collapse to s(n)")
    return total


@dataclass(frozen=True)
class Lemma1Record:
    n: int
    sigma_s: int
    r: int
    margin: int


def lemma1_check(n: int) -> Lemma1Record:
    """With a, b prime and c composite, sigma(s) strictly exceeds r.

    Computes sigma(s(n)) exactly and returns the margin; preconditions
    are verified internally and violations rejected.
    """
    if n < 2:
        raise ValueError("index must be >= 2")
    t = thabit_triple(n)
    for label, value in (("a", t.a), ("b", t.b)):
        if not primality.is_prime(value).is_proven_prime:
            raise ValueError(f"{label}({n}) = {value} is not prime; precondition fails")
    c_verdict = primality.is_prime(t.c)
    if not c_verdict.is_composite:
        raise ValueError(f"c({n}) = {t.c} is not composite; precondition fails")
    sigma_s = numerics.sigma_proper(t.s)
    margin = sigma_s - t.r
    if margin <= 0:
        raise ArithmeticError("inequality sigma(s) > r failed; arithmetic is broken")
    return Lemma1Record(n, sigma_s, t.r, margin)


@dataclass(frozen=True)
class Lemma2Record:
    n: int
    sigma_r: int
    s: int
    closed_form: int

    @property
    def consistent(self) -> bool:
        return self.sigma_r == self.s == self.closed_form


def lemma2_check(n: int) -> Lemma2Record:
    """With a, b prime, r is a father of s: sigma(r) = s, whether or not c
    is prime.  Asserted by brute-force enumeration against the closed form."""
    if n < 2:
        raise ValueError("index must be >= 2")
    t = thabit_triple(n)
    closed = sigma_r_closed_form(n)  # also enforces the a, b preconditions
    sigma_r = numerics.sigma_proper_bruteforce(t.r)
    if not (sigma_r == t.s == closed):
        raise ArithmeticError(
            f"father relation failed at n={n}: sigma(r)={sigma_r}, s={t.s}, closed={closed}"
        )
    return Lemma2Record(n, sigma_r, t.s, closed)


@dataclass(frozen=True)
class AliquotPatternRecord:
    n: int
    r_pattern_matches: bool
    s_pattern_matches: bool
    s_missing: tuple[int, ...]
    s_extra: tuple[int, ...]


def aliquot_pattern_check(n: int) -> AliquotPatternRecord:
    """Compare the historical aliquot-part listings against true divisors.

    The r pattern {2^k} + {2^k a} + {2^k b} + {2^k ab, k < n} is exact when
    a, b are prime.  The s pattern {2^k} + {2^k c, k < n} additionally
    assumes c prime; where c is composite (n = 3) the mismatch is reported
    with the missing and spurious entries.
    """
    if n < 2:
        raise ValueError("index must be >= 2")
    t = thabit_triple(n)
    for label, value in (("a", t.a), ("b", t.b)):
        if not primality.is_prime(value).is_proven_prime:
            raise ValueError(f"{label}({n}) = {value} is not prime; pattern undefined")
    powers = [1 << k for k in range(n + 1)]
    r_pattern = set(powers)
    r_pattern.update(p * t.a for p in powers)
    r_pattern.update(p * t.b for p in powers)
    r_pattern.update((1 << k) * t.a * t.b for k in range(n))
    r_actual = set(numerics.divisors_proper(t.r))
    s_pattern = set(powers)
    s_pattern.update((1 << k) * t.c for k in range(n))
    s_actual = set(numerics.divisors_proper(t.s))
    return AliquotPatternRecord(
        n=n,
        r_pattern_matches=(r_pattern == r_actual),
        s_pattern_matches=(s_pattern == s_actual),
        s_missing=tuple(sorted(s_actual - s_pattern)),
        s_extra=tuple(sorted(s_pattern - s_actual)),
    )


@dataclass(frozen=True)
class PerfectNumberReport:
    bound_exponent: int
    perfect_numbers: tuple[int, ...]
    none_between_1e4_and_1e5: bool
    notes: tuple[str, ...]


def perfect_number_claims_check(bound_exponent: int) -> PerfectNumberReport:
    """Enumerate even perfect numbers below 10^bound_exponent and check the
    two historical claims about them.

    Uses the one-to-one correspondence with Mersenne primes
    (2^(p-1) * (2^p - 1) is perfect exactly when 2^p - 1 is prime); no odd
    perfect number is known below 10^1500, so the enumeration is complete
    at this scale.
    """
    if not 1 <= bound_exponent <= 12:
        raise ValueError("bound exponent must be between 1 and 12 (desk scale)")
    limit = 10**bound_exponent
    found = []
    for p in numerics.small_primes(64):
        if primality.lucas_lehmer(p).is_proven_prime:
            candidate = (1 << (p - 1)) * ((1 << p) - 1)
            if candidate < limit:
                found.append(candidate)
    found.sort()
    gap_empty = not any(10**4 < v < 10**5 for v in found)
    notes = [
        "no perfect number lies between 10^4 and 10^5"
        if gap_empty
        else "UNEXPECTED: perfect number found between 10^4 and 10^5",
    ]
    if bound_exponent >= 4:
        notes.append(
            "the fourth perfect number is 8128; the figure 8120 quoted in some "
            "early sources is not a perfect number"
        )
    if len(found) >= 6:
        fifth, sixth = found[4], found[5]
        notes.append(
            f"fifth and sixth are {fifth} and {sixth}; both end in 6, so the "
            "final digits 6 and 8 do not strictly alternate"
        )
    return PerfectNumberReport(bound_exponent, tuple(found), gap_empty, tuple(notes))
