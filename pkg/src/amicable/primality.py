"""Primality verdicts for the number forms the rules need.

Dispatch order in is_prime():

1. trial division against the small-prime table for tiny values;
2. deterministic strong-pseudoprime test with the proven 13-prime base
   set for values below 3,317,044,064,679,887,385,961,981;
3. recognized special forms go to a proving test: Lucas-Lehmer for
   2^p - 1, the Lucas-Lehmer-Riesel test for k*2^n - 1, Pepin for
   2^(2^k) + 1;
4. anything else gets a seeded randomized strong-pseudoprime test and
   can only ever be ProbablePrime, never ProvenPrime.

Exceeding the policy's size or time budget yields Unresolved, never a
guess.  Every test is a pure function of (value, policy), including the
randomized one: its bases derive from (policy.seed, value), so call
order and parallelism cannot change answers.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from enum import Enum
from math import gcd

from . import _backend, numerics
from .numerics import MR_DETERMINISTIC_BOUND
from .policy import Policy

_DEFAULT_POLICY = Policy()

# trial division handles everything below this directly
_TINY_BOUND = 10**6

# bounded search for the Lucas seed parameter
_SEED_SEARCH_LIMIT = 10_000


class Status(str, Enum):
    PROVEN_PRIME = "ProvenPrime"
    COMPOSITE = "Composite"
    PROBABLE_PRIME = "ProbablePrime"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class PrimalityVerdict:
    status: Status
    method: str
    witness_factor: int | None = None
    rounds: int | None = None
    reason: str | None = None

    @property
    def is_proven_prime(self) -> bool:
        return self.status is Status.PROVEN_PRIME

    @property
    def is_composite(self) -> bool:
        return self.status is Status.COMPOSITE

    @property
    def is_prime_like(self) -> bool:
        return self.status in (Status.PROVEN_PRIME, Status.PROBABLE_PRIME)


class FormKind(str, Enum):
    GENERIC = "generic"
    K2N_MINUS1 = "k2n-1"
    MERSENNE = "mersenne"
    FERMAT_FORM = "fermat"


@dataclass(frozen=True)
class FormDescriptor:
    kind: FormKind
    params: tuple[int, ...]

    def value(self) -> int:
        if self.kind is FormKind.MERSENNE:
            (p,) = self.params
            return (1 << p) - 1
        if self.kind is FormKind.K2N_MINUS1:
            k, n = self.params
            return (k << n) - 1
        if self.kind is FormKind.FERMAT_FORM:
            (k,) = self.params
            return (1 << (1 << k)) + 1
        (v,) = self.params
        return v


def describe_form(n: int) -> FormDescriptor:
    """Classify n for test routing; the descriptor reconstructs n exactly."""
    if n >= 7:
        m = n + 1
        if m & (m - 1) == 0:
            return FormDescriptor(FormKind.MERSENNE, (m.bit_length() - 1,))
        shift = (m & -m).bit_length() - 1
        k = m >> shift
        if shift >= 2 and k > 1 and k < (1 << shift):
            return FormDescriptor(FormKind.K2N_MINUS1, (k, shift))
        t = n - 1
        if t & (t - 1) == 0:
            e = t.bit_length() - 1
            if e >= 2 and e & (e - 1) == 0:
                return FormDescriptor(FormKind.FERMAT_FORM, (e.bit_length() - 1,))
    return FormDescriptor(FormKind.GENERIC, (n,))


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be positive and odd")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _lucas_v(P: int, h: int, N: int) -> int:
    # V_h(P) mod N for the Lucas V-sequence with Q = 1 (V_0 = 2, V_1 = P).
    # Pair ladder over all bits of h: (V_m, V_m+1) -> (V_2m, V_2m+1) or
    # (V_2m+1, V_2m+2), starting from m = 0.
    v0, v1 = 2 % N, P % N
    for i in range(h.bit_length() - 1, -1, -1):
        if (h >> i) & 1:
            v0, v1 = (v0 * v1 - P) % N, (v1 * v1 - 2) % N
        else:
            v0, v1 = (v0 * v0 - 2) % N, (v0 * v1 - P) % N
    return v0


def _deadline(policy: Policy) -> float | None:
    return None if policy.time_budget is None else time.monotonic() + policy.time_budget


def lucas_lehmer(p: int, policy: Policy | None = None) -> PrimalityVerdict:
    """Decide 2^p - 1 by the classical u(0)=4, u -> u^2 - 2 recurrence.

    A composite exponent p makes 2^p - 1 composite outright (2^d - 1
    divides it for every d | p); that case returns Composite with the
    algebraic factor as witness instead of running the recurrence.
    """
    policy = policy or _DEFAULT_POLICY
    if p < 2:
        raise ValueError("exponent must be >= 2")
    if p == 2:
        return PrimalityVerdict(Status.PROVEN_PRIME, "lucas-lehmer")
    if not numerics.deterministic_prime_check(p):
        d = next(q for q in numerics.small_primes(10_000) if p % q == 0)
        return PrimalityVerdict(
            Status.COMPOSITE,
            "algebraic-factor",
            witness_factor=(1 << d) - 1,
            reason=f"exponent {p} is composite, so 2^{d} - 1 divides the value",
        )
    if p + 1 > policy.full_test_max_bits:
        return PrimalityVerdict(
            Status.UNRESOLVED,
            "lucas-lehmer",
            reason=f"value has {p} bits, above the {policy.full_test_max_bits}-bit cap",
        )
    N = (1 << p) - 1
    deadline = _deadline(policy)
    u = 4
    for i in range(p - 2):
        u = (u * u - 2) % N
        if deadline is not None and not i % 256 and time.monotonic() > deadline:
            return PrimalityVerdict(
                Status.UNRESOLVED, "lucas-lehmer", reason="time budget exceeded"
            )
    if u == 0:
        return PrimalityVerdict(Status.PROVEN_PRIME, "lucas-lehmer")
    return PrimalityVerdict(Status.COMPOSITE, "lucas-lehmer")


def llr_riesel(k: int, n: int, policy: Policy | None = None) -> PrimalityVerdict:
    """Proving test for N = k*2^n - 1 (k odd, k < 2^n).

    Seed selection is the delicate part.  We search P = 3, 4, 5, ... for
    the standard Jacobi conditions (P-2 | N) = 1 and (P+2 | N) = -1,
    start from u(0) = V_k(P) mod N, square-and-subtract n-2 times and
    read primality off u(n-2) = 0.  No seed constant is assumed: the
    search is validated against the deterministic test in the suite.

    A Jacobi symbol of zero during the search exposes a shared factor
    gcd(P +/- 2, N); that is returned as a Composite witness directly.
    """
    policy = policy or _DEFAULT_POLICY
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be odd and positive")
    if n < 1 or k >= (1 << n):
        raise ValueError("requires k < 2^n")
    N = (k << n) - 1
    if N < 7:
        raise ValueError("value must be >= 7")
    if N.bit_length() > policy.full_test_max_bits:
        return PrimalityVerdict(
            Status.UNRESOLVED,
            "llr",
            reason=f"value has {N.bit_length()} bits, above the "
            f"{policy.full_test_max_bits}-bit cap",
        )
    P = None
    for cand in range(3, _SEED_SEARCH_LIMIT):
        j_minus = jacobi(cand - 2, N)
        if j_minus == 0:
            g = gcd(cand - 2, N)
            if 1 < g < N:
                return PrimalityVerdict(Status.COMPOSITE, "llr-seed-gcd", witness_factor=g)
            continue
        j_plus = jacobi(cand + 2, N)
        if j_plus == 0:
            g = gcd(cand + 2, N)
            if 1 < g < N:
                return PrimalityVerdict(Status.COMPOSITE, "llr-seed-gcd", witness_factor=g)
            continue
        if j_minus == 1 and j_plus == -1:
            P = cand
            break
    if P is None:
        return PrimalityVerdict(
            Status.UNRESOLVED, "llr", reason="no Lucas seed parameter found"
        )
    deadline = _deadline(policy)
    u = _lucas_v(P, k, N)
    for i in range(n - 2):
        u = (u * u - 2) % N
        if deadline is not None and not i % 256 and time.monotonic() > deadline:
            return PrimalityVerdict(Status.UNRESOLVED, "llr", reason="time budget exceeded")
    if u == 0:
        return PrimalityVerdict(Status.PROVEN_PRIME, f"llr(P={P})")
    return PrimalityVerdict(Status.COMPOSITE, f"llr(P={P})")


def pepin(k: int, policy: Policy | None = None) -> PrimalityVerdict:
    """Proving test for F = 2^(2^k) + 1: prime iff 3^((F-1)/2) = -1 mod F."""
    policy = policy or _DEFAULT_POLICY
    if k < 1:
        raise ValueError("index must be >= 1")
    bits = (1 << k) + 1
    if bits > policy.full_test_max_bits:
        return PrimalityVerdict(
            Status.UNRESOLVED,
            "pepin",
            reason=f"value has {bits} bits, above the {policy.full_test_max_bits}-bit cap",
        )
    F = (1 << (1 << k)) + 1
    r = pow(3, (F - 1) // 2, F)
    if r == F - 1:
        return PrimalityVerdict(Status.PROVEN_PRIME, "pepin")
    return PrimalityVerdict(Status.COMPOSITE, "pepin")


def small_factor_sieve(k: int, n: int, delta: int, bound: int) -> PrimalityVerdict:
    """Cheap composite detection for k*2^n + delta without materializing it.

    Tries every prime q <= bound via modular exponentiation of 2 and
    returns Composite with the first witness (never the value itself);
    otherwise Unresolved, since a clean sieve proves nothing.
    """
    if bound < 3:
        raise ValueError("bound must be >= 3")
    if k < 1 or n < 0:
        raise ValueError("requires k >= 1 and n >= 0")
    skip = 0
    if n + k.bit_length() <= 64:
        value = (k << n) + delta
        if value < 2:
            raise ValueError("value must be >= 2")
        skip = value
    q = _backend.pow2_form_first_factor(k, n, delta, numerics.prime_array(bound), skip)
    if q:
        return PrimalityVerdict(Status.COMPOSITE, "sieve", witness_factor=q)
    return PrimalityVerdict(
        Status.UNRESOLVED, "sieve", reason=f"no prime factor below {bound}"
    )


def mod4_shortcut(n: int) -> PrimalityVerdict | None:
    """Composite verdict for 3*2^n - 1 when n = 1 (mod 4), else None.

    In that residue class 2^n = 2 (mod 5), so the value is divisible
    by 5.  Requires n >= 2 so the value cannot be 5 itself.
    """
    if n < 2:
        raise ValueError("index must be >= 2")
    if n % 4 != 1:
        return None
    return PrimalityVerdict(Status.COMPOSITE, "mod4-shortcut", witness_factor=5)


def _trial_division(n: int) -> PrimalityVerdict:
    for q in numerics.small_primes(1000):
        if q * q > n:
            break
        if n % q == 0:
            return PrimalityVerdict(Status.COMPOSITE, "trial-division", witness_factor=q)
    return PrimalityVerdict(Status.PROVEN_PRIME, "trial-division")


def is_prime(n: int, policy: Policy | None = None) -> PrimalityVerdict:
    """Primality verdict for any n >= 0 under the given effort policy."""
    policy = policy or _DEFAULT_POLICY
    if n < 0:
        raise ValueError("n must be >= 0")
    if n < 2:
        return PrimalityVerdict(
            Status.COMPOSITE,
            "convention",
            reason=f"{n} is neither prime nor composite; non-prime by convention",
        )
    if n < _TINY_BOUND:
        return _trial_division(n)
    if n < MR_DETERMINISTIC_BOUND:
        if numerics.deterministic_prime_check(n):
            return PrimalityVerdict(Status.PROVEN_PRIME, "miller-rabin-deterministic")
        return PrimalityVerdict(Status.COMPOSITE, "miller-rabin-deterministic")
    form = describe_form(n)
    if form.kind is FormKind.MERSENNE:
        return lucas_lehmer(form.params[0], policy)
    if form.kind is FormKind.K2N_MINUS1:
        return llr_riesel(form.params[0], form.params[1], policy)
    if form.kind is FormKind.FERMAT_FORM:
        return pepin(form.params[0], policy)
    if n.bit_length() > policy.full_test_max_bits:
        return PrimalityVerdict(
            Status.UNRESOLVED,
            "dispatch",
            reason=f"generic value has {n.bit_length()} bits, above the "
            f"{policy.full_test_max_bits}-bit cap",
        )
    rng = random.Random(f"{policy.seed}:{n}")
    for _ in range(policy.mr_rounds):
        a = rng.randrange(2, n - 1)
        if numerics._mr_composite_witness(n, a):
            return PrimalityVerdict(Status.COMPOSITE, "miller-rabin", rounds=policy.mr_rounds)
    return PrimalityVerdict(
        Status.PROBABLE_PRIME, "miller-rabin", rounds=policy.mr_rounds
    )
