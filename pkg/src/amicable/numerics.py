"""Exact integer arithmetic: divisor sums, factorization, divisor lists.

Python's built-in int is the arbitrary-precision natural-number type used
everywhere; all operations here are pure functions of their inputs.

Two independent routes compute the proper-divisor sum:

* ``sigma_proper`` factors its argument and uses the multiplicative
  closed form for the full divisor sum, then subtracts n.
* ``sigma_proper_bruteforce`` enumerates divisors up to sqrt(n) and
  shares no code with the factorizer.  It exists to catch bugs in the
  fast path and is capped at a desk-scale oracle bound.
"""

from __future__ import annotations

import random
from array import array
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd, isqrt

from . import _backend

DEFAULT_ORACLE_BOUND = 10**8
DEFAULT_FACTOR_BUDGET = 500_000  # Brent-rho iterations per factorize() call

# First 13 primes prove primality below this bound (Sorenson/Webster base set).
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
MR_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class FactorizationError(Exception):
    """A cofactor could not be split within the configured effort budget."""


@dataclass(frozen=True)
class Factorization:
    """Complete prime factorization: ((prime, exponent), ...) with primes increasing."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be >= 1")

    def value(self) -> int:
        return reduce(lambda acc, pe: acc * pe[0] ** pe[1], self.factors, 1)

    def sigma(self) -> int:
        """Sum of ALL divisors, by the multiplicative closed form."""
        total = 1
        for p, e in self.factors:
            total *= (p ** (e + 1) - 1) // (p - 1)
        return total

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**j for d in divs for j in range(e + 1)]
        return sorted(divs)


@lru_cache(maxsize=8)
def small_primes(bound: int = 10**6) -> tuple[int, ...]:
    """All primes <= bound, by a byte sieve of Eratosthenes."""
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i in range(2, bound + 1) if sieve[i])


@lru_cache(maxsize=8)
def prime_array(bound: int = 10**6) -> array:
    """small_primes(bound) packed as a u64 buffer for the compiled kernel."""
    return array("Q", small_primes(bound))


def _mr_composite_witness(n: int, a: int) -> bool:
    """True if base a proves n composite in a single strong-pseudoprime round."""
    if a % n == 0:
        return False
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def deterministic_prime_check(n: int) -> bool:
    """Proof-backed primality for n < MR_DETERMINISTIC_BOUND.

    Uses the fixed 13-prime base set; raises for n at or above the bound
    (callers that large must go through a proving test or accept a
    probabilistic answer).
    """
    if n >= MR_DETERMINISTIC_BOUND:
        raise ValueError("n exceeds the deterministic base-set bound")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == p:
            return True
        if n % p == 0:
            return False
    return not any(_mr_composite_witness(n, a) for a in MR_DETERMINISTIC_BASES)


def _is_prime_for_factoring(n: int) -> bool:
    # Deterministic below the proven bound, 64 fixed strong rounds above it.
    # The fixed derived seed keeps factorize() a pure function of its input.
    if n < MR_DETERMINISTIC_BOUND:
        return deterministic_prime_check(n)
    rng = random.Random(f"factorize:{n}")
    return not any(
        _mr_composite_witness(n, rng.randrange(2, n - 1)) for _ in range(64)
    )


def _brent_rho(n: int, budget: list[int]) -> int:
    """A nontrivial factor of composite odd n, Brent's cycle variant.

    Decrements budget[0] per squaring; raises FactorizationError when
    exhausted rather than returning anything doubtful.
    """
    rng = random.Random(f"rho:{n}")
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * (x - y) % n
                budget[0] -= min(m, r - k)
                if budget[0] <= 0:
                    raise FactorizationError(
                        f"factoring budget exhausted while splitting {n}"
                    )
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                budget[0] -= 1
                if budget[0] <= 0:
                    raise FactorizationError(
                        f"factoring budget exhausted while splitting {n}"
                    )
                g = gcd(x - ys, n)
        if g != n:
            return g
        # cycle degenerated; retry with fresh parameters


_TRIAL_PRIME_BOUND = 10_000


def factorize(n: int, budget: int | None = None) -> Factorization:
    """Complete prime factorization of n >= 2.

    Trial division by the small-prime table first, then Brent's rho on
    whatever remains, recursing until every part passes the primality
    check.  Exceeding the effort budget raises FactorizationError; a
    wrong answer is never returned.
    """
    if n < 2:
        raise ValueError("factorize requires n >= 2")
    remaining = [budget if budget is not None else DEFAULT_FACTOR_BUDGET]
    counts: dict[int, int] = {}
    m = n
    for p in small_primes(_TRIAL_PRIME_BOUND):
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    if m > 1:
        if m < _TRIAL_PRIME_BOUND**2:
            # trial division already reached sqrt(m), so m is prime
            counts[m] = counts.get(m, 0) + 1
        else:
            stack = [m]
            while stack:
                t = stack.pop()
                if _is_prime_for_factoring(t):
                    counts[t] = counts.get(t, 0) + 1
                    continue
                f = _brent_rho(t, remaining)
                stack.append(f)
                stack.append(t // f)
    return Factorization(tuple(sorted(counts.items())))


def sigma_proper(n: int) -> int:
    """Sum of the proper divisors of n (all divisors d with d < n).

    Examples: sigma_proper(220) == 284, sigma_proper(1) == 0.
    """
    if n < 1:
        raise ValueError("sigma is defined on n >= 1")
    if n == 1:
        return 0
    return factorize(n).sigma() - n


def sigma_proper_bruteforce(n: int, bound: int = DEFAULT_ORACLE_BOUND) -> int:
    """Proper-divisor sum by trial enumeration; the cross-check oracle.

    Deliberately shares no code with factorize(); limited to n <= bound
    because enumeration is for desk-scale verification only.
    """
    if n < 1:
        raise ValueError("sigma is defined on n >= 1")
    if n > bound:
        raise ValueError(f"n exceeds the oracle bound {bound}")
    return _backend.proper_divisor_sum(n)


def divisors_proper(n: int) -> list[int]:
    """Sorted list of all divisors d of n with d < n."""
    if n < 1:
        raise ValueError("divisors are defined on n >= 1")
    if n == 1:
        return []
    return factorize(n).divisors()[:-1]
