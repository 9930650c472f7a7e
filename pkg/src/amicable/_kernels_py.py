"""Pure-Python twins of the compiled kernels in ``amicable._kernels``.

Selected by ``amicable._backend`` when the extension is not built or when
``AMICABLE_PURE_PYTHON`` is set.  Contracts must stay identical to the
Cython versions; the test suite asserts both backends agree.
"""

from math import isqrt

BACKEND = "python"


def proper_divisor_sum(n):
    """Sum of the divisors d of n with d < n, by trial enumeration up to sqrt(n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 0
    total = 1  # divisor 1; its cofactor n is excluded by definition
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            q = n // d
            total += d
            if q != d:
                total += q
    return total


def pow2_form_first_factor(k, n, delta, primes, skip=0):
    """Smallest prime q in `primes` dividing k*2^n + delta, or 0 if none.

    The value itself is never a witness: q == skip is ignored.  Works by
    modular exponentiation of 2, so the (possibly huge) value is never
    materialized.
    """
    for q in primes:
        if q == skip:
            continue
        if (k * pow(2, n, q) + delta) % q == 0:
            return q
    return 0
