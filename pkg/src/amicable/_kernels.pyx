# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: brute-force divisor-sum enumeration and the
small-factor sieve for k*2^n + delta forms.

Pure-Python twins with identical contracts live in amicable._kernels_py.
Callers are expected to respect the word-size limits (values below 2^62,
primes below 2^31); amicable._backend enforces them and falls back.
"""

from libc.stdint cimport int64_t, uint64_t

BACKEND = "cython"


cdef inline uint64_t _pow2_mod(uint64_t n, uint64_t q) nogil:
    # 2^n mod q; q < 2^31 so every product fits in 64 bits.
    cdef uint64_t result = 1 % q
    cdef uint64_t base = 2 % q
    while n:
        if n & 1:
            result = result * base % q
        base = base * base % q
        n >>= 1
    return result


def proper_divisor_sum(n):
    """Sum of the divisors d of n with d < n, by trial enumeration up to sqrt(n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    # below 2^60 even a colossally abundant sigma(n) < 6.8n stays in u64
    if n >= (1 << 60):
        raise OverflowError("value too large for the compiled kernel")
    cdef uint64_t un = n
    cdef uint64_t total, d, q
    if un == 1:
        return 0
    total = 1
    with nogil:
        d = 2
        while d * d <= un:
            if un % d == 0:
                q = un // d
                total += d
                if q != d:
                    total += q
            d += 1
    return total


def pow2_form_first_factor(k, n, delta, primes, skip=0):
    """Smallest prime q in `primes` dividing k*2^n + delta, or 0 if none.

    q == skip is ignored (the value itself is not a witness).
    """
    cdef const unsigned long long[::1] ps = primes
    cdef uint64_t uk = k
    cdef uint64_t un = n
    cdef uint64_t usk = skip
    cdef int64_t d = delta
    cdef uint64_t q, hit
    cdef int64_t r
    cdef Py_ssize_t i, count = ps.shape[0]
    hit = 0
    with nogil:
        for i in range(count):
            q = ps[i]
            if q == usk:
                continue
            r = <int64_t> ((uk % q) * _pow2_mod(un, q) % q)
            r = (r + d) % <int64_t> q
            if r < 0:
                r += <int64_t> q
            if r == 0:
                hit = q
                break
    return hit
