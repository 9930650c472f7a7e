#!/usr/bin/env python3
"""Benchmark the compiled kernels against their pure-Python twins.

Run after an editable install:

    python benchmarks/bench_backends.py

Covers the two hot loops: the brute-force divisor-sum oracle and the
small-factor sieve over catalog-scale exponents.
"""

import time

from amicable import _kernels_py
from amicable.numerics import prime_array
from amicable.search import KNOWN_MERSENNE_EXPONENTS

try:
    from amicable import _kernels
except ImportError:
    _kernels = None


def timed(fn, *args):
    t0 = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - t0


def bench_divisor_sum(mod):
    def run():
        total = 0
        for n in range(1, 200_001):
            total += mod.proper_divisor_sum(n)
        return total

    return timed(run)


def bench_sieve(mod):
    primes = prime_array(10**6)

    def run():
        hits = 0
        for p in KNOWN_MERSENNE_EXPONENTS[-12:]:
            n = p - 1
            for e in (n - 1, n):
                if mod.pow2_form_first_factor(3, e, -1, primes):
                    hits += 1
        return hits

    return timed(run)


def main():
    rows = []
    for name, bench in (("divisor_sum 1..2*10^5", bench_divisor_sum),
                        ("sieve 24 huge values, bound 10^6", bench_sieve)):
        py_result, py_time = bench(_kernels_py)
        if _kernels is not None:
            cy_result, cy_time = bench(_kernels)
            assert py_result == cy_result, name
            rows.append((name, py_time, cy_time, py_time / cy_time))
        else:
            rows.append((name, py_time, None, None))

    print(f"{'benchmark':<36} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, py_time, cy_time, speedup in rows:
        if cy_time is None:
            print(f"{name:<36} {py_time:>9.3f}s {'n/a':>10} {'n/a':>8}")
        else:
            print(f"{name:<36} {py_time:>9.3f}s {cy_time:>9.3f}s {speedup:>7.1f}x")
    if _kernels is None:
        print("\ncompiled kernels not built; install with Cython to compare")


if __name__ == "__main__":
    main()
