"""Kernel backend selection.

Prefers the compiled ``amicable._kernels`` extension; falls back to the
pure-Python twin when the extension is missing or ``AMICABLE_PURE_PYTHON``
is set.  Both expose the same contracts, so results never depend on which
backend is active (the test suite asserts this).
"""

import os

from . import _kernels_py

if os.environ.get("AMICABLE_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

# Word-size limits of the compiled kernels; beyond them we fall back.
KERNEL_VALUE_LIMIT = 1 << 62
KERNEL_SUM_LIMIT = 1 << 60  # sigma(n) must also fit in u64
KERNEL_PRIME_LIMIT = 1 << 31


def backend_name() -> str:
    return _impl.BACKEND


def proper_divisor_sum(n: int) -> int:
    if _impl is not _kernels_py and 1 <= n < KERNEL_SUM_LIMIT:
        return _impl.proper_divisor_sum(n)
    return _kernels_py.proper_divisor_sum(n)


def pow2_form_first_factor(k: int, n: int, delta: int, primes, skip: int = 0) -> int:
    """First listed prime dividing k*2^n + delta (0 if none; skip is never returned)."""
    kernel_ok = (
        _impl is not _kernels_py
        and 0 < k < KERNEL_VALUE_LIMIT
        and 0 <= n < KERNEL_VALUE_LIMIT
        and abs(delta) < KERNEL_PRIME_LIMIT
        and 0 <= skip < KERNEL_VALUE_LIMIT
        and (len(primes) == 0 or primes[-1] < KERNEL_PRIME_LIMIT)
    )
    if kernel_ok:
        try:
            return _impl.pow2_form_first_factor(k, n, delta, primes, skip)
        except (TypeError, ValueError):
            # e.g. a prime sequence without the u64 buffer interface
            pass
    return _kernels_py.pow2_form_first_factor(k, n, delta, primes, skip)
