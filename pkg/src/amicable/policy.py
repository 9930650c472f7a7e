"""Effort policy: every tunable knob in one place.

Defaults live here; the CLI resolves effective values from (highest
precedence first) command-line flags, then AMICABLE_* environment
variables, then an optional JSON config file.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Policy:
    # full proving tests (LLR / Lucas-Lehmer / Pepin) only below this size
    full_test_max_bits: int = 20_000
    # trial primes used by the small-factor sieve
    sieve_bound: int = 1_000_000
    # rounds for the randomized strong-pseudoprime test
    mr_rounds: int = 64
    # seed for every randomized choice (derived per value, so call order
    # and parallelism cannot change answers)
    seed: int = 0
    # rules accept ProbablePrime conditions only when set; reports keep
    # the weaker status visible either way
    allow_probable: bool = False
    # brute-force oracle cap
    oracle_bound: int = 10**8
    # rho iterations per factorization call
    factor_budget: int = 500_000
    # pair verification via sigma only below this size
    verify_max_bits: int = 4096
    # optional wall-clock cap per proving test, seconds (None = no cap)
    time_budget: float | None = None
    # re-prove catalog Mersenne exponents up to this many bits (0 = trust
    # the catalog, which is the default and the sane choice at scale)
    reprove_mersenne_max_bits: int = 0

    def replace(self, **kwargs) -> "Policy":
        return dataclasses.replace(self, **kwargs)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


_INT_FIELDS = {
    "full_test_max_bits",
    "sieve_bound",
    "mr_rounds",
    "seed",
    "oracle_bound",
    "factor_budget",
    "verify_max_bits",
    "reprove_mersenne_max_bits",
}


def _coerce(name: str, raw):
    if raw is None:
        return None
    if name in _INT_FIELDS:
        return int(raw)
    if name == "allow_probable":
        if isinstance(raw, bool):
            return raw
        return str(raw).strip().lower() in ("1", "true", "yes", "on")
    if name == "time_budget":
        return float(raw)
    return raw


def load_policy(
    flags: dict | None = None,
    environ: dict | None = None,
    config_file: str | None = None,
) -> Policy:
    """Resolve a Policy from flags > environment > config file > defaults.

    `flags` entries with value None are treated as unset.  Environment
    variables are named AMICABLE_<FIELD> (upper case).  The config file,
    when given, is a flat JSON object of field names.
    """
    environ = os.environ if environ is None else environ
    values: dict = {}
    if config_file:
        with open(config_file, encoding="utf-8") as fh:
            data = json.load(fh)
        for name in data:
            if name not in Policy.__dataclass_fields__:
                raise ValueError(f"unknown policy field in config file: {name}")
            values[name] = _coerce(name, data[name])
    for name in Policy.__dataclass_fields__:
        env_val = environ.get(f"AMICABLE_{name.upper()}")
        if env_val is not None:
            values[name] = _coerce(name, env_val)
    for name, raw in (flags or {}).items():
        if raw is not None and name in Policy.__dataclass_fields__:
            values[name] = _coerce(name, raw)
    return Policy(**values)
