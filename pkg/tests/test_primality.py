import random

import pytest
import sympy

from amicable.policy import Policy
from amicable.primality import (
    FormKind,
    Status,
    describe_form,
    is_prime,
    jacobi,
    lucas_lehmer,
    llr_riesel,
    mod4_shortcut,
    pepin,
    small_factor_sieve,
)


def test_is_prime_examples():
    assert is_prime(71).is_proven_prime
    v = is_prime(287)
    assert v.is_composite and v.witness_factor == 7
    assert is_prime(1151).is_proven_prime
    v = is_prime(1)
    assert v.status is Status.COMPOSITE and v.reason is not None
    v = is_prime(0)
    assert v.status is Status.COMPOSITE and v.reason is not None


def test_is_prime_against_reference_range():
    for n in range(2, 5000):
        assert is_prime(n).is_proven_prime == sympy.isprime(n), n


def test_no_false_proven_prime_below_1e7():
    rng = random.Random(41)
    for _ in range(2000):
        n = rng.randrange(2, 10**7)
        v = is_prime(n)
        if v.is_proven_prime:
            # confirm by trial division
            assert all(n % d for d in range(2, int(n**0.5) + 1)), n


def test_is_prime_probable_only_above_deterministic_bound():
    # 2^128 + 51 is prime; it is generic and huge, so only ProbablePrime
    n = 2**128 + 51
    v = is_prime(n)
    assert v.status is Status.PROBABLE_PRIME
    assert v.rounds == 64
    assert sympy.isprime(n)


def test_is_prime_deterministic_across_calls():
    policy = Policy(seed=7)
    n = 2**130 + 169  # generic composite above the deterministic bound
    first = is_prime(n, policy)
    for _ in range(3):
        assert is_prime(n, policy) == first


def test_is_prime_unresolved_beyond_bit_cap():
    policy = Policy(full_test_max_bits=64)
    v = is_prime(2**200 + 235, policy)
    assert v.status is Status.UNRESOLVED


def test_lucas_lehmer_examples():
    assert lucas_lehmer(3).is_proven_prime
    assert lucas_lehmer(7).is_proven_prime
    v = lucas_lehmer(4)
    assert v.is_composite and v.witness_factor == 3  # 15 = 3 * 5
    v = lucas_lehmer(8)
    assert v.is_composite and (2**8 - 1) % v.witness_factor == 0
    assert lucas_lehmer(2).is_proven_prime


def test_lucas_lehmer_agrees_with_deterministic():
    for p in range(3, 62):
        if not sympy.isprime(p):
            continue
        assert lucas_lehmer(p).is_proven_prime == is_prime(2**p - 1).is_proven_prime, p


def test_llr_examples():
    assert llr_riesel(3, 2).is_proven_prime  # 11
    v = llr_riesel(3, 5)  # 95 = 5 * 19
    assert v.is_composite
    if v.witness_factor is not None:
        assert 95 % v.witness_factor == 0
    assert llr_riesel(3, 7).is_proven_prime  # 383


def test_llr_cross_validation_k3():
    for n in range(2, 65):
        expected = is_prime(3 * 2**n - 1).is_proven_prime
        v = llr_riesel(3, n)
        assert v.status in (Status.PROVEN_PRIME, Status.COMPOSITE)
        assert v.is_proven_prime == expected, n


def test_llr_cross_validation_other_k():
    for k in (1, 5, 7, 9, 15, 21):
        for n in range(k.bit_length() + 1, 34):
            value = k * 2**n - 1
            if value < 7:
                continue
            v = llr_riesel(k, n)
            assert v.status in (Status.PROVEN_PRIME, Status.COMPOSITE), (k, n)
            assert v.is_proven_prime == sympy.isprime(value), (k, n)


def test_llr_preconditions():
    with pytest.raises(ValueError):
        llr_riesel(4, 5)  # even k
    with pytest.raises(ValueError):
        llr_riesel(9, 3)  # k >= 2^n
    with pytest.raises(ValueError):
        llr_riesel(1, 2)  # value 3 < 7


def test_llr_respects_bit_cap():
    v = llr_riesel(3, 500, Policy(full_test_max_bits=128))
    assert v.status is Status.UNRESOLVED


def test_pepin_examples():
    assert pepin(2).is_proven_prime  # 17
    assert pepin(4).is_proven_prime  # 65537
    v = pepin(5)
    assert v.is_composite
    assert 641 * 6700417 == 2**32 + 1  # the classical factorization
    sieve = small_factor_sieve(1, 32, 1, 1000)
    assert sieve.is_composite and sieve.witness_factor == 641


def test_pepin_respects_bit_cap():
    assert pepin(20, Policy(full_test_max_bits=1000)).status is Status.UNRESOLVED


def test_sieve_examples():
    v = small_factor_sieve(3, 5, -1, 100)
    assert v.is_composite and v.witness_factor == 5 and 95 % 5 == 0
    v = small_factor_sieve(3, 9, -1, 10)
    assert v.is_composite and v.witness_factor == 5
    v = small_factor_sieve(3, 7, -1, 10**4)
    assert v.status is Status.UNRESOLVED  # 383 is prime


def test_sieve_never_reports_the_value_itself():
    # 3*2^2 - 1 = 11 is prime and lies below the bound; the only listed
    # prime dividing it is 11 itself, which must not count as a witness
    v = small_factor_sieve(3, 2, -1, 100)
    assert v.status is Status.UNRESOLVED


def test_sieve_witnesses_divide():
    for n in range(2, 200):
        v = small_factor_sieve(3, n, -1, 10**4)
        if v.is_composite:
            assert (3 * 2**n - 1) % v.witness_factor == 0, n


def test_mod4_shortcut():
    v = mod4_shortcut(5)
    assert v is not None and v.witness_factor == 5 and (3 * 2**5 - 1) % 5 == 0
    v = mod4_shortcut(9)
    assert v is not None and (3 * 2**9 - 1) % 5 == 0 and 1535 == 5 * 307
    assert mod4_shortcut(4) is None
    with pytest.raises(ValueError):
        mod4_shortcut(1)


def test_mod4_shortcut_sound_to_1e4():
    for n in range(5, 10_001, 4):
        assert (3 * pow(2, n, 5) - 1) % 5 == 0, n


def test_describe_form():
    assert describe_form(127).kind is FormKind.MERSENNE
    assert describe_form(127).params == (7,)
    d = describe_form(3 * 2**40 - 1)
    assert d.kind is FormKind.K2N_MINUS1 and d.params == (3, 40)
    d = describe_form(2**16 + 1)
    assert d.kind is FormKind.FERMAT_FORM and d.params == (4,)
    assert describe_form(1000003).kind is FormKind.GENERIC
    # descriptor must reconstruct the value exactly
    for n in (127, 3 * 2**40 - 1, 2**16 + 1, 1000003, 97, 2**61 - 1):
        assert describe_form(n).value() == n


def test_jacobi_matches_reference():
    rng = random.Random(5)
    for _ in range(500):
        n = rng.randrange(3, 10**6) | 1
        a = rng.randrange(0, 2 * n)
        assert jacobi(a, n) == sympy.jacobi_symbol(a, n), (a, n)
