"""Closed-form evaluation of the indexed number families behind the
historical amicable-pair rules, and the algebraic identities linking them.

Conventions, for index n:

    a(n) = 3*2^(n-1) - 1        r(n) = 2^n * a(n) * b(n)
    b(n) = 3*2^n - 1            s(n) = 2^n * c(n)
    c(n) = 9*2^(2n-1) - 1       m(n) = 2^n - 1

plus the two al-Baghdadi families (alpha/beta/gamma/lambda/mu and A/B/M/R/S)
and the generalized Fermat values 2^n + 1.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ThabitTriple:
    """The six classic rule values at index n, plus m(n+1)."""

    n: int
    a: int
    b: int
    c: int
    r: int
    s: int
    m_next: int


def thabit_triple(n: int) -> ThabitTriple:
    """Evaluate the classic family at n >= 1 by closed form."""
    if n < 1:
        raise ValueError("index must be >= 1")
    a = 3 * (1 << (n - 1)) - 1
    b = 3 * (1 << n) - 1
    c = 9 * (1 << (2 * n - 1)) - 1
    r = (a * b) << n
    s = c << n
    m_next = (1 << (n + 1)) - 1
    assert b == 2 * a + 1
    assert c == a + b + a * b
    return ThabitTriple(n, a, b, c, r, s, m_next)


@dataclass(frozen=True)
class IdentityCheck:
    label: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class IbnSinaIdentities:
    """The four sum/difference identities tying m(n+1) to a, b, r, s."""

    n: int
    checks: tuple[IdentityCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)


def ibn_sina_identities(n: int) -> IbnSinaIdentities:
    """Check the four identities at index n.

    (i)  m(n+1) + 2^n = b(n)
    (ii) m(n+1) - 2^(n-1) = a(n)     [the "predecessor" term]
    (iii) 2^n * a(n) * b(n) = r(n)
    (iv) 2^n * (a(n) + b(n)) + r(n) = s(n)
    """
    t = thabit_triple(n)
    p = 1 << n
    checks = (
        IdentityCheck("m_next + 2^n = b", t.m_next + p, t.b),
        IdentityCheck("m_next - 2^(n-1) = a", t.m_next - (p >> 1), t.a),
        IdentityCheck("2^n * a * b = r", p * t.a * t.b, t.r),
        IdentityCheck("2^n * (a + b) + r = s", p * (t.a + t.b) + t.r, t.s),
    )
    return IbnSinaIdentities(n, checks)


@dataclass(frozen=True)
class BaghdadiFirstFamily:
    """The 2^n+1 / 2^(n+1)+3 / 2^n+3 family and its pair (lambda, mu)."""

    n: int
    alpha: int
    beta: int
    gamma: int
    lam: int
    mu: int


def baghdadi_first(n: int) -> BaghdadiFirstFamily:
    """Evaluate the first family at n >= 2.

    lambda and mu are computed both in factored and expanded polynomial
    form; a mismatch would mean broken arithmetic, so it raises.
    """
    if n < 2:
        raise ValueError("index must be >= 2")
    p = 1 << n
    alpha = p + 1
    beta = 2 * p + 3
    gamma = p + 3
    assert beta == 2 * alpha + 1
    lam = p * alpha * beta
    mu = p * (alpha + beta) + lam
    lam_expanded = (1 << (3 * n + 1)) + 5 * (1 << (2 * n)) + 3 * p
    mu_expanded = (1 << (3 * n + 1)) + 8 * (1 << (2 * n)) + 7 * p
    if lam != lam_expanded or mu != mu_expanded:
        raise ArithmeticError("factored and expanded forms disagree")
    return BaghdadiFirstFamily(n, alpha, beta, gamma, lam, mu)


@dataclass(frozen=True)
class BaghdadiGeneralFamily:
    """The doubling iteration seeded at (5, 11): A, B, M and the pair (R, S)."""

    n: int
    A: int
    B: int
    M: int
    R: int
    S: int


def baghdadi_general(n: int) -> BaghdadiGeneralFamily:
    """Evaluate the general iteration at step n >= 1.

    n = 0 is rejected: it denotes the seed values 5 and 11 themselves,
    which start the iteration rather than being produced by it.  The
    even-even factor at step n is 2^(n+2) (4 for the seed, 8 for the
    first step, and so on), which makes A, B, M, R, S coincide with
    a(n+2), b(n+2), m(n+3), r(n+2), s(n+2).
    """
    if n < 1:
        raise ValueError("index must be >= 1 (n = 0 is the 5, 11 seed)")
    p = 1 << n
    A = 5 * p + (p - 1)
    B = 11 * p + (p - 1)
    M = B - (p << 2)
    assert A == 6 * p - 1 and B == 12 * p - 1 and M == (1 << (n + 3)) - 1
    R = (A * B) << (n + 2)
    S = ((A + B) << (n + 2)) + R
    shifted = thabit_triple(n + 2)
    if (A, B, M, R, S) != (
        shifted.a,
        shifted.b,
        (1 << (n + 3)) - 1,
        shifted.r,
        shifted.s,
    ):
        raise ArithmeticError("shift identities against the classic family failed")
    return BaghdadiGeneralFamily(n, A, B, M, R, S)


def conjecture2_residual(n: int) -> int:
    """Signed residual 2^(2n) - 2^(n+1) - 8.

    Zero exactly when sigma(lambda(n)) = mu(n) can hold given the
    primality conditions; that happens only at n = 2.  Returned signed
    so a change of domain could never wrap silently.
    """
    if n < 2:
        raise ValueError("index must be >= 2")
    return (1 << (2 * n)) - (1 << (n + 1)) - 8


@dataclass(frozen=True)
class FermatNumber:
    """Generalized Fermat value 2^n + 1 at index n >= 0."""

    n: int
    value: int

    @property
    def is_classical_index(self) -> bool:
        # 2^n + 1 can be prime only for n = 0 or n a power of two
        return self.n == 0 or (self.n & (self.n - 1)) == 0


def fermat_number(n: int) -> FermatNumber:
    if n < 0:
        raise ValueError("index must be >= 0")
    return FermatNumber(n, (1 << n) + 1)


def r_expanded(n: int) -> int:
    """r(n) as the expanded polynomial 9*2^(3n-1) - 9*2^(2n-1) + 2^n."""
    return 9 * (1 << (3 * n - 1)) - 9 * (1 << (2 * n - 1)) + (1 << n)


def s_expanded(n: int) -> int:
    """s(n) as the expanded polynomial 9*2^(3n-1) - 2^n."""
    return 9 * (1 << (3 * n - 1)) - (1 << n)
