"""Cyclotomic polynomials, q-integers and factored cyclotomic products.

The d-th cyclotomic polynomial Phi_d is built by exact division: take
q^d - 1 and divide out Phi_e for every proper divisor e of d.  Results
are memoized; the cache tolerates concurrent readers, and two threads
racing to fill the same entry simply duplicate an idempotent
computation.

For prime powers there is also the direct construction
Phi_{p^a} = 1 + q^{p^(a-1)} + ... + q^{(p-1) p^(a-1)}, i.e. the
q-integer [p] evaluated at q^{p^(a-1)}; prime_power_form returns that
without touching the cache and must agree with cyclotomic(p**a)
bit-exactly.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Mapping

from .polycore import ONE, IntPoly, InvalidArgument, divexact, monomial

__all__ = [
    "CycloFactorization",
    "cyclotomic",
    "expand",
    "is_prime",
    "prime_power_form",
    "q_int",
]


def is_prime(n: int) -> bool:
    """Deterministic trial division; inputs here stay well below 10**6."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def q_int(n: int, step: int = 1) -> IntPoly:
    """The q-integer [n] in the variable q**step.

    [n] = 1 + q + ... + q^(n-1); with step e the terms sit at exponents
    0, e, ..., (n-1)e.

    >>> str(q_int(3))
    '1 + q + q^2'
    >>> str(q_int(2, step=4))
    '1 + q^4'
    """
    if n < 1 or step < 1:
        raise InvalidArgument(f"q_int requires n >= 1 and step >= 1, got n={n}, step={step}")
    coeffs = [0] * ((n - 1) * step + 1)
    for i in range(n):
        coeffs[i * step] = 1
    return IntPoly(coeffs)


@functools.cache
def cyclotomic(d: int) -> IntPoly:
    """The d-th cyclotomic polynomial, of degree phi(d).

    >>> str(cyclotomic(1))
    '-1 + q'
    >>> str(cyclotomic(6))
    '1 - q + q^2'
    """
    if d < 1:
        raise InvalidArgument(f"cyclotomic index must be positive, got {d}")
    if d == 1:
        return IntPoly((-1, 1))
    poly = monomial(d) - 1
    for e in _proper_divisors(d):
        poly = divexact(poly, cyclotomic(e))
    return poly


def _proper_divisors(d: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= d:
        if d % i == 0:
            small.append(i)
            if i != d // i and i != 1:
                large.append(d // i)
        i += 1
    return small + large[::-1]


def prime_power_form(p: int, alpha: int) -> IntPoly:
    """Phi_{p^alpha} as the q-integer [p] in q**(p^(alpha-1)).

    >>> prime_power_form(2, 3) == cyclotomic(8)
    True
    """
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not prime")
    if alpha < 1:
        raise InvalidArgument(f"exponent must be >= 1, got {alpha}")
    return q_int(p, step=p ** (alpha - 1))


@dataclass(frozen=True)
class CycloFactorization:
    """A product of cyclotomic polynomials, kept unexpanded.

    Maps each index d >= 1 to its multiplicity >= 1; an absent index has
    multiplicity zero.  The empty factorization is the constant 1.
    """

    factors: Mapping[int, int]

    def __post_init__(self):
        for d, m in self.factors.items():
            if d < 1 or m < 1:
                raise InvalidArgument(
                    f"factor Phi_{d}^{m}: index and multiplicity must be >= 1"
                )

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for d in sorted(self.factors):
            m = self.factors[d]
            parts.append(f"Phi_{d}" if m == 1 else f"Phi_{d}^{m}")
        return " * ".join(parts)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloFactorization):
            return dict(self.factors) == dict(other.factors)
        return NotImplemented


def expand(f: CycloFactorization) -> IntPoly:
    """Exact expanded product of a cyclotomic factorization.

    >>> str(expand(CycloFactorization({2: 1, 3: 1})))
    '1 + 2*q + 2*q^2 + q^3'
    """
    result = ONE
    for d in sorted(f.factors):
        result = result * cyclotomic(d) ** f.factors[d]
    return result
