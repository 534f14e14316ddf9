"""Exact univariate polynomials over the rationals.

Coefficients are stored ascending by degree as ``fractions.Fraction`` (ints
are accepted and coerced).  The zero polynomial has an empty coefficient
list.  Cyclotomic polynomials are produced by the divisor-product formula.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence


class Polynomial:
    """Polynomial with exact rational coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial mapped to -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "Poly(" + " + ".join(terms) + ")"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.coeffs[-1]
        quo = [Fraction(0)] * max(len(rem) - db, 0)
        for i in range(len(rem) - db - 1, -1, -1):
            c = rem[i + db] / lb
            if c != 0:
                quo[i] = c
                for j, bc in enumerate(other.coeffs):
                    rem[i + j] -= c * bc
        return Polynomial(quo), Polynomial(rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Polynomial([c / lead for c in self.coeffs])

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_mod(self, inner: "Polynomial", modulus: "Polynomial") -> "Polynomial":
        """self(inner) reduced modulo modulus (Horner over the quotient ring)."""
        acc = Polynomial([])
        for c in reversed(self.coeffs):
            acc = (acc * inner + Polynomial([c])) % modulus
        return acc


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def radical(p: Polynomial) -> Polynomial:
    """Squarefree part p / gcd(p, p'), made monic."""
    if p.is_zero():
        return p
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.monic()
    return (p // g).monic()


def poly_xgcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Polynomial([1]), Polynomial([])
    t0, t1 = Polynomial([]), Polynomial([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead = r0.coeffs[-1]
    inv = Fraction(1) / lead
    return r0 * inv, s0 * inv, t0 * inv


@lru_cache(maxsize=None)
def cyclotomic_polynomial(q: int) -> Polynomial:
    """q-th cyclotomic polynomial via the divisor-product recursion.

    x^q - 1 = prod_{d | q} Phi_d(x), so Phi_q is the quotient of x^q - 1 by
    the product of the Phi_d for proper divisors d.
    """
    if q < 1:
        raise ValueError("cyclotomic order must be >= 1")
    xq1 = Polynomial([-1] + [0] * (q - 1) + [1])
    acc = Polynomial([1])
    for d in range(1, q):
        if q % d == 0:
            acc = acc * cyclotomic_polynomial(d)
    quo, rem = divmod(xq1, acc)
    assert rem.is_zero()
    return quo


def euler_phi(q: int) -> int:
    """Euler totient."""
    if q < 1:
        raise ValueError("totient of a non-positive integer")
    result = q
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors in increasing order."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius of a non-positive integer")
    result = 1
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    m = n
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        if m % p == 0:
            m //= p
        p += 1
    return True
