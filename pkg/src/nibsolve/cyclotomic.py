"""Exact arithmetic in cyclotomic fields Q(zeta_q) over the power basis.

Elements are coordinate vectors of length phi(q) over 1, z, ..., z^{phi-1}
with z = zeta_q, eagerly reduced modulo the q-th cyclotomic polynomial.
Complex conjugation is the automorphism z -> z^{q-1} (identity for q <= 2),
which keeps the T2 trace form exact and integer-valued.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .linalg import Matrix, det
from .polynomials import (
    Polynomial,
    cyclotomic_polynomial,
    euler_phi,
    mobius,
    poly_xgcd,
)

_FIELD_CACHE: dict[int, "CycField"] = {}


class CycField:
    """The field Q(zeta_q) with precomputed reduction and trace tables."""

    def __init__(self, q: int):
        if q < 1:
            raise ValueError("cyclotomic order must be >= 1")
        self.q = q
        self.degree = euler_phi(q)
        self.poly = cyclotomic_polynomial(q)
        # power_table[t] = integer coordinates of z^t mod Phi_q,
        # for every exponent needed by products (2*deg-2) and by the
        # monomial maps z^t -> z^{st mod q} (q-1).
        top = max(q, 2 * self.degree - 1)
        self.power_table: list[list[int]] = []
        cur = [0] * self.degree
        cur[0] = 1
        self.power_table.append(list(cur))
        phi_int = [int(c) for c in self.poly.coeffs]
        for _ in range(1, top):
            shifted = [0] + cur[:]
            if len(shifted) > self.degree:
                lead = shifted.pop()
                if lead:
                    for i in range(self.degree):
                        shifted[i] -= lead * phi_int[i]
            cur = shifted + [0] * (self.degree - len(shifted))
            self.power_table.append(list(cur))
        # trace_table[t] = Tr(z^t) for t mod q
        self.trace_table = [self._trace_of_power(t) for t in range(q)]

    def _trace_of_power(self, t: int) -> int:
        g = gcd(t, self.q)
        m = self.q // g
        return mobius(m) * (self.degree // euler_phi(m))

    def __repr__(self) -> str:
        return f"CycField({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CycField) and other.q == self.q

    def __hash__(self):
        return hash(("CycField", self.q))

    # -- element constructors -------------------------------------------------

    def element(self, coords: Sequence) -> "CycElt":
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coords]
        if len(cs) != self.degree:
            raise ValueError("coordinate vector has wrong length")
        return CycElt(self, cs)

    def zero(self) -> "CycElt":
        return CycElt(self, [Fraction(0)] * self.degree)

    def one(self) -> "CycElt":
        return self.from_rational(1)

    def from_rational(self, c) -> "CycElt":
        coords = [Fraction(0)] * self.degree
        coords[0] = Fraction(c)
        return CycElt(self, coords)

    def zeta_power(self, t: int) -> "CycElt":
        """The root of unity z^t as a field element."""
        row = self.power_table[t % self.q] if self.q > 1 else self.power_table[0]
        return CycElt(self, [Fraction(c) for c in row])

    def from_polynomial(self, p: Polynomial) -> "CycElt":
        coords = [Fraction(0)] * self.degree
        for t, c in enumerate(p.coeffs):
            if c == 0:
                continue
            row = self.power_table[t]
            for i in range(self.degree):
                coords[i] += c * row[i]
        return CycElt(self, coords)

    def automorphism_exponents(self) -> list[int]:
        return [s for s in range(1, self.q + 1) if gcd(s, self.q) == 1]


def cyclotomic_field(q: int) -> CycField:
    """Cached field constructor (tables are shared per order q)."""
    field = _FIELD_CACHE.get(q)
    if field is None:
        field = CycField(q)
        _FIELD_CACHE[q] = field
    return field


class CycElt:
    """Element of Q(zeta_q) as an exact coordinate vector."""

    __slots__ = ("field", "coords")

    def __init__(self, field: CycField, coords: list[Fraction]):
        self.field = field
        self.coords = coords

    def __repr__(self) -> str:
        return f"CycElt(q={self.field.q}, {self.coords})"

    def __eq__(self, other) -> bool:
        if isinstance(other, CycElt):
            return self.field.q == other.field.q and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self == self.field.from_rational(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, tuple(self.coords)))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "CycElt"):
        if self.field.q != other.field.q:
            raise ValueError("elements of different cyclotomic fields")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        self._check(other)
        return CycElt(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        self._check(other)
        return CycElt(self.field, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycElt(self.field, [a * other for a in self.coords])
        self._check(other)
        deg = self.field.degree
        a, b = self.coords, other.coords
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb != 0:
                    conv[i + j] += ca * cb
        out = conv[:deg]
        table = self.field.power_table
        for t in range(deg, 2 * deg - 1):
            c = conv[t]
            if c != 0:
                row = table[t]
                for i in range(deg):
                    out[i] += c * row[i]
        return CycElt(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1) / Fraction(other)
            return CycElt(self.field, [a * inv for a in self.coords])
        self._check(other)
        return self * other.inverse()

    def inverse(self) -> "CycElt":
        """Multiplicative inverse by extended Euclid modulo Phi_q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        p = Polynomial(self.coords)
        g, s, _ = poly_xgcd(p, self.field.poly)
        if g.degree != 0:
            raise ZeroDivisionError("element is not invertible mod Phi_q")
        inv_poly = s * (Fraction(1) / g.coeffs[0])
        return self.field.from_polynomial(inv_poly)

    def __pow__(self, e: int) -> "CycElt":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- Galois structure -----------------------------------------------------

    def automorphism(self, s: int) -> "CycElt":
        """Image under zeta_q -> zeta_q^s (requires gcd(s, q) = 1)."""
        q = self.field.q
        if gcd(s, q) != 1:
            raise ValueError(f"automorphism exponent {s} not coprime to {q}")
        deg = self.field.degree
        out = [Fraction(0)] * deg
        table = self.field.power_table
        for t, c in enumerate(self.coords):
            if c == 0:
                continue
            row = table[(s * t) % q] if q > 1 else table[0]
            for i in range(deg):
                out[i] += c * row[i]
        return CycElt(self.field, out)

    def conjugate(self) -> "CycElt":
        if self.field.q <= 2:
            return self
        return self.automorphism(self.field.q - 1)

    def multiplication_matrix(self) -> Matrix:
        """Matrix of multiplication by self over the power basis (columns)."""
        deg = self.field.degree
        cols = []
        cur = self
        one_shift = self.field.zeta_power(1) if deg > 1 else None
        for _ in range(deg):
            cols.append(list(cur.coords))
            if one_shift is not None:
                cur = cur * one_shift
        return Matrix([[cols[j][i] for j in range(deg)] for i in range(deg)])

    def norm(self) -> Fraction:
        """Field norm: determinant of the multiplication matrix."""
        if self.field.degree == 1:
            return self.coords[0]
        return Fraction(det(self.multiplication_matrix()))

    def trace(self) -> Fraction:
        """Field trace via the trace table (equals the multiplication-matrix
        trace by linearity)."""
        table = self.field.trace_table
        q = self.field.q
        acc = Fraction(0)
        for t, c in enumerate(self.coords):
            if c != 0:
                acc += c * table[t % q]
        return acc


def t2_gram(field: CycField) -> Matrix:
    """Exact Gram matrix of the power basis under the T2 form.

    (G2)_{ab} = Tr(z^a * conj(z^b)); entries are rational integers because
    conjugation is the automorphism z -> z^{q-1}.
    """
    deg = field.degree
    if field.q <= 2:
        return Matrix([[1]])
    q = field.q
    return Matrix([[field.trace_table[(a - b) % q] for b in range(deg)]
                   for a in range(deg)])


def embed_subfield(elt: CycElt, target: CycField) -> CycElt:
    """Embed Q(zeta_e) into Q(zeta_q) for e | q via zeta_e -> zeta_q^{q/e}."""
    e = elt.field.q
    q = target.q
    if q % e != 0:
        raise ValueError(f"no canonical embedding of Q(zeta_{e}) in Q(zeta_{q})")
    step = q // e
    out = [Fraction(0)] * target.degree
    table = target.power_table
    for t, c in enumerate(elt.coords):
        if c == 0:
            continue
        row = table[(step * t) % q] if q > 1 else table[0]
        for i in range(target.degree):
            out[i] += c * row[i]
    return CycElt(target, out)


def coerce_to_subfield(elt: CycElt, target: CycField) -> CycElt:
    """Express an element of Q(zeta_q) over the power basis of a subfield
    Q(zeta_e), e | q.  Raises ValueError if the element does not lie there."""
    from .linalg import solve_overdetermined

    q = elt.field.q
    e = target.q
    if q % e != 0:
        raise ValueError(f"Q(zeta_{e}) is not a subfield of Q(zeta_{q})")
    basis = [embed_subfield(target.zeta_power(t), elt.field).coords
             for t in range(target.degree)]
    sol = solve_overdetermined(basis, elt.coords)
    if sol is None:
        raise ValueError("element does not lie in the requested subfield")
    return target.element(sol)
