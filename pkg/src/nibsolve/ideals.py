"""Ideals of Z[zeta_q] with canonical bases and generator extraction.

An ideal is stored as the HNF basis of its coordinate lattice over the power
basis, so ideal equality is matrix equality.  Generators are found by
LLL-reducing the lattice under the exact T2 Gram form and enumerating short
vectors with Fincke-Pohst until one of the right norm appears.

Supported cyclotomic orders are restricted to the class-number-one table, so
every nonzero ideal here is principal and |norm(gamma)| = norm(J) certifies
that gamma generates J.  For the same reason a certified "non principal"
outcome cannot occur on this table; running out of enumeration budget raises
a resource error instead of ever guessing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclotomic import CycElt, CycField, t2_gram
from .linalg import (
    Matrix,
    ceil_root,
    fincke_pohst,
    from_columns,
    hnf_basis,
    lattice_membership,
    lll_reduce,
)

# Cyclotomic orders q with class number one (and with the cyclotomic units of
# full index in the unit group), fixed as a compile-time table.
SUPPORTED_ORDERS = frozenset(
    set(range(1, 23))
    | {24, 25, 27, 28, 32, 33, 35, 36, 40, 44, 45, 48, 60, 84}
)

DEFAULT_SLACK = Fraction(3, 2)
DEFAULT_ENUM_CAP = 2_000_000
MAX_SLACK_DOUBLINGS = 24


class ZeroIdealError(ValueError):
    """Raised when an ideal construction receives only zero generators."""


class UnsupportedFieldError(ValueError):
    """Raised for cyclotomic orders outside the class-number-one table."""


class ResourceLimitError(RuntimeError):
    """Raised when an enumeration or closure cap fires (never a wrong answer)."""


class CycIdeal:
    """Nonzero ideal of Z[zeta_q]: HNF coordinate lattice plus its norm."""

    __slots__ = ("field", "basis", "norm")

    def __init__(self, field: CycField, basis: Matrix):
        self.field = field
        self.basis = basis
        norm = 1
        for i in range(basis.rows):
            norm *= basis.data[i][i]
        self.norm = norm

    def __eq__(self, other) -> bool:
        return (isinstance(other, CycIdeal)
                and other.field.q == self.field.q
                and other.basis == self.basis)

    def __hash__(self):
        return hash((self.field.q, self.basis))

    def __repr__(self) -> str:
        return f"CycIdeal(q={self.field.q}, norm={self.norm})"

    def contains(self, elt: CycElt) -> bool:
        if not elt.is_integral():
            return False
        vec = [int(c) for c in elt.coords]
        return lattice_membership(self.basis, vec) is not None

    def basis_elements(self) -> list[CycElt]:
        return [self.field.element([Fraction(x) for x in self.basis.column(j)])
                for j in range(self.basis.cols)]

    def is_zeta_stable(self) -> bool:
        """Multiplication by zeta maps the lattice into itself."""
        zeta = self.field.zeta_power(1)
        for vec in self.basis_elements():
            if not self.contains(vec * zeta):
                return False
        return True


def ideal_from_generators(field: CycField, gens: Sequence[CycElt]) -> CycIdeal:
    """HNF basis of the Z-lattice spanned by zeta^t * g over all generators.

    The result is independent of generator order (canonical HNF).
    """
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        raise ZeroIdealError("all generators are zero")
    deg = field.degree
    cols = []
    for g in nonzero:
        if g.field.q != field.q:
            raise ValueError("generator from a different field")
        if not g.is_integral():
            raise ValueError("ideal generators must be integral")
        cur = g
        zeta = field.zeta_power(1) if deg > 1 else None
        for _ in range(deg):
            cols.append([int(c) for c in cur.coords])
            if zeta is not None:
                cur = cur * zeta
    basis = hnf_basis(from_columns(cols))
    return CycIdeal(field, basis)


def principal_ideal(gen: CycElt) -> CycIdeal:
    return ideal_from_generators(gen.field, [gen])


def _abs_norm(elt: CycElt) -> int:
    value = elt.norm()
    assert value.denominator == 1
    return abs(int(value))


def find_generator(
    ideal: CycIdeal,
    slack: Fraction = DEFAULT_SLACK,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> CycElt:
    """Find gamma in J with |norm(gamma)| = norm(J), certifying <gamma> = J.

    Search: LLL-reduce the ideal lattice under T2, then Fincke-Pohst within
    radius phi(q) * norm^{2/phi(q)} * slack (the arithmetic-geometric lower
    bound for elements of that norm, widened by the slack factor).  The slack
    doubles on failure; since the order is on the class-number-one table a
    generator exists, so only a resource cap can stop the search.
    """
    field = ideal.field
    q = field.q
    if q not in SUPPORTED_ORDERS:
        raise UnsupportedFieldError(
            f"cyclotomic order {q} outside the class-number-one table")
    deg = field.degree
    target = ideal.norm
    if deg == 1:
        return field.from_rational(target)
    gram_power = t2_gram(field)
    gram_ideal = ideal.basis.transpose() * gram_power * ideal.basis
    transform = lll_reduce(gram_ideal)
    reduced = ideal.basis * transform
    gram_red = transform.transpose() * gram_ideal * transform

    def element_of(coords_x: Sequence[int]) -> CycElt:
        vec = reduced.mul_vector(list(coords_x))
        return field.element([Fraction(v) for v in vec])

    # reduced basis vectors themselves are the most likely generators
    for j in range(deg):
        cand = element_of([1 if t == j else 0 for t in range(deg)])
        if _abs_norm(cand) == target:
            return _certify(ideal, cand)

    radius = deg * ceil_root(target * target, deg)
    bound = Fraction(radius) * slack
    prev_bound = Fraction(0)
    total = 0
    for _ in range(MAX_SLACK_DOUBLINGS + 1):
        for x in fincke_pohst(gram_red, bound):
            total += 1
            if total > enum_cap:
                raise ResourceLimitError(
                    f"enumeration cap {enum_cap} exceeded for q={q}, norm={target}")
            value = _form_value(gram_red, x)
            if value <= prev_bound:
                continue
            cand = element_of(x)
            if _abs_norm(cand) == target:
                return _certify(ideal, cand)
        prev_bound = bound
        bound = bound * 2
    raise ResourceLimitError(
        f"no generator located within the slack cap for q={q}, norm={target}")


def _form_value(gram: Matrix, x: Sequence[int]) -> Fraction:
    n = gram.rows
    acc = 0
    for i in range(n):
        row = gram.data[i]
        xi = x[i]
        if xi:
            acc += xi * sum(row[j] * x[j] for j in range(n) if x[j])
    return Fraction(acc)


def _certify(ideal: CycIdeal, gamma: CycElt) -> CycElt:
    # both certificate halves: membership and norm equality
    if not ideal.contains(gamma):
        raise AssertionError("candidate generator escaped the ideal lattice")
    if _abs_norm(gamma) != ideal.norm:
        raise AssertionError("candidate generator norm mismatch")
    return gamma
