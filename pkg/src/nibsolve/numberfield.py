"""Validated model of an abelian number field given by explicit data.

The input carries the minimal polynomial m of a primitive integral element
alpha whose conjugates form a normal basis, the Galois action as polynomials
p_i with g_i(alpha) = p_i(alpha) mod m, an integral basis over the power
basis of alpha, and the abstract Galois group in invariant-factor form.
Validation matches the action's composition table against the abstract group
(up to isomorphism, reordering the polynomials so index i corresponds to
g_i) and precomputes the conjugate-power tables that make repeated Galois
actions and discriminants cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .groups import AbelianGroup
from .linalg import Matrix, det, from_columns, inverse
from .polynomials import Polynomial


class InputError(ValueError):
    """A field description violates one of its invariants."""


Coords = list[Fraction]


@dataclass
class AbelianFieldInput:
    """Raw (unvalidated) description of an abelian field."""

    minpoly: Polynomial
    group: AbelianGroup
    action: list[Polynomial]             # p_i, identity polynomial first
    integral_basis: Matrix               # column j = beta_j over the power basis
    conductor: int | None = None
    label: str | None = None


class NumberField:
    """Validated field model with precomputed action/trace tables."""

    def __init__(self, minpoly: Polynomial, group: AbelianGroup,
                 action: list[Polynomial], integral_basis: Matrix,
                 conductor: int | None, label: str | None):
        self.minpoly = minpoly
        self.group = group
        self.n = group.order
        self.action = action
        self.basis_matrix = integral_basis
        self.conductor = conductor
        self.label = label
        n = self.n
        # x^t mod m for t <= 2n-2 (integer rows since m is monic integral)
        self.red_rows: list[list[Fraction]] = []
        cur = [Fraction(0)] * n
        cur[0] = Fraction(1)
        self.red_rows.append(list(cur))
        mc = minpoly.coeffs
        for _ in range(1, max(2 * n - 1, 1)):
            shifted = [Fraction(0)] + cur[:]
            if len(shifted) > n:
                lead = shifted.pop()
                if lead:
                    for i in range(n):
                        shifted[i] -= lead * mc[i]
            cur = shifted + [Fraction(0)] * (n - len(shifted))
            self.red_rows.append(list(cur))
        # power sums and the trace Gram of the power basis
        self.power_sums = self._power_sums(2 * n - 1)
        self.trace_gram = Matrix([[self.power_sums[s + t] for t in range(n)]
                                  for s in range(n)])
        # conj_powers[i][t] = coordinates of (g_i alpha)^t
        self.conj_powers: list[list[Coords]] = []
        for p in action:
            root = self._poly_coords(p)
            powers = [self._one_coords()]
            for _ in range(1, n):
                powers.append(self.mul_coords(powers[-1], root))
            self.conj_powers.append(powers)
        self.conjugate_matrix = from_columns([self.conj_powers[i][1] if n > 1
                                              else self.conj_powers[i][0]
                                              for i in range(n)])
        self._basis_inverse: Matrix | None = None
        self._field_disc: int | None = None

    # -- coordinate helpers ----------------------------------------------------

    def _one_coords(self) -> Coords:
        out = [Fraction(0)] * self.n
        out[0] = Fraction(1)
        return out

    def _poly_coords(self, p: Polynomial) -> Coords:
        out = [Fraction(0)] * self.n
        for t, c in enumerate(p.coeffs):
            if c == 0:
                continue
            row = self.red_rows[t]
            for i in range(self.n):
                out[i] += c * row[i]
        return out

    def _power_sums(self, count: int) -> list[Fraction]:
        """Newton power sums of the roots of m, p_0 .. p_{count-1}."""
        n = self.n
        c = self.minpoly.coeffs
        sums = [Fraction(n)]
        for k in range(1, count):
            if k <= n:
                acc = -k * c[n - k]
                for i in range(1, k):
                    acc -= c[n - i] * sums[k - i]
            else:
                acc = Fraction(0)
                for i in range(1, n + 1):
                    acc -= c[n - i] * sums[k - i]
            sums.append(acc)
        return sums

    def mul_coords(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> Coords:
        n = self.n
        conv = [Fraction(0)] * (2 * n - 1) if n > 1 else [Fraction(0)]
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb != 0:
                    conv[i + j] += ca * cb
        out = list(conv[:n])
        for t in range(n, 2 * n - 1):
            ct = conv[t]
            if ct != 0:
                row = self.red_rows[t]
                for i in range(n):
                    out[i] += ct * row[i]
        return out

    def element_trace(self, coords: Sequence[Fraction]) -> Fraction:
        return sum(c * self.power_sums[t] for t, c in enumerate(coords))

    def apply_element(self, i: int, coords: Sequence[Fraction]) -> Coords:
        """Apply g_i to the element with the given power-basis coordinates."""
        powers = self.conj_powers[i]
        out = [Fraction(0)] * self.n
        for t, c in enumerate(coords):
            if c == 0:
                continue
            row = powers[t]
            for s in range(self.n):
                out[s] += c * row[s]
        return out

    def conjugates(self, coords: Sequence[Fraction]) -> list[Coords]:
        return [self.apply_element(i, coords) for i in range(self.n)]

    # -- discriminants -----------------------------------------------------------

    def discriminant_of_set(self, elements: Sequence[Sequence[Fraction]]) -> Fraction:
        """det(Tr(x_i x_j)) for a set of n field elements, exactly."""
        if len(elements) != self.n:
            raise InputError("discriminant needs exactly n elements")
        p = from_columns([list(e) for e in elements])
        gram = p.transpose() * self.trace_gram * p
        return Fraction(det(gram))

    def field_discriminant(self) -> int:
        """Discriminant of the integral basis; must be a nonzero integer."""
        if self._field_disc is None:
            value = self.discriminant_of_set(self.basis_matrix.columns())
            if value == 0:
                raise InputError("integral basis is linearly dependent")
            if value.denominator != 1:
                raise InputError("integral basis discriminant is not an integer; "
                                 "the given basis is not a ring basis")
            self._field_disc = int(value)
        return self._field_disc

    # -- integral-basis coordinates ----------------------------------------------

    def basis_inverse(self) -> Matrix:
        if self._basis_inverse is None:
            self._basis_inverse = inverse(self.basis_matrix)
        return self._basis_inverse

    def over_integral_basis(self, coords: Sequence[Fraction]) -> Coords:
        return self.basis_inverse().mul_vector(list(coords))

    def is_algebraic_integer(self, coords: Sequence[Fraction]) -> bool:
        return all(c.denominator == 1 for c in self.over_integral_basis(coords))

    # -- minimal polynomial --------------------------------------------------------

    def minimal_polynomial(self, coords: Sequence[Fraction]) -> Polynomial:
        """Monic minimal polynomial (the squarefree part of the characteristic
        polynomial of multiplication by the element)."""
        n = self.n
        powers: list[Coords] = [self._one_coords()]
        for _ in range(n):
            powers.append(self.mul_coords(powers[-1], list(coords)))
        # find the first linear dependency among 1, theta, theta^2, ...
        rows: list[Coords] = []      # reduced echelon rows
        combos: list[Coords] = []    # expression of each row over the powers
        for k, vec in enumerate(powers):
            v = list(vec)
            combo = [Fraction(0)] * (n + 1)
            combo[k] = Fraction(1)
            for row, rc in zip(rows, combos):
                lead = next(i for i, x in enumerate(row) if x != 0)
                if v[lead] != 0:
                    f = v[lead] / row[lead]
                    for i in range(n):
                        v[i] -= f * row[i]
                    for i in range(n + 1):
                        combo[i] -= f * rc[i]
            if all(x == 0 for x in v):
                lead_c = combo[k]
                return Polynomial([c / lead_c for c in combo[: k + 1]])
            rows.append(v)
            combos.append(combo)
        raise AssertionError("no dependency among n+1 powers")


def validate_input(data: AbelianFieldInput) -> NumberField:
    """Check every invariant of the field description and normalise it.

    The action polynomials are reordered so that polynomial i realises the
    abstract group element g_i; the identity polynomial must be first in the
    input.  Raises InputError naming the violated invariant.
    """
    group = data.group
    n = group.order
    m = data.minpoly
    if not m.is_monic() or not m.has_integer_coeffs():
        raise InputError("minimal polynomial must be monic with integer coefficients")
    if m.degree != n:
        raise InputError(f"minimal polynomial degree {m.degree} != group order {n}")
    if len(data.action) != n:
        raise InputError("need exactly one action polynomial per group element")
    if data.action[0] != Polynomial([0, 1]) and n > 1:
        raise InputError("first action polynomial must be the identity x")
    if n == 1 and data.action[0].degree > 0 and data.action[0] != Polynomial([0, 1]):
        raise InputError("first action polynomial must be the identity")

    temp = _ActionTable(m, data.action)
    table = temp.composition_table()
    iso = _match_group(group, table)
    if iso is None:
        raise InputError("action table is not isomorphic to the declared group")
    aligned = [data.action[iso[idx]] for idx in range(n)]

    w = data.integral_basis
    if w.rows != n or w.cols != n:
        raise InputError("integral basis must be an n x n matrix")
    nf = NumberField(m, group, aligned, w, data.conductor, data.label)
    if det(nf.conjugate_matrix) == 0:
        raise InputError("conjugates of alpha are linearly dependent; "
                         "alpha does not generate a normal basis")
    try:
        wdet = det(w)
    except Exception as exc:  # pragma: no cover
        raise InputError(str(exc))
    if wdet == 0:
        raise InputError("integral basis matrix is singular")
    _check_ring_closure(nf)
    nf.field_discriminant()
    return nf


class _ActionTable:
    """Composition table of action polynomials modulo m."""

    def __init__(self, m: Polynomial, action: list[Polynomial]):
        self.m = m
        self.n = m.degree
        self.action = action
        nf = NumberField.__new__(NumberField)
        # minimal bootstrap: reduction rows and conjugate powers only
        nf.minpoly = m
        nf.n = self.n
        nf.red_rows = []
        cur = [Fraction(0)] * self.n
        cur[0] = Fraction(1)
        nf.red_rows.append(list(cur))
        mc = m.coeffs
        for _ in range(1, max(2 * self.n - 1, 1)):
            shifted = [Fraction(0)] + cur[:]
            if len(shifted) > self.n:
                lead = shifted.pop()
                if lead:
                    for i in range(self.n):
                        shifted[i] -= lead * mc[i]
            cur = shifted + [Fraction(0)] * (self.n - len(shifted))
            nf.red_rows.append(list(cur))
        self._nf = nf
        self.roots = [nf._poly_coords(p) for p in action]
        self.powers = []
        for root in self.roots:
            ps = [nf._one_coords()]
            for _ in range(1, self.n):
                ps.append(nf.mul_coords(ps[-1], root))
            self.powers.append(ps)

    def apply(self, i: int, coords: Sequence[Fraction]) -> Coords:
        out = [Fraction(0)] * self.n
        for t, c in enumerate(coords):
            if c == 0:
                continue
            row = self.powers[i][t]
            for s in range(self.n):
                out[s] += c * row[s]
        return out

    def composition_table(self) -> list[list[int]]:
        """table[i][j] = l with p_i(p_j(alpha)) = p_l(alpha); InputError if
        composition leaves the polynomial set."""
        index = {tuple(r): i for i, r in enumerate(map(tuple, self.roots))}
        if len(index) != len(self.roots):
            raise InputError("action polynomials are not pairwise distinct mod m")
        n = len(self.roots)
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                img = tuple(self.apply(i, self.roots[j]))
                l = index.get(img)
                if l is None:
                    raise InputError("action table does not close under composition")
                row.append(l)
            table.append(row)
        return table


def _match_group(group: AbelianGroup, table: list[list[int]]) -> list[int] | None:
    """Isomorphism from the abstract group onto the composition table.

    Returns `iso` with iso[abstract index] = table index, or None.  The first
    isomorphism in the deterministic search order wins.
    """
    n = group.order
    if len(table) != n:
        return None
    for i in range(n):
        for j in range(n):
            if table[i][j] != table[j][i]:
                return None
    # identity of the table group must be index 0 (identity polynomial first)
    if any(table[0][j] != j for j in range(n)):
        return None

    def tbl_pow(x: int, e: int) -> int:
        acc = 0
        base = x
        while e:
            if e & 1:
                acc = table[acc][base]
            base = table[base][base]
            e >>= 1
        return acc

    orders = []
    for x in range(n):
        o = 1
        acc = x
        while acc != 0:
            acc = table[acc][x]
            o += 1
        orders.append(o)
    factors = group.factors
    if not factors:
        return [0]
    candidates = [[x for x in range(n) if orders[x] == d] for d in factors]

    def search(idx: int, chosen: list[int]):
        if idx == len(factors):
            iso = []
            for exps in group.elements:
                acc = 0
                for x, e in zip(chosen, exps):
                    acc = table[acc][tbl_pow(x, e)]
                iso.append(acc)
            if len(set(iso)) == n:
                return iso
            return None
        for x in candidates[idx]:
            result = search(idx + 1, chosen + [x])
            if result is not None:
                return result
        return None

    return search(0, [])


def _check_ring_closure(nf: NumberField):
    """Basis products must have integer coordinates over the basis, and 1
    must lie in the spanned lattice."""
    cols = nf.basis_matrix.columns()
    one = nf._one_coords()
    coords_one = nf.over_integral_basis(one)
    if any(c.denominator != 1 for c in coords_one):
        raise InputError("1 is not an integral combination of the basis")
    for i in range(nf.n):
        for j in range(i, nf.n):
            prod = nf.mul_coords(cols[i], cols[j])
            over = nf.over_integral_basis(prod)
            if any(c.denominator != 1 for c in over):
                raise InputError(
                    "integral basis is not multiplicatively closed "
                    f"(product of basis elements {i + 1} and {j + 1})")
