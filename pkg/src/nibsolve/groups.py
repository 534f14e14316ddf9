"""Finite abelian groups, their duals, and non-conjugate character selection.

Groups are given by invariant factors d_1 | d_2 | ... | d_m (each > 1);
elements and characters are exponent tuples enumerated in a fixed
lexicographic order with the identity / trivial character first.  All
character values are roots of unity in Q(zeta_r), r the group exponent,
and are tracked as integer exponents of zeta_r rather than field elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .cyclotomic import CycField, CycElt, cyclotomic_field
from .linalg import Matrix, smith_normal_form, inverse, from_columns
from .polynomials import euler_phi


class AbelianGroup:
    """Abelian group in invariant-factor form with a fixed element order."""

    def __init__(self, factors: Sequence[int]):
        factors = tuple(int(d) for d in factors)
        for d in factors:
            if d <= 1:
                raise ValueError("invariant factors must be > 1")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        self.factors = factors
        self.order = 1
        for d in factors:
            self.order *= d
        self.exponent = factors[-1] if factors else 1
        self.elements: list[tuple[int, ...]] = list(
            itertools.product(*[range(d) for d in factors])
        ) if factors else [()]
        self.index = {g: i for i, g in enumerate(self.elements)}
        self._mul_table: list[list[int]] | None = None
        self._inv_table: list[int] | None = None

    def __repr__(self) -> str:
        return f"AbelianGroup{self.factors}"

    def __eq__(self, other) -> bool:
        return isinstance(other, AbelianGroup) and other.factors == self.factors

    def __hash__(self):
        return hash(("AbelianGroup", self.factors))

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((-x) % d for x, d in zip(a, self.factors))

    def power(self, a: tuple[int, ...], e: int) -> tuple[int, ...]:
        return tuple((x * e) % d for x, d in zip(a, self.factors))

    def element_order(self, a: tuple[int, ...]) -> int:
        if not self.factors:
            return 1
        return lcm(*[d // gcd(d, x) for x, d in zip(a, self.factors)])

    def mul_table(self) -> list[list[int]]:
        """Index-level multiplication table (cached)."""
        if self._mul_table is None:
            idx = self.index
            self._mul_table = [
                [idx[self.mul(a, b)] for b in self.elements] for a in self.elements
            ]
        return self._mul_table

    def inverse_table(self) -> list[int]:
        if self._inv_table is None:
            self._inv_table = [self.index[self.inv(a)] for a in self.elements]
        return self._inv_table


@dataclass(frozen=True)
class Character:
    """Character of an abelian group, stored as an exponent tuple.

    chi(g) = zeta_r ** (sum_j e_j * (r / d_j) * a_j) for g = (a_1, ..., a_m).
    """

    factors: tuple[int, ...]
    exponents: tuple[int, ...]

    @property
    def order(self) -> int:
        if not self.factors:
            return 1
        return lcm(*[d // gcd(d, e) for e, d in zip(self.exponents, self.factors)])

    def exponent_on(self, g: tuple[int, ...], r: int) -> int:
        """Exponent t with chi(g) = zeta_r^t."""
        total = 0
        for e, a, d in zip(self.exponents, g, self.factors):
            total += e * (r // d) * a
        return total % r if r > 1 else 0

    def value(self, g: tuple[int, ...], field: CycField) -> CycElt:
        return field.zeta_power(self.exponent_on(g, field.q))

    def product(self, other: "Character") -> "Character":
        return Character(self.factors, tuple(
            (a + b) % d for a, b, d in zip(self.exponents, other.exponents, self.factors)
        ))

    def power(self, s: int) -> "Character":
        return Character(self.factors, tuple(
            (e * s) % d for e, d in zip(self.exponents, self.factors)
        ))


def dual_group(group: AbelianGroup) -> list[Character]:
    """All irreducible characters, trivial first, in the fixed element order."""
    return [Character(group.factors, exps) for exps in group.elements]


def multiplicity_check(group: AbelianGroup) -> dict[int, int]:
    """Map q -> (number of elements of order q) / phi(q), omitting zeros.

    The count is always divisible by phi(q); a failure would indicate a bug
    in the element enumeration and raises AssertionError.
    """
    counts: dict[int, int] = {}
    for g in group.elements:
        q = group.element_order(g)
        counts[q] = counts.get(q, 0) + 1
    out = {}
    for q, nq in sorted(counts.items()):
        phi = euler_phi(q)
        assert nq % phi == 0, "element-order count not divisible by phi(q)"
        out[q] = nq // phi
    return out


def select_nonconjugate(chars: Sequence[Character]) -> tuple[list[int], dict[int, tuple[int, int]]]:
    """Greedy co-prime-power removal on the given character list.

    Returns (selected, conj_map): `selected` holds indices into `chars` of a
    maximal pairwise non-conjugate subset (earliest representative of each
    conjugacy class wins), and conj_map sends every removed index i to
    (selected_index, s) with chars[i] == chars[selected_index] ** s and
    gcd(s, order) = 1.
    """
    index_of = {c.exponents: i for i, c in enumerate(chars)}
    selected: list[int] = []
    conj_map: dict[int, tuple[int, int]] = {}
    claimed: set[int] = set()
    for i, chi in enumerate(chars):
        if i in claimed:
            continue
        selected.append(i)
        claimed.add(i)
        q = chi.order
        for s in range(2, q):
            if gcd(s, q) != 1:
                continue
            j = index_of[chi.power(s).exponents]
            if j not in claimed:
                claimed.add(j)
                conj_map[j] = (i, s)
    return selected, conj_map


class CharacterSystem:
    """Reordered character data backing the group-ring decomposition.

    Characters are reordered so the selected pairwise non-conjugate ones come
    first (positions 0..k-1); each later position i carries the selected
    position k_i and the automorphism exponent s_i with
    sigma_i(chi_{k_i}) = chi_i.  The full character matrix A is kept as a
    matrix of integer exponents of zeta_r.
    """

    def __init__(self, group: AbelianGroup):
        self.group = group
        self.n = group.order
        self.r = group.exponent
        self.ambient = cyclotomic_field(self.r)
        original = dual_group(group)
        selected, conj_map = select_nonconjugate(original)
        order_map = list(selected) + [i for i in range(self.n) if i not in selected]
        self.original_order = order_map
        self.chars: list[Character] = [original[i] for i in order_map]
        self.k = len(selected)
        pos_of_original = {orig: pos for pos, orig in enumerate(order_map)}
        # conjugacy bookkeeping in reordered positions
        self.conjugate_of: list[tuple[int, int]] = []
        for pos in range(self.k, self.n):
            orig = order_map[pos]
            sel_orig, s = conj_map[orig]
            self.conjugate_of.append((pos_of_original[sel_orig], s))
        self.orders = [c.order for c in self.chars]
        self.fields: list[CycField] = [cyclotomic_field(q) for q in self.orders[: self.k]]
        # exponent matrix: chars[i](g_j) = zeta_r ** expo[i][j]
        self.expo = [
            [c.exponent_on(g, self.r) for g in group.elements] for c in self.chars
        ]
        self.component_degrees = [f.degree for f in self.fields]
        self.stack_offsets = []
        off = 0
        for d in self.component_degrees:
            self.stack_offsets.append(off)
            off += d
        self.stack_dim = off  # equals n by the multiplicity relation

    # -- selected-character helpers -------------------------------------------

    def parent_of(self, i: int) -> tuple[int, int]:
        """(selected position, automorphism exponent) for any position i."""
        if i < self.k:
            return i, 1
        return self.conjugate_of[i - self.k]

    def zeta_exponent(self, i: int, j: int, base_order: int) -> int:
        """chars[i](g_j) as an exponent of zeta_{base_order} (must divide out)."""
        e = self.expo[i][j]
        step = self.r // base_order
        if e % step != 0:
            raise ValueError("character value not a power of the requested root")
        return (e // step) % base_order if base_order > 1 else 0

    def character_matrix(self) -> Matrix:
        """The full matrix A = (chi_i(g_j)) over Q(zeta_r), reordered rows."""
        amb = self.ambient
        return Matrix([
            [amb.zeta_power(self.expo[i][j]) for j in range(self.n)]
            for i in range(self.n)
        ])

    def character_matrix_inverse(self) -> Matrix:
        """Closed-form inverse: (A^{-1})_{ij} = chi_j(g_i^{-1}) / n."""
        amb = self.ambient
        inv_idx = self.group.inverse_table()
        n = self.n
        return Matrix([
            [amb.zeta_power(self.expo[j][inv_idx[i]]) * Fraction(1, n)
             for j in range(n)]
            for i in range(n)
        ])


@dataclass
class QuotientPresentation:
    """Z^g modulo a relation lattice, normalised to invariant factors."""

    group: AbelianGroup
    u_matrix: Matrix          # unimodular row transform from the SNF
    u_inverse: Matrix
    diag: list[int]           # full SNF diagonal (including 1s)
    kept: list[int]           # positions with diagonal > 1

    def project(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Map a Z^g vector to its exponent tuple in the quotient."""
        w = self.u_matrix.mul_vector(list(vec))
        return tuple(int(w[i]) % self.diag[i] for i in self.kept)

    def lift(self, exps: Sequence[int]) -> list[int]:
        """A preimage in Z^g of the given exponent tuple."""
        full = [0] * len(self.diag)
        for pos, e in zip(self.kept, exps):
            full[pos] = int(e)
        return [int(x) for x in self.u_inverse.mul_vector(full)]


def from_presentation(num_gens: int, relations: Sequence[Sequence[int]]) -> QuotientPresentation:
    """Normalise a generator/relation presentation via Smith normal form.

    `relations` are integer vectors in Z^num_gens; the group is
    Z^num_gens / <relations>.  Must be finite (every generator subject to a
    relation), else ValueError.
    """
    if not relations:
        raise ValueError("a finite group needs at least one relation per generator")
    cols = [list(rel) for rel in relations]
    mat = from_columns(cols) if cols else Matrix([[0]] * num_gens)
    d, u, _v = smith_normal_form(mat)
    diag = []
    for i in range(num_gens):
        entry = d.data[i][i] if i < d.cols else 0
        if entry == 0:
            raise ValueError("presentation does not define a finite group")
        diag.append(abs(entry))
    kept = [i for i, x in enumerate(diag) if x > 1]
    group = AbelianGroup([diag[i] for i in kept])
    u_inv = Matrix([[int(x) for x in row] for row in inverse(u).data])
    return QuotientPresentation(group=group, u_matrix=u, u_inverse=u_inv,
                                diag=diag, kept=kept)
