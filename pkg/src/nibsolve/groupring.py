"""Group rings Z[G] / Q[G] and their cyclotomic-product decomposition.

The decomposition map psi sends h = sum h_j g_j to (chi_1(h), ..., chi_k(h))
over the selected pairwise non-conjugate characters; its inverse first
extends a k-tuple to all n coordinates by the recorded conjugating
automorphisms and then applies the inverse character matrix.  Because the
inverse matrix times |G| has algebraic-integer entries, both directions are
realised here as integer matrices acting on coordinate stacks, which keeps
them exact and cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .cyclotomic import CycElt, cyclotomic_field
from .groups import AbelianGroup, Character, CharacterSystem


class GroupRingElt:
    """Element of Q[G] as a coefficient vector over the fixed element order."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: AbelianGroup, coeffs: Sequence):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if len(cs) != group.order:
            raise ValueError("coefficient vector length must equal |G|")
        self.group = group
        self.coeffs = cs

    @classmethod
    def identity(cls, group: AbelianGroup) -> "GroupRingElt":
        coeffs = [Fraction(0)] * group.order
        coeffs[0] = Fraction(1)
        return cls(group, coeffs)

    @classmethod
    def basis_element(cls, group: AbelianGroup, index: int) -> "GroupRingElt":
        coeffs = [Fraction(0)] * group.order
        coeffs[index] = Fraction(1)
        return cls(group, coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupRingElt)
                and other.group == self.group
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.group.factors, tuple(self.coeffs)))

    def __repr__(self) -> str:
        return f"GroupRingElt({self.coeffs})"

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        self._check(other)
        return GroupRingElt(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "GroupRingElt":
        return GroupRingElt(self.group, [-a for a in self.coeffs])

    def __sub__(self, other: "GroupRingElt") -> "GroupRingElt":
        return self + (-other)

    def scale(self, c) -> "GroupRingElt":
        c = Fraction(c)
        return GroupRingElt(self.group, [a * c for a in self.coeffs])

    def _check(self, other: "GroupRingElt"):
        if other.group != self.group:
            raise ValueError("elements of different group rings")


def gr_mul(a: GroupRingElt, b: GroupRingElt) -> GroupRingElt:
    """Convolution product over the group law."""
    a._check(b)
    group = a.group
    table = group.mul_table()
    out = [Fraction(0)] * group.order
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        row = table[i]
        for j, cb in enumerate(b.coeffs):
            if cb != 0:
                out[row[j]] += ca * cb
    return GroupRingElt(group, out)


@dataclass
class DecomposedElt:
    """Image (c_1, ..., c_k) of a group-ring element, c_i in Q(zeta_{q_i})."""

    system: CharacterSystem
    components: list[CycElt]

    def __post_init__(self):
        if len(self.components) != self.system.k:
            raise ValueError("component count must match the selected characters")

    def __eq__(self, other) -> bool:
        return (isinstance(other, DecomposedElt)
                and other.system is self.system
                and other.components == self.components)

    def mul(self, other: "DecomposedElt") -> "DecomposedElt":
        return DecomposedElt(self.system, [
            a * b for a, b in zip(self.components, other.components)
        ])

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.components)

    def stack(self) -> list[Fraction]:
        out: list[Fraction] = []
        for c in self.components:
            out.extend(c.coords)
        return out


class GroupRingDecomposition:
    """Precomputed forward/inverse matrices for psi on a character system."""

    def __init__(self, system: CharacterSystem):
        self.system = system
        n = system.n
        r = system.r
        amb = system.ambient
        inv_idx = system.group.inverse_table()
        # forward: component i coordinates = fwd[i] @ h  (integer matrices)
        self.fwd: list[list[list[int]]] = []
        for i in range(system.k):
            field = system.fields[i]
            q = system.orders[i]
            mat = [[0] * n for _ in range(field.degree)]
            for j in range(n):
                e = system.zeta_exponent(i, j, q)
                row = field.power_table[e] if q > 1 else field.power_table[0]
                for t in range(field.degree):
                    mat[t][j] += row[t]
            self.fwd.append(mat)
        # inverse: n * h = L @ stack(extended c), one integer matrix
        self.inv_times_n: list[list[int]] = [[0] * system.stack_dim for _ in range(n)]
        for i in range(n):
            gi = inv_idx[i]
            row_out = self.inv_times_n[i]
            for j in range(n):
                sel, s = system.parent_of(j)
                q = system.orders[sel]
                step = r // q
                base = system.stack_offsets[sel]
                e0 = system.expo[j][gi]
                deg = system.fields[sel].degree
                for t in range(deg):
                    m = (e0 + step * ((s * t) % q)) % r if r > 1 else 0
                    row_out[base + t] += amb.power_table[m][0]

    # -- the maps ---------------------------------------------------------------

    def psi_forward(self, h: GroupRingElt) -> DecomposedElt:
        """Apply the selected characters to h (a ring homomorphism)."""
        if h.group != self.system.group:
            raise ValueError("element belongs to a different group")
        comps = []
        for i in range(self.system.k):
            mat = self.fwd[i]
            coords = [sum(row[j] * h.coeffs[j] for j in range(self.system.n)
                          if h.coeffs[j] != 0) + Fraction(0)
                      for row in mat]
            comps.append(self.system.fields[i].element(coords))
        return DecomposedElt(self.system, comps)

    def psi_extend(self, c: DecomposedElt) -> list[CycElt]:
        """Full n-vector with c_i = sigma_i(c_{k_i}) on conjugate positions."""
        out = list(c.components)
        for pos in range(self.system.k, self.system.n):
            sel, s = self.system.parent_of(pos)
            out.append(c.components[sel].automorphism(s))
        return out

    def psi_inverse(self, c: DecomposedElt) -> tuple[GroupRingElt, bool]:
        """Rational group-ring preimage of c plus an exact integrality flag."""
        stack = c.stack()
        n = self.system.n
        coeffs = []
        for i in range(n):
            row = self.inv_times_n[i]
            acc = Fraction(0)
            for pos, x in enumerate(stack):
                if x != 0:
                    acc += row[pos] * x
            coeffs.append(acc / n)
        h = GroupRingElt(self.system.group, coeffs)
        return h, h.is_integral()


def idempotent(system: CharacterSystem, chi: Character) -> list[CycElt]:
    """Coefficient vector of e_chi = (1/|G|) sum_g chi(g^{-1}) g over Q(zeta_r).

    Exposed for validating the decomposition; coefficients are rational
    exactly when chi has order <= 2.
    """
    group = system.group
    amb = system.ambient
    n = group.order
    inv_n = Fraction(1, n)
    out = []
    for g in group.elements:
        val = amb.zeta_power(chi.exponent_on(group.inv(g), system.r))
        out.append(val * inv_n)
    return out


def cyc_convolve(group: AbelianGroup, u: Sequence[CycElt], v: Sequence[CycElt]) -> list[CycElt]:
    """Convolution of two cyclotomic-coefficient group-ring vectors."""
    table = group.mul_table()
    field = u[0].field
    out = [field.zero() for _ in range(group.order)]
    for i, ca in enumerate(u):
        if ca.is_zero():
            continue
        row = table[i]
        for j, cb in enumerate(v):
            if not cb.is_zero():
                out[row[j]] = out[row[j]] + ca * cb
    return out


def vector_rational_part(vec: Sequence[CycElt], group: AbelianGroup) -> GroupRingElt | None:
    """Convert a cyclotomic coefficient vector to Q[G] when all entries are
    rational; returns None otherwise."""
    coeffs = []
    for c in vec:
        if not c.is_rational():
            return None
        coeffs.append(c.rational_value())
    return GroupRingElt(group, coeffs)


def act(h: GroupRingElt, coords: Sequence[Fraction],
        apply_element: Callable[[int, Sequence[Fraction]], Sequence[Fraction]]) -> list[Fraction]:
    """Action (sum a_g g) x = sum a_g g(x) on coordinate vectors.

    `apply_element(i, coords)` must return the coordinates of g_i applied to
    the field element with the given coordinates.
    """
    dim = len(coords)
    out = [Fraction(0)] * dim
    for i, a in enumerate(h.coeffs):
        if a == 0:
            continue
        img = apply_element(i, coords)
        for t in range(dim):
            out[t] += a * img[t]
    return out
