"""Units of the cyclotomic product ring and cosets modulo group-ring units.

Two units a, b of Gamma = Z[zeta_{q_1}] x ... x Z[zeta_{q_k}] represent the
same coset of U(Z[G]) exactly when both psi^{-1}(a/b) and psi^{-1}(b/a) have
integer coefficients.  Since n * A^{-1} has algebraic-integer entries
(n = |G|), the integrality of psi^{-1}(c) for an integral element c is
decided by its residue modulo n alone; in particular every unit congruent to
1 mod n*Gamma lies in psi(U(Z[G])).  The breadth-first closure below
therefore works in (Z/n)-arithmetic (batched with numpy over the kept
representatives), storing one exact representative per coset for later
exact use.

The closure is seeded from torsion units and cyclotomic units of every
cyclotomic level of each component; on the supported class-number-one orders
this generating set has full index in U(Gamma) (the real class numbers are
one and no level has more than three distinct prime factors), which is what
makes an exhausted closure a genuine nonexistence certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .cyclotomic import CycElt, CycField
from .groups import AbelianGroup, multiplicity_check
from .groupring import DecomposedElt, GroupRingDecomposition, GroupRingElt
from .polynomials import euler_phi, prime_factors

DEFAULT_COSET_CAP = 20_000


# ---------------------------------------------------------------------------
# Product ring elements

@dataclass
class ProductRing:
    """Ordered component fields matching the selected characters."""

    fields: list[CycField]

    @classmethod
    def for_system(cls, system) -> "ProductRing":
        return cls(fields=list(system.fields))

    @property
    def k(self) -> int:
        return len(self.fields)

    def one(self) -> "ProductElt":
        return ProductElt([f.one() for f in self.fields])

    def element(self, components: Sequence[CycElt]) -> "ProductElt":
        if len(components) != self.k:
            raise ValueError("wrong component count")
        return ProductElt(list(components))


@dataclass
class ProductElt:
    """Element of the product ring, componentwise arithmetic."""

    components: list[CycElt]

    def __mul__(self, other: "ProductElt") -> "ProductElt":
        return ProductElt([a * b for a, b in zip(self.components, other.components)])

    def inverse(self) -> "ProductElt":
        return ProductElt([a.inverse() for a in self.components])

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.components)

    def is_unit(self) -> bool:
        """Integral with norm +-1 in every component."""
        for c in self.components:
            if not c.is_integral():
                return False
            if abs(c.norm()) != 1:
                return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductElt) and other.components == self.components

    def __repr__(self) -> str:
        return f"ProductElt({self.components})"

    def decomposed(self, system) -> DecomposedElt:
        return DecomposedElt(system, list(self.components))


# ---------------------------------------------------------------------------
# Unit generating sets

@dataclass
class UnitGenSet:
    """Verified generators of the unit group of one component field."""

    field: CycField
    torsion: list[CycElt]
    cyclotomic: list[CycElt]

    def all_generators(self) -> list[CycElt]:
        return self.torsion + self.cyclotomic


def unit_generators(field: CycField) -> UnitGenSet:
    """Torsion plus cyclotomic units of every cyclotomic level of the field.

    Levels e | q contribute the ratios (1 - z_e^a)/(1 - z_e) and, when e has
    at least two distinct prime factors (so 1 - z_e is itself a unit), the
    elements 1 - z_e^a.  Subfield levels matter: for composite q the
    top-level ratios alone have index > 1 in the unit group.  Each candidate
    is verified to be integral of norm +-1 before being admitted.
    """
    q = field.q
    torsion: list[CycElt] = [field.from_rational(-1)]
    if q > 2:
        torsion.append(field.zeta_power(1))
    seen: set[tuple] = set()
    torsion_values = set()
    for j in range(q):
        torsion_values.add(tuple(field.zeta_power(j).coords))
        torsion_values.add(tuple((-field.zeta_power(j)).coords))
    cyclotomic: list[CycElt] = []

    def admit(u: CycElt):
        key = tuple(u.coords)
        if key in seen or key in torsion_values:
            return
        if not u.is_integral() or abs(u.norm()) != 1:
            return
        seen.add(key)
        cyclotomic.append(u)

    for e in range(3, q + 1):
        if q % e != 0:
            continue
        step = q // e
        one = field.one()
        base = one - field.zeta_power(step)  # 1 - z_e
        if len(prime_factors(e)) >= 2:
            admit(base)
        for a in range(2, e // 2 + 1):
            if gcd(a, e) != 1:
                continue
            num = one - field.zeta_power((step * a) % q)  # 1 - z_e^a
            admit(num / base)
    return UnitGenSet(field=field, torsion=torsion, cyclotomic=cyclotomic)


# ---------------------------------------------------------------------------
# Theorem-style index bound

def index_bound(group: AbelianGroup) -> int:
    """Upper bound on the index of the group-ring units inside U(Gamma):
    n^n divided by prod over q | n of (q^phi(q) / prod_{p|q} p^{phi(q)/(p-1)})^{a_q},
    where a_q counts cyclic subgroups of order q.  Returned as an exact
    integer (ceiling when the expression is not integral)."""
    n = group.order
    a_map = multiplicity_check(group)
    value = Fraction(n) ** n
    for q, a_q in a_map.items():
        if q == 1:
            continue
        phi = euler_phi(q)
        term = Fraction(q) ** phi
        for p in prime_factors(q):
            exp, rem = divmod(phi, p - 1)
            assert rem == 0
            term /= Fraction(p) ** exp
        value /= term ** a_q
    return -((-value.numerator) // value.denominator)


# ---------------------------------------------------------------------------
# Modular congruence machinery

class CongruenceContext:
    """Decides congruence modulo psi(U(Z[G])) from residues mod n = |G|.

    Residues are stored as int64 numpy vectors over the concatenated power
    bases of the components (total dimension n), and the integrality test of
    psi^{-1} is one (N, n) @ (n, n) matmul mod n, so a candidate can be
    screened against every kept representative at once.
    """

    def __init__(self, decomposition: GroupRingDecomposition):
        self.decomposition = decomposition
        system = decomposition.system
        self.system = system
        self.n = system.n
        n = self.n
        self.degrees = [f.degree for f in system.fields]
        self.offsets = list(system.stack_offsets)
        self.dim = system.stack_dim
        # multiplication tensors per component: (a*b)_t = sum T[t,u,v] a_u b_v
        self.mult_tensors: list[np.ndarray] = []
        for f in system.fields:
            d = f.degree
            tensor = np.zeros((d, d, d), dtype=np.int64)
            for u in range(d):
                for v in range(d):
                    if u + v < d:
                        tensor[u + v, u, v] = 1
                    else:
                        row = f.power_table[u + v]
                        for t in range(d):
                            tensor[t, u, v] = row[t] % n
            self.mult_tensors.append(np.mod(tensor, n))
        # integrality test matrix: stack -> n*psi^{-1} coefficients (mod n)
        self.int_test = np.array(
            [[v % n for v in row] for row in decomposition.inv_times_n],
            dtype=np.int64).T  # transposed: stack_row @ int_test
        # mod-n images of psi(+-g), used to canonicalise coset labels
        group = system.group
        self.torsion_images: list[np.ndarray] = []
        for idx in range(group.order):
            for sign in (1, -1):
                h = GroupRingElt(group, [sign if t == idx else 0
                                         for t in range(group.order)])
                dec = decomposition.psi_forward(h)
                self.torsion_images.append(self.image(ProductElt(dec.components)))
        self.torsion_matrix = np.stack(self.torsion_images)

    # -- residue vectors -------------------------------------------------------

    def image(self, elt: ProductElt) -> np.ndarray:
        n = self.n
        out = np.empty(self.dim, dtype=np.int64)
        pos = 0
        for comp in elt.components:
            for c in comp.coords:
                assert c.denominator == 1
                out[pos] = int(c) % n
                pos += 1
        return out

    def image_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Componentwise product of two residue stacks."""
        out = np.empty(self.dim, dtype=np.int64)
        for tensor, off, d in zip(self.mult_tensors, self.offsets, self.degrees):
            au = a[off:off + d]
            bv = b[off:off + d]
            out[off:off + d] = np.mod(np.einsum("tuv,u,v->t", tensor, au, bv), self.n)
        return out

    def batch_mul(self, stacks: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Multiply every row of `stacks` by the fixed residue stack b."""
        out = np.empty_like(stacks)
        for tensor, off, d in zip(self.mult_tensors, self.offsets, self.degrees):
            mult = np.mod(np.einsum("tuv,v->tu", tensor, b[off:off + d]), self.n)
            out[:, off:off + d] = np.mod(stacks[:, off:off + d] @ mult.T, self.n)
        return out

    # -- the decision tests ----------------------------------------------------

    def in_group_ring(self, stack: np.ndarray) -> bool:
        """Whether an exact integral element with this residue pulls back to
        Z[G] under psi^{-1} (exact by the mod-n factorisation)."""
        return bool(np.all(np.mod(stack @ self.int_test, self.n) == 0))

    def batch_in_group_ring(self, stacks: np.ndarray) -> np.ndarray:
        return np.all(np.mod(stacks @ self.int_test, self.n) == 0, axis=1)

    def congruent_against(self, img: np.ndarray, inv_img: np.ndarray,
                          rep_imgs: np.ndarray, rep_invs: np.ndarray) -> int:
        """Index of the first representative congruent to (img, inv_img), or -1."""
        if len(rep_imgs) == 0:
            return -1
        forward = self.batch_in_group_ring(self.batch_mul(rep_invs, img))
        if not forward.any():
            return -1
        idxs = np.nonzero(forward)[0]
        back = self.batch_in_group_ring(self.batch_mul(rep_imgs[idxs], inv_img))
        hits = idxs[np.nonzero(back)[0]]
        return int(hits[0]) if len(hits) else -1

    def canonical_label(self, img: np.ndarray) -> bytes:
        """Minimum residue over all psi(+-g) translates; equal labels imply
        equal cosets (the translate set lies in psi(U(Z[G])))."""
        translated = self.batch_mul(self.torsion_matrix, img)
        return min(map(bytes, translated.astype(np.uint8)))


def congruent_mod_unitZG(a: ProductElt, b: ProductElt,
                         decomposition: GroupRingDecomposition) -> bool:
    """True iff a and b are congruent modulo the group-ring units.

    Tests both quotient directions: a/b and b/a must both pull back into
    Z[G] under psi^{-1}.
    """
    if not a.is_unit() or not b.is_unit():
        raise ValueError("congruence test requires units of the product ring")
    ctx = CongruenceContext(decomposition)
    a_img, b_img = ctx.image(a), ctx.image(b)
    a_inv, b_inv = ctx.image(a.inverse()), ctx.image(b.inverse())
    return (ctx.in_group_ring(ctx.image_mul(a_img, b_inv))
            and ctx.in_group_ring(ctx.image_mul(b_img, a_inv)))


def congruent_exact(a: ProductElt, b: ProductElt,
                    decomposition: GroupRingDecomposition) -> bool:
    """Reference congruence test by exact division (independent of the
    modular shortcut; used for post-hoc verification)."""
    system = decomposition.system
    quotient = a * b.inverse()
    reverse = b * a.inverse()
    if not quotient.is_integral() or not reverse.is_integral():
        return False
    _, fwd_ok = decomposition.psi_inverse(quotient.decomposed(system))
    _, rev_ok = decomposition.psi_inverse(reverse.decomposed(system))
    return fwd_ok and rev_ok


# ---------------------------------------------------------------------------
# Coset enumeration (incremental abelian closure)

@dataclass
class CosetRepSet:
    """Coset representatives of U(Z[G]) in U(Gamma), identity first."""

    representatives: list[ProductElt]
    complete: bool
    generators: list[ProductElt]
    cap: int


class CosetRep:
    """One coset representative: residue data plus a lazily built exact
    element (materialised only when a solve candidate actually needs it)."""

    __slots__ = ("index", "image", "inv_image", "_parent", "_generator", "_exact")

    def __init__(self, index: int, image: np.ndarray, inv_image: np.ndarray,
                 parent: "CosetRep | None", generator: ProductElt | None,
                 exact: ProductElt | None = None):
        self.index = index
        self.image = image
        self.inv_image = inv_image
        self._parent = parent
        self._generator = generator
        self._exact = exact

    def exact(self) -> ProductElt:
        if self._exact is None:
            self._exact = self._parent.exact() * self._generator
        return self._exact


class CosetEnumerator:
    """Enumerates coset representatives of U(Z[G]) in U(Gamma).

    The quotient is abelian, so the closure processes one generator at a
    time: it finds the minimal power e of the generator that lands in the
    subgroup built so far (a batched membership scan per power) and then
    extends every known coset by the e-1 fresh powers, which are distinct
    cosets by minimality.  This costs O(|V| * |X|) scan rows in total, with
    no pairwise non-congruence testing.  Representatives stream out with the
    identity first, in a deterministic order.

    After iteration finishes, `complete` tells whether the closure stabilised
    (True) or the cap stopped it (False).
    """

    def __init__(self, decomposition: GroupRingDecomposition,
                 ring: ProductRing | None = None,
                 cap: int = DEFAULT_COSET_CAP,
                 extra_units: Sequence[tuple[int, CycElt]] | None = None):
        self.decomposition = decomposition
        self.system = decomposition.system
        self.ring = ring or ProductRing.for_system(self.system)
        self.cap = cap
        self.ctx = CongruenceContext(decomposition)
        self.complete: bool | None = None
        self.generators: list[ProductElt] = []
        for i, f in enumerate(self.ring.fields):
            gens = unit_generators(f)
            for u in gens.all_generators():
                self.generators.append(self._embed(i, u))
        for i, u in (extra_units or []):
            self.generators.append(self._embed(i, u))

    def _embed(self, comp: int, u: CycElt) -> ProductElt:
        parts = [f.one() for f in self.ring.fields]
        parts[comp] = u
        return ProductElt(parts)

    def __iter__(self) -> Iterator[CosetRep]:
        ctx = self.ctx
        dim = ctx.dim
        one = self.ring.one()
        one_img = ctx.image(one)
        self.complete = None

        capacity = 256
        rep_imgs = np.zeros((capacity, dim), dtype=np.int64)
        rep_invs = np.zeros((capacity, dim), dtype=np.int64)
        reps: list[CosetRep] = []

        def append(rep: CosetRep):
            nonlocal capacity, rep_imgs, rep_invs
            if rep.index == capacity:
                capacity *= 2
                rep_imgs = np.vstack([rep_imgs, np.zeros_like(rep_imgs)])
                rep_invs = np.vstack([rep_invs, np.zeros_like(rep_invs)])
            rep_imgs[rep.index] = rep.image
            rep_invs[rep.index] = rep.inv_image
            reps.append(rep)

        identity = CosetRep(0, one_img, one_img.copy(), None, None, exact=one)
        append(identity)
        yield identity

        for g in self.generators:
            g_img = ctx.image(g)
            g_inv = ctx.image(g.inverse())
            # minimal e >= 1 with g^e congruent to a known coset
            power_img, power_inv = g_img, g_inv
            e = 1
            while ctx.congruent_against(power_img, power_inv,
                                        rep_imgs[: len(reps)],
                                        rep_invs[: len(reps)]) < 0:
                power_img = ctx.image_mul(power_img, g_img)
                power_inv = ctx.image_mul(power_inv, g_inv)
                e += 1
                if e > self.cap:
                    self.complete = False
                    return
            if e == 1:
                continue
            # cosets r * g^j, 0 < j < e, are all new and pairwise distinct
            block = len(reps)
            prev_imgs = rep_imgs[:block].copy()
            prev_invs = rep_invs[:block].copy()
            for j in range(1, e):
                new_imgs = ctx.batch_mul(prev_imgs, g_img)
                new_invs = ctx.batch_mul(prev_invs, g_inv)
                for t in range(block):
                    base = reps[(j - 1) * block + t]
                    rep = CosetRep(len(reps), new_imgs[t], new_invs[t], base, g)
                    if len(reps) >= self.cap:
                        self.complete = False
                        return
                    append(rep)
                    yield rep
                prev_imgs, prev_invs = new_imgs, new_invs
        self.complete = True


def coset_representatives(decomposition: GroupRingDecomposition,
                          ring: ProductRing | None = None,
                          cap: int = DEFAULT_COSET_CAP) -> CosetRepSet:
    """Complete set of coset representatives (spec surface).

    On cap overflow the partial set is returned with complete=False; callers
    must then treat an exhausted search as inconclusive.
    """
    enum = CosetEnumerator(decomposition, ring=ring, cap=cap)
    reps = [rep.exact() for rep in enum]
    return CosetRepSet(representatives=reps, complete=bool(enum.complete),
                       generators=list(enum.generators), cap=cap)
