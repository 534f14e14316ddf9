"""Gaussian-period field fixtures and the squarefree-conductor oracle.

A fixture describes the subfield of Q(zeta_f) fixed by a subgroup H of
(Z/fZ)^*, generated by the period alpha = sum_{a in H} zeta_f^a.  For
squarefree f the conjugates of alpha form an integral basis (and alpha is
itself a normal integral basis generator); for non-squarefree f only the
full cyclotomic field is supported, with the power basis of zeta_f as
integral basis and a deterministic search for a primitive element with
independent conjugates (zeta_f itself never qualifies when f is not
squarefree, its conjugates sum to zero).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import CycElt, CycField, cyclotomic_field
from .groups import from_presentation
from .linalg import Matrix, from_columns, solve_overdetermined_many
from .numberfield import AbelianFieldInput, InputError
from .polynomials import Polynomial, euler_phi, is_squarefree


class UnsupportedFixtureError(ValueError):
    """Fixture shape outside the supported combinations."""


def hilbert_speiser_check(conductor: int) -> bool:
    """Normal integral basis existence criterion: conductor squarefree."""
    if conductor < 1:
        raise ValueError("conductor must be positive")
    return is_squarefree(conductor)


# ---------------------------------------------------------------------------
# structure of (Z/fZ)^*

def _primitive_root(pk: int, p: int) -> int:
    order = euler_phi(pk)
    for g in range(2, pk):
        if gcd(g, pk) != 1:
            continue
        acc = 1
        ok = True
        for _ in range(order - 1):
            acc = acc * g % pk
            if acc == 1:
                ok = False
                break
        if ok:
            return g
    raise AssertionError(f"no primitive root mod {pk}")


def unit_group_generators(f: int) -> tuple[list[int], list[int]]:
    """Generators of (Z/fZ)^* with their orders, via CRT per prime power."""
    if f < 1:
        raise ValueError("modulus must be positive")
    factors = []
    m = f
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, p ** e))
        p += 1
    if m > 1:
        factors.append((m, m))
    gens: list[int] = []
    orders: list[int] = []

    def crt_lift(x: int, pk: int) -> int:
        rest = f // pk
        if rest == 1:
            return x % f
        # value congruent to x mod pk and 1 mod rest
        inv = pow(rest, -1, pk)
        return (1 + rest * ((x - 1) * inv % pk)) % f

    for p, pk in factors:
        if p == 2:
            if pk == 2:
                continue
            if pk == 4:
                gens.append(crt_lift(3, 4))
                orders.append(2)
            else:
                gens.append(crt_lift(pk - 1, pk))
                orders.append(2)
                gens.append(crt_lift(5, pk))
                orders.append(pk // 4)
        else:
            gens.append(crt_lift(_primitive_root(pk, p), pk))
            orders.append(euler_phi(pk))
    return gens, orders


def _discrete_log_table(f: int, gens: list[int], orders: list[int]) -> dict[int, tuple[int, ...]]:
    """Exponent tuple of every unit mod f over the generator set."""
    import itertools

    table: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*[range(o) for o in orders]):
        value = 1 % f
        for g, e in zip(gens, exps):
            value = value * pow(g, e, f) % f
        if value not in table:
            table[value] = exps
    return table


def subgroup_closure(f: int, gens: list[int]) -> list[int]:
    """Multiplicative closure of the given units mod f, always containing 1."""
    for a in gens:
        if gcd(a % f, f) != 1:
            raise InputError(f"subgroup generator {a} is not a unit mod {f}")
    elements = {1 % f}
    frontier = [1 % f]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % f
            if y not in elements:
                elements.add(y)
                frontier.append(y)
    return sorted(elements)


def true_conductor(f: int, subgroup: list[int]) -> int:
    """Smallest divisor f' of f whose reduction kernel lies inside H."""
    hset = set(subgroup)
    units = [a for a in range(1, f + 1) if gcd(a, f) == 1] if f > 1 else [0]
    for fp in range(1, f + 1):
        if f % fp != 0:
            continue
        kernel_ok = True
        for a in units:
            if a % fp == 1 % fp and a not in hset:
                kernel_ok = False
                break
        if kernel_ok:
            return fp
    return f


# ---------------------------------------------------------------------------
# fixture construction

def _period(field: CycField, coset: list[int]) -> CycElt:
    acc = field.zero()
    for a in coset:
        acc = acc + field.zeta_power(a)
    return acc


def _candidate_generators(field: CycField):
    """Deterministic stream of primitive-element candidates for the full
    cyclotomic field: zeta, then prefix sums of powers with and without 1."""
    yield field.zeta_power(1)
    acc = field.zero()
    for s in range(1, field.degree + 1):
        acc = acc + field.zeta_power(s)
        yield field.one() + acc
        yield acc


def gaussian_period_fixture(f: int, subgroup: list[int] | None = None,
                            label: str | None = None) -> AbelianFieldInput:
    """Field description for the fixed field of H inside Q(zeta_f).

    Supported shapes: squarefree f with any subgroup H (period basis), or
    arbitrary f >= 3 with trivial H (full cyclotomic field, power basis).
    """
    if f < 3:
        raise UnsupportedFixtureError("conductor parameter must be >= 3")
    subgroup = subgroup or []
    h_elements = subgroup_closure(f, subgroup)
    squarefree = is_squarefree(f)
    if not squarefree and len(h_elements) > 1:
        raise UnsupportedFixtureError(
            "non-squarefree cyclotomic level with a nontrivial subgroup "
            "is not a supported fixture shape")

    field = cyclotomic_field(f)
    gens, orders = unit_group_generators(f)
    dlog = _discrete_log_table(f, gens, orders)
    assert len(dlog) == euler_phi(f)

    relations = [[orders[j] if t == j else 0 for t in range(len(gens))]
                 for j in range(len(gens))]
    for h in subgroup:
        relations.append(list(dlog[h % f]))
    if not gens:
        # f is so small that (Z/f)^* is trivial; only f = 1, 2 -- excluded
        raise UnsupportedFixtureError("degenerate unit group")
    pres = from_presentation(len(gens), relations)
    group = pres.group
    n = group.order
    assert n * len(h_elements) == euler_phi(f)

    # coset representative for each abstract group element
    reps: list[int] = []
    for exps in group.elements:
        w = pres.lift(exps)
        value = 1 % f
        for g, e in zip(gens, w):
            value = value * pow(g, e, f) % f  # pow handles negative exponents
        reps.append(value)
    assert reps[0] % f == 1 % f

    if squarefree:
        alpha = _period(field, h_elements)
        conjugates = [
            _period(field, [c * a % f for a in h_elements]) for c in reps
        ]
        alpha_powers = _independent_powers(field, alpha, n)
        if alpha_powers is None:
            raise AssertionError("Gaussian period unexpectedly not primitive")
    else:
        alpha = None
        conjugates = []
        alpha_powers = None
        for cand in _candidate_generators(field):
            powers = _independent_powers(field, cand, n)
            if powers is None:
                continue
            conj = [cand.automorphism(c) for c in reps]
            rank_cols = [x.coords for x in conj]
            if _rank(rank_cols) == n:
                alpha, conjugates, alpha_powers = cand, conj, powers
                break
        if alpha is None:
            raise AssertionError("no primitive element with independent "
                                 f"conjugates found for f={f}")

    minpoly = _minimal_polynomial(alpha_powers, n)
    if not minpoly.has_integer_coeffs() or not minpoly.is_monic():
        raise AssertionError("fixture minimal polynomial is not integral monic")

    power_cols = [p.coords for p in alpha_powers[:n]]
    targets = [c.coords for c in conjugates]
    if squarefree:
        basis_targets = targets  # integral basis = conjugates of the period
    else:
        basis_targets = [field.zeta_power(j).coords for j in range(n)]
    sols = solve_overdetermined_many(power_cols, targets + basis_targets)
    assert sols is not None
    action = [Polynomial(sols[i]) for i in range(n)]
    basis_cols = [sols[n + j] for j in range(n)]

    conductor = true_conductor(f, h_elements)
    if label is None:
        if len(h_elements) == 1:
            label = f"cyclotomic-f{f}"
        else:
            label = f"period-f{f}-H" + ".".join(str(x) for x in subgroup)
    return AbelianFieldInput(
        minpoly=minpoly,
        group=group,
        action=action,
        integral_basis=from_columns(basis_cols),
        conductor=conductor,
        label=label,
    )


def _independent_powers(field: CycField, alpha: CycElt, n: int) -> list[CycElt] | None:
    """[1, alpha, ..., alpha^n] when the first n are independent, else None."""
    powers = [field.one()]
    for _ in range(n):
        powers.append(powers[-1] * alpha)
    if _rank([p.coords for p in powers[:n]]) != n:
        return None
    return powers


def _rank(vectors: list[list[Fraction]]) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    width = len(rows[0])
    for col in range(width):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                fct = rows[i][col] / prow[col]
                for j in range(col, width):
                    rows[i][j] -= fct * prow[j]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _minimal_polynomial(powers: list[CycElt], n: int) -> Polynomial:
    """Monic degree-n polynomial with powers[n] = -(sum of lower terms)."""
    cols = [p.coords for p in powers[:n]]
    target = [-c for c in powers[n].coords]
    sol = solve_overdetermined_many(cols, [target])
    assert sol is not None
    return Polynomial(sol[0] + [Fraction(1)])
