"""The normal-integral-basis solver pipeline.

Given a validated abelian field, the solver scales alpha by the discriminant
D of its conjugates, expresses the integral basis over the conjugates of
alpha/D by an exact linear solve (the integer matrix b), pushes the columns
of b through the character decomposition to get one ideal J_i per selected
character, finds a generator d_i of each, and then walks coset
representatives u of the group-ring units inside U(Gamma): the first u for
which psi^{-1}(u*d) is integral and t*(alpha/D) passes the two-part
certificate (algebraic integer, conjugate discriminant equal to the field
discriminant) yields the generator.  Exhausting a complete coset set proves
nonexistence; hitting a resource cap is reported as inconclusive, never as
an answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .cosets import (
    DEFAULT_COSET_CAP,
    CosetEnumerator,
    ProductElt,
    ProductRing,
)
from .cyclotomic import CycElt
from .groupring import DecomposedElt, GroupRingDecomposition, GroupRingElt, act
from .groups import CharacterSystem
from .ideals import (
    DEFAULT_ENUM_CAP,
    DEFAULT_SLACK,
    CycIdeal,
    ResourceLimitError,
    SUPPORTED_ORDERS,
    UnsupportedFieldError,
    find_generator,
    ideal_from_generators,
)
from .linalg import Matrix, from_columns, solve_many
from .numberfield import Coords, InputError, NumberField
from .polynomials import Polynomial

FOUND = "FOUND"
NONEXISTENT = "NONEXISTENT"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class SolverConfig:
    slack: Fraction = DEFAULT_SLACK
    enum_cap: int = DEFAULT_ENUM_CAP
    coset_cap: int = DEFAULT_COSET_CAP
    d_multiplier: int = 1  # scales the default D (status must not depend on it)


@dataclass
class NIBResult:
    """Outcome of a solve, with proof data on FOUND and a certificate
    otherwise."""

    status: str
    field_discriminant: int
    theta: Coords | None = None
    theta_over_basis: list[int] | None = None
    conjugate_discriminant: int | None = None
    theta_minpoly: Polynomial | None = None
    t: GroupRingElt | None = None
    coset_unit: ProductElt | None = None
    coset_unit_index: int | None = None
    certificate: dict | None = None
    cap_description: str | None = None
    coset_count: int = 0
    candidates_tested: int = 0
    scaling_discriminant: int | None = None
    timings: dict = dc_field(default_factory=dict)


def compute_bij(nf: NumberField, d_value: int) -> tuple[Matrix, int]:
    """Integer matrix b with beta_j = sum_i b_ij (alpha_i / D).

    If some entry comes out non-integral (the containment of the ring of
    integers in Z[G]*(alpha/D) failed for this D), D is multiplied by the
    least common denominator and the solve is retried once.
    """
    if d_value == 0:
        raise InputError("scaling discriminant D must be nonzero")
    cols = solve_many(nf.conjugate_matrix, nf.basis_matrix.columns())
    for attempt in range(2):
        scaled = [[c * d_value for c in col] for col in cols]
        denom = 1
        for col in scaled:
            for c in col:
                denom = lcm(denom, c.denominator)
        if denom == 1:
            b = from_columns([[int(c) for c in col] for col in scaled])
            return b, d_value
        if attempt == 0:
            d_value *= denom
    raise AssertionError("b failed to become integral after the D fallback")


def build_ideal_components(decomposition: GroupRingDecomposition,
                           b: Matrix) -> list[CycIdeal]:
    """Ideals J_i generated by the i-th row of the decomposed b columns."""
    system = decomposition.system
    n = system.n
    columns = [GroupRingElt(system.group, b.column(j)) for j in range(n)]
    decomposed = [decomposition.psi_forward(col) for col in columns]
    ideals = []
    for i in range(system.k):
        gens = [dec.components[i] for dec in decomposed]
        ideals.append(ideal_from_generators(system.fields[i], gens))
    return ideals


def verify_nib(nf: NumberField, theta: Sequence[Fraction]) -> bool:
    """Exact two-part certificate: theta integral over the integral basis and
    disc(conjugates of theta) equal to the field discriminant."""
    over = nf.over_integral_basis(theta)
    if any(c.denominator != 1 for c in over):
        return False
    disc = nf.discriminant_of_set(nf.conjugates(theta))
    return disc == nf.field_discriminant()


def solve(nf: NumberField, config: SolverConfig | None = None) -> NIBResult:
    """Decide NIB existence and produce a verified generator when one exists."""
    config = config or SolverConfig()
    timings: dict[str, float] = {}
    clock = time.perf_counter

    t0 = clock()
    field_disc = nf.field_discriminant()
    alpha = [Fraction(0)] * nf.n
    if nf.n > 1:
        alpha[1] = Fraction(1)
    else:
        alpha = nf._poly_coords(Polynomial([0, 1]) % nf.minpoly)
    disc_conj = nf.discriminant_of_set(nf.conjugates(alpha))
    assert disc_conj.denominator == 1 and disc_conj != 0
    d_value = int(disc_conj) * config.d_multiplier
    timings["discriminants"] = clock() - t0

    t0 = clock()
    b, d_value = compute_bij(nf, d_value)
    timings["b_matrix"] = clock() - t0

    t0 = clock()
    system = CharacterSystem(nf.group)
    unsupported = sorted({q for q in system.orders[: system.k]
                          if q not in SUPPORTED_ORDERS})
    if unsupported:
        raise UnsupportedFieldError(
            f"character orders {unsupported} outside the class-number-one table")
    decomposition = GroupRingDecomposition(system)
    ideals = build_ideal_components(decomposition, b)
    timings["decomposition"] = clock() - t0

    t0 = clock()
    try:
        gens = [find_generator(j, slack=config.slack, enum_cap=config.enum_cap)
                for j in ideals]
    except ResourceLimitError as exc:
        timings["generators"] = clock() - t0
        return NIBResult(status=INCONCLUSIVE, field_discriminant=field_disc,
                         cap_description=f"generator search: {exc}",
                         scaling_discriminant=d_value, timings=timings)
    d_elt = ProductElt(gens)
    timings["generators"] = clock() - t0

    t0 = clock()
    alpha_prime = [c / d_value for c in alpha]
    enumerator = CosetEnumerator(decomposition, cap=config.coset_cap)
    ctx = enumerator.ctx
    d_img = ctx.image(d_elt)
    tested = 0
    count = 0
    for index, rep in enumerate(enumerator):
        count += 1
        if not ctx.in_group_ring(ctx.image_mul(rep.image, d_img)):
            continue
        tested += 1
        unit = rep.exact()
        candidate = unit * d_elt
        t_elt, integral = decomposition.psi_inverse(
            candidate.decomposed(system))
        if not integral:
            raise AssertionError("modular integrality filter disagrees with "
                                 "the exact computation")
        theta = act(t_elt, alpha_prime, nf.apply_element)
        if verify_nib(nf, theta):
            timings["unit_search"] = clock() - t0
            over = [int(c) for c in nf.over_integral_basis(theta)]
            return NIBResult(
                status=FOUND,
                field_discriminant=field_disc,
                theta=theta,
                theta_over_basis=over,
                conjugate_discriminant=field_disc,
                theta_minpoly=nf.minimal_polynomial(theta),
                t=t_elt,
                coset_unit=unit,
                coset_unit_index=index,
                coset_count=count,
                candidates_tested=tested,
                scaling_discriminant=d_value,
                timings=timings,
            )
    timings["unit_search"] = clock() - t0
    if enumerator.complete:
        return NIBResult(
            status=NONEXISTENT,
            field_discriminant=field_disc,
            certificate={"kind": "coset_set_exhausted", "size": count},
            coset_count=count,
            candidates_tested=tested,
            scaling_discriminant=d_value,
            timings=timings,
        )
    return NIBResult(
        status=INCONCLUSIVE,
        field_discriminant=field_disc,
        cap_description=f"coset cap {config.coset_cap} reached",
        coset_count=count,
        candidates_tested=tested,
        scaling_discriminant=d_value,
        timings=timings,
    )
