"""Service operations on the request/response models.

These are plain functions so the CLI can call them in-process; the FastAPI
app wraps them with HTTP error mapping.  All raise InputError-family
exceptions on bad input.
"""

from __future__ import annotations

from fractions import Fraction

from .. import __version__
from ..engine import SolverConfig, solve, verify_nib
from ..fieldfile import emit_field_file, parse_field_file
from ..fixtures import gaussian_period_fixture
from ..cosets import index_bound
from ..groups import AbelianGroup
from ..numberfield import InputError, validate_input
from ..report import build_report, report_to_dict
from .models import (
    BoundRequest,
    BoundResponse,
    FixtureRequest,
    FixtureResponse,
    HealthResponse,
    SolveRequest,
    SolveResponse,
    VerifyRequest,
    VerifyResponse,
)


def handle_solve(request: SolveRequest) -> SolveResponse:
    data = parse_field_file(request.field_file)
    nf = validate_input(data)
    try:
        slack = Fraction(request.slack)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad slack factor {request.slack!r}")
    if slack <= 0:
        raise InputError("slack factor must be positive")
    config = SolverConfig(slack=slack, enum_cap=request.enum_cap,
                          coset_cap=request.coset_cap,
                          d_multiplier=request.d_multiplier)
    result = solve(nf, config)
    report = build_report(result, label=data.label)
    return SolveResponse(**report_to_dict(report))


def handle_fixture(request: FixtureRequest) -> FixtureResponse:
    data = gaussian_period_fixture(request.conductor, request.subgroup,
                                   label=request.label)
    validate_input(data)  # every emitted fixture must round-trip
    return FixtureResponse(
        field_file=emit_field_file(data),
        label=data.label,
        conductor=data.conductor,
        degree=data.group.order,
        invariant_factors=list(data.group.factors),
    )


def handle_verify(request: VerifyRequest) -> VerifyResponse:
    data = parse_field_file(request.field_file)
    nf = validate_input(data)
    try:
        ints = [int(tok) for tok in request.theta]
    except ValueError:
        raise InputError("theta coordinates must be integers")
    if len(ints) != nf.n:
        raise InputError(f"theta needs {nf.n} coordinates")
    theta = nf.basis_matrix.mul_vector([Fraction(v) for v in ints])
    valid = verify_nib(nf, theta)
    disc = nf.discriminant_of_set(nf.conjugates(theta))
    return VerifyResponse(valid=valid,
                          conjugate_discriminant=str(disc),
                          field_discriminant=str(nf.field_discriminant()))


def handle_bound(request: BoundRequest) -> BoundResponse:
    try:
        group = AbelianGroup(request.invariant_factors)
    except ValueError as exc:
        raise InputError(str(exc))
    return BoundResponse(bound=str(index_bound(group)))


def handle_health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)
