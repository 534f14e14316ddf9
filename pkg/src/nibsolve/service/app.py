"""FastAPI service wrapping the solver."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..fieldfile import FieldFileError
from ..fixtures import UnsupportedFixtureError
from ..ideals import ResourceLimitError, UnsupportedFieldError
from ..numberfield import InputError
from . import handlers
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

app = FastAPI(
    title="nibsolve",
    description="Normal integral bases of abelian number fields, exactly.",
)

_INPUT_ERRORS = (FieldFileError, InputError, UnsupportedFieldError,
                 UnsupportedFixtureError, ValueError)


def _guard(fn, *args):
    try:
        return fn(*args)
    except _INPUT_ERRORS as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except ResourceLimitError as exc:  # pragma: no cover - caps are generous
        raise HTTPException(status_code=503, detail=str(exc))


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return handlers.handle_health()


@app.post("/solve", response_model=SolveResponse, response_model_exclude_none=True)
def solve_endpoint(request: SolveRequest) -> SolveResponse:
    return _guard(handlers.handle_solve, request)


@app.post("/fixture", response_model=FixtureResponse)
def fixture_endpoint(request: FixtureRequest) -> FixtureResponse:
    return _guard(handlers.handle_fixture, request)


@app.post("/verify", response_model=VerifyResponse)
def verify_endpoint(request: VerifyRequest) -> VerifyResponse:
    return _guard(handlers.handle_verify, request)


@app.post("/bound", response_model=BoundResponse)
def bound_endpoint(request: BoundRequest) -> BoundResponse:
    return _guard(handlers.handle_bound, request)
