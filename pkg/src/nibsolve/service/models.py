"""Pydantic request/response models shared by the HTTP API and the CLI.

Unbounded integers travel as decimal strings; rationals as "p/q" strings.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class SolveRequest(BaseModel):
    field_file: str = Field(..., description="Field description document")
    slack: str = Field("3/2", description="Enumeration slack factor (rational)")
    enum_cap: int = Field(2_000_000, ge=1)
    coset_cap: int = Field(20_000, ge=1)
    d_multiplier: int = Field(1, ge=1, description="Scale factor on the default D")


class SolveResponse(BaseModel):
    status: str
    exit_code: int
    field_discriminant: str
    label: str | None = None
    theta_over_integral_basis: list[str] | None = None
    theta_minpoly: list[str] | None = None
    conjugate_discriminant: str | None = None
    t_coefficients: list[str] | None = None
    coset_unit_index: int | None = None
    certificate: dict | None = None
    cap_description: str | None = None
    coset_count: int = 0
    candidates_tested: int = 0
    scaling_discriminant: str | None = None
    timings: dict[str, float] = {}


class FixtureRequest(BaseModel):
    conductor: int = Field(..., ge=3)
    subgroup: list[int] = Field(default_factory=list)
    label: str | None = None


class FixtureResponse(BaseModel):
    field_file: str
    label: str
    conductor: int
    degree: int
    invariant_factors: list[int]


class VerifyRequest(BaseModel):
    field_file: str
    theta: list[str] = Field(..., description="Integer coordinates over the "
                                              "integral basis")


class VerifyResponse(BaseModel):
    valid: bool
    conjugate_discriminant: str
    field_discriminant: str


class BoundRequest(BaseModel):
    invariant_factors: list[int]


class BoundResponse(BaseModel):
    bound: str


class HealthResponse(BaseModel):
    status: str
    version: str
