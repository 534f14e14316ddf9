"""Machine-readable solve reports.

Reports render either as greppable `key: value` lines or as a JSON-friendly
dict.  Unbounded integers are serialised as decimal strings so JSON
consumers never lose precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .engine import FOUND, INCONCLUSIVE, NONEXISTENT, NIBResult

EXIT_CODES = {FOUND: 0, NONEXISTENT: 10, INCONCLUSIVE: 20}


@dataclass
class ResultReport:
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
    timings: dict = dc_field(default_factory=dict)


def build_report(result: NIBResult, label: str | None = None) -> ResultReport:
    report = ResultReport(
        status=result.status,
        exit_code=EXIT_CODES[result.status],
        field_discriminant=str(result.field_discriminant),
        label=label,
        coset_count=result.coset_count,
        candidates_tested=result.candidates_tested,
        scaling_discriminant=(None if result.scaling_discriminant is None
                              else str(result.scaling_discriminant)),
        timings={k: round(v, 6) for k, v in result.timings.items()},
    )
    if result.status == FOUND:
        report.theta_over_integral_basis = [str(c) for c in result.theta_over_basis]
        report.theta_minpoly = [str(int(c)) for c in result.theta_minpoly.coeffs]
        report.conjugate_discriminant = str(result.conjugate_discriminant)
        report.t_coefficients = [str(c) for c in result.t.coeffs]
        report.coset_unit_index = result.coset_unit_index
    elif result.status == NONEXISTENT:
        report.certificate = result.certificate
    else:
        report.cap_description = result.cap_description
    return report


def report_to_dict(report: ResultReport) -> dict:
    out = {"status": report.status, "exit_code": report.exit_code,
           "field_discriminant": report.field_discriminant}
    if report.label is not None:
        out["label"] = report.label
    if report.theta_over_integral_basis is not None:
        out["theta_over_integral_basis"] = report.theta_over_integral_basis
        out["theta_minpoly"] = report.theta_minpoly
        out["conjugate_discriminant"] = report.conjugate_discriminant
        out["t_coefficients"] = report.t_coefficients
        out["coset_unit_index"] = report.coset_unit_index
    if report.certificate is not None:
        out["certificate"] = report.certificate
    if report.cap_description is not None:
        out["cap_description"] = report.cap_description
    out["coset_count"] = report.coset_count
    out["candidates_tested"] = report.candidates_tested
    if report.scaling_discriminant is not None:
        out["scaling_discriminant"] = report.scaling_discriminant
    out["timings"] = report.timings
    return out


def report_to_text(report: ResultReport) -> str:
    """Line-delimited key/value rendering."""
    lines = []
    d = report_to_dict(report)
    for key, value in d.items():
        if key == "timings":
            for stage, secs in value.items():
                lines.append(f"timing.{stage}: {secs}")
        elif key == "certificate":
            for ck, cv in value.items():
                lines.append(f"certificate.{ck}: {cv}")
        elif isinstance(value, list):
            lines.append(f"{key}: " + " ".join(str(v) for v in value))
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"
