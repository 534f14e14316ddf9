"""Text format for abelian field descriptions.

Line-oriented `key: value` document with unbounded-precision decimal
integers and `p/q` rationals, so files are bit-exact across languages.
Multi-vector sections separate vectors with `;`.  Example:

    label: golden-ratio-field
    minpoly: -4 -2 1
    group: 2
    action: 0 1 ; 2 -1
    integral_basis: 1 0 ; 0 1/2
    conductor: 5

`minpoly` holds ascending integer coefficients, `group` the invariant
factors, `action` one coefficient list per group element, and
`integral_basis` the n x n coordinate matrix column-major (one column, i.e.
one basis element, per `;` chunk).  Unknown keys are rejected.
"""

from __future__ import annotations

from fractions import Fraction

from .groups import AbelianGroup
from .linalg import from_columns
from .numberfield import AbelianFieldInput
from .polynomials import Polynomial

KNOWN_KEYS = ("label", "minpoly", "group", "action", "integral_basis", "conductor")


class FieldFileError(ValueError):
    """Parse failure with a line diagnostic."""


def _parse_fraction(token: str, line_no: int) -> Fraction:
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError):
        raise FieldFileError(f"line {line_no}: bad rational {token!r}")


def _format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_field_file(text: str) -> AbelianFieldInput:
    """Parse a field description; raises FieldFileError with diagnostics."""
    values: dict[str, tuple[str, int]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise FieldFileError(f"line {line_no}: expected 'key: value'")
        key, _, value = line.partition(":")
        key = key.strip()
        if key not in KNOWN_KEYS:
            raise FieldFileError(f"line {line_no}: unknown key {key!r}")
        if key in values:
            raise FieldFileError(f"line {line_no}: duplicate key {key!r}")
        values[key] = (value.strip(), line_no)

    for required in ("minpoly", "group", "action", "integral_basis"):
        if required not in values:
            raise FieldFileError(f"missing required section {required!r}")

    text_mp, ln = values["minpoly"]
    try:
        coeffs = [int(tok) for tok in text_mp.split()]
    except ValueError:
        raise FieldFileError(f"line {ln}: minpoly needs integer coefficients")
    if not coeffs:
        raise FieldFileError(f"line {ln}: empty minpoly")
    minpoly = Polynomial(coeffs)

    text_group, ln = values["group"]
    try:
        factors = [int(tok) for tok in text_group.split()]
    except ValueError:
        raise FieldFileError(f"line {ln}: group needs integer invariant factors")
    try:
        group = AbelianGroup(factors)
    except ValueError as exc:
        raise FieldFileError(f"line {ln}: {exc}")
    n = group.order

    text_action, ln = values["action"]
    chunks = [c.strip() for c in text_action.split(";")]
    if len(chunks) != n:
        raise FieldFileError(
            f"line {ln}: expected {n} action polynomials, got {len(chunks)}")
    action = []
    for chunk in chunks:
        toks = chunk.split()
        action.append(Polynomial([_parse_fraction(t, ln) for t in toks]))

    text_basis, ln = values["integral_basis"]
    chunks = [c.strip() for c in text_basis.split(";")]
    if len(chunks) != n:
        raise FieldFileError(
            f"line {ln}: expected {n} basis columns, got {len(chunks)}")
    cols = []
    for chunk in chunks:
        toks = chunk.split()
        if len(toks) != n:
            raise FieldFileError(
                f"line {ln}: basis column needs {n} coordinates, got {len(toks)}")
        cols.append([_parse_fraction(t, ln) for t in toks])
    basis = from_columns(cols)

    conductor = None
    if "conductor" in values:
        text_cond, ln = values["conductor"]
        try:
            conductor = int(text_cond)
        except ValueError:
            raise FieldFileError(f"line {ln}: conductor must be an integer")

    label = values["label"][0] if "label" in values else None
    return AbelianFieldInput(minpoly=minpoly, group=group, action=action,
                             integral_basis=basis, conductor=conductor,
                             label=label)


def emit_field_file(data: AbelianFieldInput) -> str:
    """Canonical serialisation; emit(parse(s)) == s for canonical s."""
    lines = []
    if data.label is not None:
        lines.append(f"label: {data.label}")
    lines.append("minpoly: " + " ".join(
        _format_fraction(c) for c in data.minpoly.coeffs))
    lines.append("group: " + " ".join(str(d) for d in data.group.factors))
    n = data.group.order
    action_chunks = []
    for p in data.action:
        coeffs = list(p.coeffs) if p.coeffs else [Fraction(0)]
        action_chunks.append(" ".join(_format_fraction(c) for c in coeffs))
    lines.append("action: " + " ; ".join(action_chunks))
    basis_chunks = []
    for j in range(n):
        col = data.integral_basis.column(j)
        basis_chunks.append(" ".join(_format_fraction(c) for c in col))
    lines.append("integral_basis: " + " ; ".join(basis_chunks))
    if data.conductor is not None:
        lines.append(f"conductor: {data.conductor}")
    return "\n".join(lines) + "\n"
