"""Command-line interface: a thin client over the service handlers.

All command logic lives in nibsolve.service.handlers on the shared pydantic
models; this module only parses arguments, reads files, renders responses,
and maps outcomes to exit codes.

Exit codes for `solve`: 0 generator found, 10 proven nonexistent,
20 inconclusive (a resource cap fired), 1 input error.  `verify` exits 0
when the supplied element is a generator and 2 when it is not.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .fieldfile import FieldFileError
from .fixtures import UnsupportedFixtureError
from .ideals import ResourceLimitError, UnsupportedFieldError
from .numberfield import InputError
from .service import handlers
from .service.models import (
    BoundRequest,
    FixtureRequest,
    SolveRequest,
    VerifyRequest,
)

INPUT_ERRORS = (FieldFileError, InputError, UnsupportedFieldError,
                UnsupportedFixtureError, ValueError, OSError)


def _print_kv(data: dict):
    for key, value in data.items():
        if isinstance(value, dict):
            for k2, v2 in value.items():
                print(f"{key}.{k2}: {v2}")
        elif isinstance(value, list):
            print(f"{key}: " + " ".join(str(v) for v in value))
        else:
            print(f"{key}: {value}")


def _emit(model, as_json: bool):
    data = model.model_dump(exclude_none=True)
    if as_json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        _print_kv(data)


def cmd_solve(args) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    request = SolveRequest(field_file=text, slack=args.slack,
                           enum_cap=args.enum_cap, coset_cap=args.coset_cap,
                           d_multiplier=args.d_multiplier)
    response = handlers.handle_solve(request)
    _emit(response, args.json)
    return response.exit_code


def cmd_fixture(args) -> int:
    subgroup = []
    if args.subgroup:
        subgroup = [int(tok) for tok in args.subgroup.split(",") if tok.strip()]
    request = FixtureRequest(conductor=args.conductor, subgroup=subgroup,
                             label=args.label)
    response = handlers.handle_fixture(request)
    Path(args.out).write_text(response.field_file, encoding="utf-8")
    print(f"label: {response.label}")
    print(f"conductor: {response.conductor}")
    print(f"degree: {response.degree}")
    print(f"out: {args.out}")
    return 0


def cmd_verify(args) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    theta = [tok for tok in args.theta.split(",") if tok.strip()]
    request = VerifyRequest(field_file=text, theta=theta)
    response = handlers.handle_verify(request)
    _emit(response, args.json)
    return 0 if response.valid else 2


def cmd_bound(args) -> int:
    factors = [int(tok) for tok in args.factors.split(",") if tok.strip()]
    response = handlers.handle_bound(BoundRequest(invariant_factors=factors))
    _emit(response, args.json)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nibsolve",
        description="Decide whether an abelian number field has a normal "
                    "integral basis and compute a generator when it does.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a field description file")
    p_solve.add_argument("file")
    p_solve.add_argument("--slack", default="3/2",
                         help="enumeration slack factor, a rational like 3/2")
    p_solve.add_argument("--enum-cap", type=int, default=2_000_000,
                         help="max vectors enumerated per generator search")
    p_solve.add_argument("--coset-cap", type=int, default=20_000,
                         help="max coset representatives explored")
    p_solve.add_argument("--d-multiplier", type=int, default=1,
                         help="multiply the scaling discriminant D (testing aid)")
    p_solve.add_argument("--json", action="store_true",
                         help="structured JSON report instead of key/value lines")
    p_solve.set_defaults(fn=cmd_solve)

    p_fix = sub.add_parser("fixture",
                           help="emit a cyclotomic/period field description")
    p_fix.add_argument("--conductor", type=int, required=True)
    p_fix.add_argument("--subgroup", default="",
                       help="comma-separated generators of the fixed subgroup")
    p_fix.add_argument("--label", default=None)
    p_fix.add_argument("--out", required=True)
    p_fix.set_defaults(fn=cmd_fixture)

    p_ver = sub.add_parser("verify",
                           help="check a candidate generator (exit 0 valid, 2 not)")
    p_ver.add_argument("file")
    p_ver.add_argument("--theta", required=True,
                       help="comma-separated integer coordinates over the "
                            "integral basis")
    p_ver.add_argument("--json", action="store_true")
    p_ver.set_defaults(fn=cmd_verify)

    p_bound = sub.add_parser("bound",
                             help="index bound for a group given by invariant "
                                  "factors, e.g. '2,4'")
    p_bound.add_argument("factors")
    p_bound.add_argument("--json", action="store_true")
    p_bound.set_defaults(fn=cmd_bound)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(fn=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 20
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
