"""``dihedral-griess`` command line.

    dihedral-griess build --n 5 --lambda1 3/128 --lambda2 3/128
    dihedral-griess build --n 3 --lambda1 13/1024 --lambda2 13/1024 --bracket --format csv
    dihedral-griess classify --format json
    dihedral-griess verify                 # every classified row
    dihedral-griess scan --bound 12

Exit status: 0 success, 1 inconsistent parameters / closure failure / failed
check, 2 invalid arguments.  Relative ``--output`` paths resolve against
``$DIHEDRAL_GRIESS_OUTDIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .algebra import build_algebra
from .classification import classify, infeasibility_scan, render_table
from .errors import DihedralAlgebraError, ParameterBoundError
from .linalg import to_rational
from .orbit import MAX_ALGEBRA_ORBIT, ParamRecord
from .verify import verify_axioms

OUTDIR_ENV = "DIHEDRAL_GRIESS_OUTDIR"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _rational(text: str):
    try:
        return to_rational(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _orbit_size(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 1 <= n <= MAX_ALGEBRA_ORBIT:
        raise argparse.ArgumentTypeError(f"n must be between 1 and {MAX_ALGEBRA_ORBIT}")
    return n


def _bound(text: str) -> int:
    try:
        b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if b < 2:
        raise argparse.ArgumentTypeError("bound must be >= 2")
    return b


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dihedral-griess",
                                     description="Exact dihedral subalgebras generated by two axes.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def params(p, required: bool):
        p.add_argument("--n", type=_orbit_size, required=required, help="orbit size N (1..6)")
        p.add_argument("--lambda1", type=_rational, required=required, help="(e|f) as p/q")
        p.add_argument("--lambda2", type=_rational, required=required, help="(e|e^{tau_f}) as p/q")
        p.add_argument("--bracket", action="store_true",
                       help="read --lambda1/--lambda2 as <e,f> and <e,e^{tau_f}> instead")

    def output(p, formats, default):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--output", type=Path, help="write here instead of stdout")

    b = sub.add_parser("build", help="build one algebra and dump its structure constants")
    params(b, True)
    output(b, ("json", "csv"), "json")

    c = sub.add_parser("classify", help="admissible inner products for N = 1..6")
    output(c, ("csv", "json"), "csv")

    v = sub.add_parser("verify", help="check the axioms (all classified rows by default)")
    params(v, False)
    output(v, ("json",), "json")

    s = sub.add_parser("scan", help="determinant scan ruling out orbit size >= 7")
    s.add_argument("--bound", type=_bound, default=12, help="largest denominator on the grid")
    output(s, ("json",), "json")
    return parser


def _params(args) -> ParamRecord:
    if args.bracket:
        return ParamRecord.from_inner_products(args.lambda1, args.lambda2)
    return ParamRecord(args.lambda1, args.lambda2)


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not path.is_absolute():
        path = Path(outdir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def run(args) -> int:
    if args.verb == "build":
        alg = build_algebra(args.n, _params(args))
        _emit(_dumps(alg.to_json()) if args.format == "json" else alg.to_csv(), args.output)
        return EXIT_OK

    if args.verb == "classify":
        _emit(render_table(classify(), args.format), args.output)
        return EXIT_OK

    if args.verb == "verify":
        given = [args.n, args.lambda1, args.lambda2]
        if any(x is not None for x in given) and not all(x is not None for x in given):
            raise _UsageError("verify needs all of --n, --lambda1, --lambda2, or none")
        if args.n is not None:
            targets = [(args.n, _params(args), None)]
        else:
            targets = [(row.n, row.params, row.label) for row in classify()]
        reports = []
        for n, params, label in targets:
            report = verify_axioms(build_algebra(n, params))
            reports.append({"class": label, **params.to_json(), **report.to_json()})
        _emit(_dumps(reports), args.output)
        return EXIT_OK if all(r["ok"] for r in reports) else EXIT_FAIL

    if args.verb == "scan":
        report = infeasibility_scan(args.bound)
        _emit(_dumps(report.to_json()), args.output)
        return EXIT_OK if report.violations == 0 else EXIT_FAIL
    raise _UsageError(f"unknown verb {args.verb!r}")


class _UsageError(Exception):
    pass


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad arguments
    try:
        return run(args)
    except (_UsageError, ParameterBoundError) as exc:
        code = getattr(exc, "code", "usage")
        sys.stderr.write(_dumps({"error": code, "message": str(exc),
                                 "payload": getattr(exc, "payload", {})}))
        return EXIT_USAGE
    except DihedralAlgebraError as exc:
        sys.stderr.write(_dumps({"error": exc.code, "message": str(exc), "payload": exc.payload}))
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
