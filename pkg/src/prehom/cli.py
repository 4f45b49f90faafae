"""Command-line front end: ``prehom phi | verify | zeta | bfunction``.

Reports go to stdout as canonical JSON (sorted keys, rationals as strings);
diagnostics go to stderr. Exit codes: 0 pass, 1 verification failure,
2 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .brackets import Quadruple
from .cocycle import GammaCocycle
from .exact import InputError, format_rational, parse_poly, to_rational
from .linalg import rank
from .pfaffian import SkewMatrix
from .phi import phi, relative_invariant
from .suites import SUITES, run_suite
from .zeta import (
    ConsistencyError,
    b_function_oracle,
    fixture_for,
    normal_form_from_b,
    verify_closed_form,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    """Bad input; reported on stderr with exit code 2."""


def _finite(doc):
    """JSON has no NaN; non-finite floats become null."""
    if isinstance(doc, float):
        return doc if math.isfinite(doc) else None
    if isinstance(doc, dict):
        return {k: _finite(v) for k, v in doc.items()}
    if isinstance(doc, (list, tuple)):
        return [_finite(v) for v in doc]
    return doc


def canonical_json(doc) -> str:
    return json.dumps(_finite(doc), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def digest(doc) -> str:
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def run_report(command: str, inputs, outputs, passed: bool, timings: dict | None) -> dict:
    report = {
        "command": command,
        "inputs_digest": digest(inputs),
        "outputs": outputs,
        "pass": passed,
        "version": __version__,
    }
    if timings is not None:
        report["timings"] = timings
    return report


def load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def parse_quadruple(doc) -> Quadruple:
    """A list of four 5x5 arrays, or an object holding one under ``"quadruple"``."""
    if isinstance(doc, dict):
        doc = doc.get("quadruple")
    if not isinstance(doc, list) or len(doc) != 4:
        raise UsageError("expected four 5x5 matrices")
    mats = []
    for k, m in enumerate(doc, start=1):
        if not isinstance(m, list) or len(m) != 5 or any(not isinstance(r, list) or len(r) != 5 for r in m):
            raise UsageError(f"matrix X{k} is not 5x5")
        try:
            rows = [[to_rational(v) for v in r] for r in m]
        except (InputError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"matrix X{k}: {exc}") from None
        try:
            mats.append(SkewMatrix(rows))
        except InputError as exc:
            raise UsageError(f"matrix X{k}: {exc}") from None
    return Quadruple(mats)


def _parse_s(text: str) -> list[float]:
    try:
        return [float(Fraction(v.strip())) for v in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--s expects comma-separated numbers, got {text!r}") from None


# subcommands


def cmd_phi(args) -> tuple[dict, int]:
    doc = load_json(args.input)
    x = parse_quadruple(doc)
    start = time.perf_counter()
    matrix = phi(x)
    f = relative_invariant(x)
    elapsed = time.perf_counter() - start
    outputs = {
        "phi": [[format_rational(v) for v in row] for row in matrix],
        "rank": rank(matrix),
        "f": format_rational(f),
    }
    timings = {"phi_seconds": round(elapsed, 6)} if args.timings else None
    return run_report("phi", doc, outputs, True, timings), EXIT_PASS


def cmd_verify(args) -> tuple[dict, int]:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}")
    start = time.perf_counter()
    result = run_suite(args.suite, args.trials, args.seed)
    elapsed = time.perf_counter() - start
    outputs = {
        "suite": result.name,
        "seed": result.seed,
        "trials": result.trials,
        "violations": result.failures,
    }
    inputs = {"suite": args.suite, "seed": args.seed, "trials": args.trials}
    timings = {"suite_seconds": round(elapsed, 6)} if args.timings else None
    if not result.passed:
        print(f"violations found with --seed {args.seed}", file=sys.stderr)
    return run_report("verify", inputs, outputs, result.passed, timings), EXIT_PASS if result.passed else EXIT_FAIL


def _resolve_cocycle(args, poly):
    if args.cocycle:
        doc = load_json(args.cocycle)
        try:
            return GammaCocycle.from_dict(doc), doc
        except (InputError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"malformed cocycle in {args.cocycle}: {exc}") from None
    b = fixture_for(poly)
    if b is None:
        try:
            b = normal_form_from_b(b_function_oracle(poly, None, (1,)))
        except (InputError, ConsistencyError, ArithmeticError) as exc:
            raise UsageError(f"no cocycle for {args.poly!r}; pass --cocycle ({exc})") from None
    return b, None


def cmd_zeta(args) -> tuple[dict, int]:
    try:
        poly = parse_poly(args.poly)
    except InputError as exc:
        raise UsageError(f"--poly: {exc}") from None
    s = _parse_s(args.s)
    b, cocycle_doc = _resolve_cocycle(args, poly)
    start = time.perf_counter()
    try:
        report = verify_closed_form(args.field, poly, b, s, args.samples, args.seed, workers=args.workers)
    except InputError as exc:
        raise UsageError(str(exc)) from None
    elapsed = time.perf_counter() - start
    inputs = {
        "field": args.field,
        "poly": str(poly),
        "s": s,
        "samples": args.samples,
        "seed": args.seed,
        "cocycle": cocycle_doc if cocycle_doc is not None else b.to_dict(),
    }
    outputs = report.to_dict()
    outputs["pole"] = report.pole
    passed = report.passed and not report.pole
    if report.pole:
        print("gamma product is at a pole", file=sys.stderr)
    timings = {"zeta_seconds": round(elapsed, 6)} if args.timings else None
    return run_report("zeta", inputs, outputs, passed, timings), EXIT_PASS if passed else EXIT_FAIL


def cmd_bfunction(args) -> tuple[dict, int]:
    try:
        poly = parse_poly(args.poly)
        dual = parse_poly(args.dual) if args.dual else None
        m = tuple(int(v) for v in args.m.split(","))
        result = b_function_oracle(poly, dual, m)
    except (InputError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    except ConsistencyError as exc:
        print(f"oracle inconsistency: {exc}", file=sys.stderr)
        return run_report("bfunction", vars_doc(args), {"error": str(exc)}, False, None), EXIT_FAIL
    outputs = {"b": str(result.b), "degree": result.degree, "m": list(m)}
    if result.r == 1 and m == (1,):
        try:
            outputs["cocycle"] = normal_form_from_b(result).to_dict()
        except InputError:
            pass
    return run_report("bfunction", vars_doc(args), outputs, True, None), EXIT_PASS


def vars_doc(args) -> dict:
    return {"poly": args.poly, "dual": args.dual, "m": args.m}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prehom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phi", help="evaluate the 4x4 matrix, its rank and determinant at a quadruple")
    p.add_argument("input", help="JSON file with four 5x5 alternating matrices")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("suite", help=f"one of: {', '.join(sorted(SUITES))}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None, help="defaults depend on the suite")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zeta", help="compare a Monte-Carlo zeta integral with its gamma product")
    p.add_argument("--field", choices=("C", "R"), required=True)
    p.add_argument("--poly", required=True, help='e.g. "x" or "x1*x2"')
    p.add_argument("--s", required=True, help="comma-separated exponents, one per polynomial")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cocycle", help="JSON file with the normal-form cocycle")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("bfunction", help="compute b_m(s) exactly by interpolation")
    p.add_argument("--poly", required=True)
    p.add_argument("--dual", help="dual polynomial; defaults to the same polynomial")
    p.add_argument("--m", default="1", help="comma-separated shift vector")
    p.set_defaults(func=cmd_bfunction)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except UsageError as exc:
        print(f"prehom {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(canonical_json(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
