"""Command line interface.

Every command prints one JSON report on stdout:
``{"command", "version", "params", "result", "timing_ms"}``.

Exit codes: 0 success, 2 parse or I/O error, 3 precondition violated,
4 search exhausted, 5 Penner bound violated.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import SurfaceParams, bound_report
from .errors import ContractViolation, ParseError, SearchExhausted
from .lefschetz import dilatation_lower_from_homology
from .matrix_core import parse_matrix
from .penner import table_csv, upper_bound_table
from .spectral import DEFAULT_C
from .trace_search import (
    SearchFailure,
    classify,
    dirichlet_nu,
    fejer_min_real,
    fejer_value,
    find_nu,
    find_nu_cyclotomic,
    find_nu_expanding,
    newton_girard_nu,
)

EXIT_OK, EXIT_IO, EXIT_PRECONDITION, EXIT_EXHAUSTED, EXIT_VIOLATION = 0, 2, 3, 4, 5

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "version", "params", "result", "timing_ms"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "version": {"type": "string"},
        "params": {"type": "object"},
        "timing_ms": {"type": "number", "minimum": 0},
        "result": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["certificate", "failure", "table", "bounds"]}},
        },
    },
}


class CommandError(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _load_matrix(path):
    try:
        return parse_matrix(Path(path).read_bytes())
    except OSError as e:
        raise CommandError(EXIT_IO, f"cannot read {path}: {e}") from None
    except ParseError as e:
        raise CommandError(EXIT_IO, f"{path}: {e}") from None


def cmd_find_nu(args):
    A = _load_matrix(args.matrix)
    mode = args.mode
    if mode == "auto":
        mode = classify(A)
    try:
        if mode == "scan":
            res = find_nu(A, args.B, args.epsilon)
        elif mode == "expanding":
            res = find_nu_expanding(A, args.B, args.epsilon, args.c)
        else:
            res = find_nu_cyclotomic(A, args.B)
    except SearchExhausted as e:
        return e.failure.to_dict() | {"mode": mode}, EXIT_EXHAUSTED
    code = EXIT_EXHAUSTED if isinstance(res, SearchFailure) else EXIT_OK
    return res.to_dict() | {"mode": mode}, code


def cmd_bounds(args):
    C = None if args.C in (None, "auto") else float(args.C)
    rep = bound_report(SurfaceParams(args.g, args.n), args.alpha, C, args.N, args.C_upper)
    return rep.to_dict(), EXIT_OK


def cmd_lefschetz(args):
    A = _load_matrix(args.matrix)
    res = dilatation_lower_from_homology(A, SurfaceParams(args.g, args.n), args.epsilon)
    code = EXIT_EXHAUSTED if isinstance(res, SearchFailure) else EXIT_OK
    return res.to_dict(), code


def _parse_range(text, g=None):
    """'a..b' (inclusive), a single int, or 'auto' for 0..12g+6."""
    if text == "auto":
        if g is None:
            raise CommandError(EXIT_PRECONDITION, "'auto' is only valid for the n range")
        return range(0, 12 * g + 7)
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise CommandError(EXIT_PRECONDITION, f"bad range {text!r}") from None


def cmd_penner(args):
    g_range = _parse_range(args.g)
    rows = upper_bound_table(g_range, lambda g: _parse_range(args.n, g))
    text = table_csv(rows)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as e:
            raise CommandError(EXIT_IO, f"cannot write {args.out}: {e}") from None
    bad = [{"g": r.g, "n": r.n} for r in rows if not r.ok]
    result = {"kind": "table", "rows": len(rows), "out": args.out, "violations": bad}
    if not args.out:
        result["csv"] = text
    return result, EXIT_VIOLATION if bad else EXIT_OK


def _parse_coeffs(text):
    vals = []
    for tok in text.replace(",", " ").split():
        if any(ch in tok for ch in ".eE") and "/" not in tok:
            vals.append(float(tok))
        else:
            vals.append(Fraction(tok))
    return vals


def _json_number(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def cmd_lemmas(args):
    if args.which == "dirichlet":
        if not args.z:
            raise ContractViolation("dirichlet needs at least one --z")
        zs = [complex(z.replace(" ", "")) for z in args.z]
        nu, re_s = dirichlet_nu(zs)
        return {"kind": "certificate", "lemma": "dirichlet", "nu": nu, "re_S": re_s,
                "floor": sum(abs(z) ** nu for z in zs) / 2 ** 0.5}, EXIT_OK
    if args.which == "newton":
        if not args.coeffs:
            raise ContractViolation("newton needs --coeffs")
        high_first = _parse_coeffs(args.coeffs)
        nu, S = newton_girard_nu(list(reversed(high_first)))
        return {"kind": "certificate", "lemma": "newton", "nu": nu, "S": _json_number(S),
                "degree": len(high_first) - 1}, EXIT_OK
    K = args.K
    if K < 1:
        raise ContractViolation("K must be >= 1")
    return {"kind": "table", "lemma": "fejer", "K": K, "samples": args.samples,
            "min_re": fejer_min_real(K, args.samples, args.seed),
            "P_at_1": str(fejer_value(1, K))}, EXIT_OK


COMMANDS = {
    "find-nu": cmd_find_nu,
    "bounds": cmd_bounds,
    "lefschetz": cmd_lefschetz,
    "penner": cmd_penner,
    "lemmas": cmd_lemmas,
}


def build_parser():
    p = argparse.ArgumentParser(prog="trace-horizon", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--trials", type=int, default=100)

    sp = sub.add_parser("find-nu", help="least power with trace above B")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--B", type=int, default=2)
    sp.add_argument("--epsilon", type=float, default=0.5)
    sp.add_argument("--c", type=float, default=DEFAULT_C)
    sp.add_argument("--mode", choices=["scan", "expanding", "cyclotomic", "auto"], default="scan")
    common(sp)

    sp = sub.add_parser("bounds", help="named bounds on l_{g,n}")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--C", default="auto")
    sp.add_argument("--N", type=int, default=2)
    sp.add_argument("--C-upper", dest="C_upper", type=float, default=1.0)
    common(sp)

    sp = sub.add_parser("lefschetz", help="dilatation bound from a homology action")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--epsilon", type=float, default=0.5)
    common(sp)

    sp = sub.add_parser("penner", help="Penner upper-bound table as CSV")
    sp.add_argument("--g", required=True, help="genus range, e.g. 2..4")
    sp.add_argument("--n", required=True, help="puncture range, e.g. 0..5, or 'auto' for 0..12g+6")
    sp.add_argument("--out")
    common(sp)

    sp = sub.add_parser("lemmas", help="run the pigeonhole, Newton-Girard or Fejer lemma")
    sp.add_argument("which", choices=["dirichlet", "newton", "fejer"])
    sp.add_argument("--z", action="append", help="complex number, repeatable (e.g. --z=-1 --z 1j)")
    sp.add_argument("--coeffs", help="polynomial coefficients, highest degree first")
    sp.add_argument("--K", type=int, default=10)
    sp.add_argument("--samples", type=int, default=10_000)
    common(sp)
    return p


def run(argv=None):
    """Execute a command; returns (report or None, exit code, error message or None)."""
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k != "command"}
    t0 = time.perf_counter()
    try:
        result, code = COMMANDS[args.command](args)
    except CommandError as e:
        return None, e.code, str(e)
    except ContractViolation as e:
        return None, EXIT_PRECONDITION, str(e)
    report = {
        "command": args.command,
        "version": __version__,
        "params": params,
        "result": result,
        "timing_ms": (time.perf_counter() - t0) * 1000,
    }
    return report, code, None


def main(argv=None):
    report, code, err = run(argv)
    if err:
        print(f"error: {err}", file=sys.stderr)
    if report is not None:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
