"""Command-line entry point.

Exit codes: 0 success, 2 validation failure, 3 internal-consistency failure,
64 malformed arguments, 66 unreadable input file.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence, TextIO

from . import kernels
from .feasibility import BudgetExceeded, EnumerationQuery, check_constraints, enumerate_profiles
from .galois import galois_report
from .invariants import invariant_report
from .local_models import (
    InexactDivision,
    classify_plane_Am,
    discriminant_curve,
    jacobian_ramification,
    residual_curve,
    verify_local_model,
)
from .monodromy import TrackingError, TrackingParams, certify, make_model
from .poly import BivariatePolynomial
from .profile import ProfileFormatError, SingularProfile, validate_profile

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INCONSISTENT = 3
EXIT_USAGE = 64
EXIT_NOINPUT = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_profile(path: str) -> SingularProfile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _Fail(EXIT_NOINPUT, f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _Fail(EXIT_NOINPUT, f"{path} is not valid JSON: {exc}") from exc
    try:
        return SingularProfile.from_json(doc)
    except (ProfileFormatError, ValueError) as exc:
        raise _Fail(EXIT_INVALID, f"{path}: {exc}") from exc


# --- output -------------------------------------------------------------------


def _plain(x: Any) -> Any:
    """Rationals as ``num/den`` strings for table output."""
    if isinstance(x, dict) and set(x) == {"num", "den"}:
        return str(Fraction(x["num"], x["den"]))
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "-"
    if isinstance(x, list):
        return ", ".join(str(_plain(v)) for v in x) or "-"
    if isinstance(x, dict):
        return " ".join(f"{k}={_plain(v)}" for k, v in x.items()) or "-"
    return str(x)


def _table(rows: list[tuple[str, Any]]) -> str:
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {_plain(v)}" for k, v in rows)


def _emit(doc: dict, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write(_table(list(doc.items())) + "\n")


# --- subcommands --------------------------------------------------------------


def _structural(p: SingularProfile) -> None:
    bad = validate_profile(p)
    if bad:
        raise _Fail(EXIT_INVALID, "invalid profile: " + ", ".join(bad))


def cmd_invariants(args, out: TextIO) -> int:
    p = _load_profile(args.file)
    _structural(p)
    rep = invariant_report(p)
    _emit(rep.to_json(), args.format, out)
    return EXIT_OK if rep.noether_ok else EXIT_INCONSISTENT


def cmd_galois(args, out: TextIO) -> int:
    p = _load_profile(args.file)
    _structural(p)
    rep = galois_report(p)
    doc = rep.to_json()
    doc["chiZ_integral"] = rep.chiZ_integral
    doc["chiZ_closed_integral"] = rep.chiZ_from_closed.denominator == 1
    _emit(doc, args.format, out)
    return EXIT_OK


def cmd_check(args, out: TextIO) -> int:
    p = _load_profile(args.file)
    rep = check_constraints(p)
    if args.format == "json":
        _emit(rep.to_json(), "json", out)
    else:
        rows = [(c.name, f"{'pass' if c.passed else 'FAIL'}  {c.detail}") for c in rep.checks]
        rows.append(("admissible", rep.admissible))
        out.write(_table(rows) + "\n")
    return EXIT_OK if rep.admissible else EXIT_INVALID


def cmd_enumerate(args, out: TextIO) -> int:
    try:
        q = EnumerationQuery(args.d, args.N, args.k_max, args.cap, args.node_limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        found = enumerate_profiles(q, brute_force=args.brute_force, jobs=args.jobs, backend=args.backend)
    except BudgetExceeded as exc:
        raise _Fail(EXIT_INVALID, str(exc)) from exc
    for p in found:
        rep = check_constraints(p)
        if args.format == "json":
            doc = {"profile": p.to_json(), "admissible": rep.admissible, "failed": rep.failed(),
                   "total_delta": p.total_delta()}
            out.write(json.dumps(doc, sort_keys=True) + "\n")
        else:
            counts = " ".join(f"{c}:{v}" for c, v in p.items()) or "smooth"
            out.write(f"d={p.d} N={p.N} delta={p.total_delta()}  {counts}\n")
    return EXIT_OK


def cmd_local_model(args, out: TextIO) -> int:
    n = args.n
    if n < 0:
        raise UsageError("--n must be nonnegative")
    if args.verify:
        checks = verify_local_model(n)
        doc = {"n": n, "checks": checks, "ok": all(checks.values())}
        _emit(doc, args.format, out)
        return EXIT_OK if doc["ok"] else EXIT_INCONSISTENT
    disc = discriminant_curve(n)
    doc = {
        "n": n,
        "ramification_curve": jacobian_ramification(n).to_json(),
        "discriminant": disc.raw.to_json(),
        "branch_curve": disc.normalized.to_json(),
        "branch_germ_type": str(classify_plane_Am(disc.normalized)),
    }
    if n >= 1:
        try:
            doc["residual_curve"] = residual_curve(n).to_json()
        except InexactDivision as exc:
            raise _Fail(EXIT_INCONSISTENT, f"residual curve: {exc}") from exc
    if args.format == "table":
        for key in ("ramification_curve", "discriminant", "branch_curve", "residual_curve"):
            if key in doc:
                doc[key] = str(BivariatePolynomial.from_json(doc[key]))
    _emit(doc, args.format, out)
    return EXIT_OK


def cmd_monodromy(args, out: TextIO) -> int:
    index = args.n if args.model == "s3" else args.k if args.model == "s2pair" else None
    if args.model != "smooth2" and index is None:
        raise UsageError(f"--model {args.model} needs {'--n' if args.model == 's3' else '--k'}")
    if index is not None and index < 1:
        raise UsageError("the model index must be positive")
    params = TrackingParams(args.max_step, args.gap_frac, args.newton_tol, args.newton_maxiter, args.min_gap)
    try:
        cert = certify(make_model(args.model, index), params, args.backend)
    except TrackingError as exc:
        raise _Fail(EXIT_INCONSISTENT, f"tracking failed: {exc}") from exc
    doc = cert.to_json()
    doc["ok"] = cert.ok
    _emit(doc, args.format, out)
    return EXIT_OK if cert.ok else EXIT_INCONSISTENT


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    defaults = TrackingParams()
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "table"), default="json")

    parser = _Parser(prog="agcover", description="Invariants and checks for branched covers of the plane.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, text in (
        ("invariants", cmd_invariants, "surface invariants of a profile"),
        ("galois", cmd_galois, "Galois-closure invariants with both evaluation routes"),
        ("check", cmd_check, "necessary conditions; exit 2 if any fails"),
    ):
        sp = sub.add_parser(name, parents=[fmt], help=text)
        sp.add_argument("file", help="profile JSON file")
        sp.set_defaults(func=fn)

    backends = ("python", "cython")
    sp = sub.add_parser("enumerate", parents=[fmt], help="admissible profiles in a search box")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--N", type=int, default=None, help="cover degree (default: all the Hodge bound allows)")
    sp.add_argument("--k-max", type=int, default=0, dest="k_max")
    sp.add_argument("--cap", type=int, default=None, help="upper bound on every class count")
    sp.add_argument("--brute-force", action="store_true", help="test every point of the box")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--node-limit", type=int, default=5_000_000, dest="node_limit")
    sp.add_argument("--backend", choices=backends, default=None)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("local-model", parents=[fmt], help="symbolic data of the local cover f_n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--verify", action="store_true", help="run every check; exit 3 on failure")
    sp.set_defaults(func=cmd_local_model)

    sp = sub.add_parser("monodromy", parents=[fmt], help="certify a local monodromy group numerically")
    sp.add_argument("--model", choices=("s3", "s2pair", "smooth2"), required=True)
    sp.add_argument("--n", type=int, default=None, help="index of the s3 model")
    sp.add_argument("--k", type=int, default=None, help="index of the s2pair model")
    sp.add_argument("--max-step", type=float, default=defaults.max_step, dest="max_step")
    sp.add_argument("--gap-frac", type=float, default=defaults.gap_frac, dest="gap_frac")
    sp.add_argument("--newton-tol", type=float, default=defaults.newton_tol, dest="newton_tol")
    sp.add_argument("--newton-maxiter", type=int, default=defaults.newton_maxiter, dest="newton_maxiter")
    sp.add_argument("--min-gap", type=float, default=defaults.min_gap, dest="min_gap")
    sp.add_argument("--backend", choices=backends, default=None)
    sp.set_defaults(func=cmd_monodromy)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be positive")
        if getattr(args, "backend", None) and args.backend not in kernels.available_backends():
            raise _Fail(EXIT_INVALID, f"backend {args.backend!r} is not available")
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except _Fail as exc:
        err.write(f"error: {exc}\n")
        return exc.code
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
