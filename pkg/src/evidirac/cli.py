"""Command-line entry point: ``evidirac <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def parse_weight(text: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 7:
        raise UsageError(f"expected 7 comma-separated coordinates, got {len(parts)} in {text!r}")
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed weight {text!r}") from None


def _fmt(x) -> str:
    return str(Fraction(x))


def _fmt_vec(v) -> str:
    return "[" + ",".join(_fmt(x) for x in v) + "]"


def ktype_arg(args) -> tuple:
    """The --ktype weight as integral varpi coordinates."""
    from .compact import build_compact_datum, is_k_type
    v = parse_weight(args.ktype)
    if args.basis == "zeta":
        k = build_compact_datum()
        v = tuple(k.to_varpi(k.root_datum.from_zeta(v)))
    if any(Fraction(x).denominator != 1 for x in v):
        raise UsageError(f"{_fmt_vec(v)} is not integral in varpi coordinates")
    v = tuple(int(x) for x in v)
    if not is_k_type(v):
        raise UsageError(f"{list(v)} is not the highest weight of a K-type")
    return v


def lambda_arg(args) -> tuple:
    """The --lambda weight in zeta coordinates."""
    from .compact import build_compact_datum
    v = parse_weight(args.inf_char)
    if args.lambda_basis == "varpi":
        k = build_compact_datum()
        v = tuple(k.root_datum.to_zeta(k.from_varpi(v)))
    return v


def _write_report(args, payload):
    if args.report:
        Path(args.report).write_text(json.dumps(payload, indent=2, default=str) + "\n",
                                     encoding="utf-8")


# --- commands ------------------------------------------------------------------

def cmd_build_data(args) -> int:
    from .chambers import cache_dir, enumerate_chambers, save_chambers, validate_spin_module
    from .usmall import count_usmall_ktypes, save_usmall
    t = time.time()
    chambers = enumerate_chambers()
    ok = validate_spin_module(chambers)
    path = save_chambers(chambers, cache_dir() / "chambers.bin")
    print(f"chambers: {len(chambers)} written to {path} ({time.time() - t:.1f}s)")
    print(f"spin module dimension check: {'ok' if ok else 'FAILED'}")
    if args.skip_census:
        return EXIT_OK if ok else EXIT_FAIL
    t = time.time()
    n, lst = count_usmall_ktypes()
    path = save_usmall(lst)
    print(f"u-small K-types: {n} written to {path} ({time.time() - t:.1f}s)")
    _write_report(args, {"chambers": len(chambers), "usmall": n})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_tables(args) -> int:
    from .verification import load_tables, run_verification
    entries = load_tables(args.fixture)
    failures = run_verification(entries, args.report, with_pencil=not args.no_pencil)
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_spin_norm(args) -> int:
    from .norms import spin_norm_sq
    mu = ktype_arg(args)
    r = spin_norm_sq(mu)
    print(f"spin norm^2: {_fmt(r.value_sq)}")
    print(f"argmin chambers: {sorted(r.argmin_chambers)}")
    _write_report(args, {"ktype": mu, "spin_norm_sq": _fmt(r.value_sq),
                         "argmin_chambers": sorted(r.argmin_chambers)})
    return EXIT_OK


def cmd_lambda_norm(args) -> int:
    from .compact import build_compact_datum
    from .norms import lambda_a
    mu = ktype_arg(args)
    r = lambda_a(mu)
    lam = build_compact_datum().to_varpi(r.lambda_a)
    print(f"lambda norm^2: {_fmt(r.value_sq)}")
    print(f"lambda_a (varpi): {_fmt_vec(lam)}")
    print(f"chamber used: {r.chamber_used}")
    _write_report(args, {"ktype": mu, "lambda_norm_sq": _fmt(r.value_sq),
                         "lambda_a_varpi": [_fmt(x) for x in lam]})
    return EXIT_OK


def cmd_usmall_count(args) -> int:
    from .usmall import count_usmall_ktypes, load_usmall, save_usmall
    lst = load_usmall() if args.use_cache else None
    if lst is None:
        def progress(idx, total, found, certs):
            if args.verbose:
                print(f"  {idx}/{total} inside={found} certificates={certs}", file=sys.stderr)
        _, lst = count_usmall_ktypes(progress=progress)
        save_usmall(lst)
    print(len(lst))
    _write_report(args, {"usmall_count": len(lst)})
    return EXIT_OK


def cmd_certs(args) -> int:
    from .norms import lambda_norm_value
    from .usmall import certs, load_usmall, pencil_gap
    lst = load_usmall()
    if lst is None:
        raise UsageError("u-small census not cached; run `evidirac build-data` first")
    found = certs(lst)
    for mu in found:
        print(f"{list(mu)} lambda^2={_fmt(lambda_norm_value(mu))} gap={_fmt(pencil_gap(mu))}")
    print(f"count: {len(found)}")
    _write_report(args, {"certs": [list(m) for m in found]})
    return EXIT_OK


def cmd_pencil(args) -> int:
    from .screening import pencil_min_spin
    mu = ktype_arg(args)
    r = pencil_min_spin(mu)
    print(f"pencil min spin norm^2: {_fmt(r.min_value_sq)}")
    print(f"attained at n = {sorted(r.attaining_n)}; stopped after n = {r.terminated_at}")
    _write_report(args, {"ktype": mu, "min": _fmt(r.min_value_sq),
                         "attaining_n": sorted(r.attaining_n),
                         "per_n": [(n, _fmt(v)) for n, v in r.per_n]})
    return EXIT_OK


def cmd_screen(args) -> int:
    from .compact import build_compact_datum
    from .screening import dirac_screen
    mu = ktype_arg(args)
    lam = lambda_arg(args)
    lam_sq = build_compact_datum().root_datum.norm2_zeta(lam)
    v = dirac_screen(mu, lam_sq)
    print(f"|Lambda|^2 = {_fmt(lam_sq)}; pencil min = {_fmt(v.pencil.min_value_sq)}")
    print(v.verdict.value + (f" (witness n = {v.witness_n})" if v.witness_n is not None else ""))
    _write_report(args, {"verdict": v.verdict.value, "witness_n": v.witness_n})
    return EXIT_OK


def cmd_enumerate_phi(args) -> int:
    from .enumeration import INVOLUTION_SETS, SieveConfig, enumerate_phi, write_phi_file
    from .verification import reference_values
    if args.involutions not in INVOLUTION_SETS:
        raise UsageError(f"unknown involution set {args.involutions!r}")
    cfg = SieveConfig(Fraction(args.nu_bound), args.involutions, True, args.max_coefficient)
    r = enumerate_phi(cfg)
    ref = reference_values()
    diff = r.diff(ref["phi_counts"])
    for line in diff:
        print(line)
    phi1 = sorted(tuple(int(x) for x in row) for row in r.members.get(1, []))
    ok1 = phi1 == sorted(tuple(x) for x in ref["phi1"])
    print(f"Phi_1 equals the reference list: {ok1}")
    if args.report:
        write_phi_file(r, args.report, ref["phi_counts"])
    return EXIT_OK if ok1 else EXIT_FAIL


def cmd_enumerate_omega(args) -> int:
    from .enumeration import enumerate_omega
    omega = enumerate_omega()
    print(len(omega))
    if args.report:
        Path(args.report).write_text("\n".join(" ".join(map(str, x)) for x in omega) + "\n",
                                     encoding="utf-8")
    return EXIT_OK


def cmd_nu_stats(args) -> int:
    from .verification import expected_nu_statistics, load_tables, nu_statistics
    got = nu_statistics(load_tables(args.fixture))
    want = expected_nu_statistics()
    for v in sorted(set(got) | set(want)):
        mark = "" if got[v] == want[v] else f"  (expected {want[v]})"
        print(f"{_fmt(v)}: {got[v]}{mark}")
    ok = got == want
    print(f"total: {sum(got.values())}; matches reference: {ok}")
    _write_report(args, {"distribution": {_fmt(v): n for v, n in sorted(got.items())},
                         "matches": ok})
    return EXIT_OK if ok else EXIT_FAIL


HANDLERS = {
    "build-data": cmd_build_data,
    "verify-tables": cmd_verify_tables,
    "spin-norm": cmd_spin_norm,
    "lambda-norm": cmd_lambda_norm,
    "usmall-count": cmd_usmall_count,
    "certs": cmd_certs,
    "pencil": cmd_pencil,
    "screen": cmd_screen,
    "enumerate-phi": cmd_enumerate_phi,
    "enumerate-omega": cmd_enumerate_omega,
    "nu-stats": cmd_nu_stats,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="cap on worker threads")
    common.add_argument("--report", help="write a structured report to this file")

    ktype = argparse.ArgumentParser(add_help=False)
    ktype.add_argument("--ktype", required=True, help="highest weight, comma separated")
    ktype.add_argument("--basis", choices=("varpi", "zeta"), default="varpi",
                       help="coordinates of --ktype (default varpi)")

    fixture = argparse.ArgumentParser(add_help=False)
    fixture.add_argument("--fixture", help="tables file (default: bundled)")

    p = argparse.ArgumentParser(prog="evidirac", description="Dirac series screening for E7(-5)")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    b = sub.add_parser("build-data", parents=[common], help="build chamber and census caches")
    b.add_argument("--skip-census", action="store_true")
    v = sub.add_parser("verify-tables", parents=[common, fixture], help="replay the tables")
    v.add_argument("--no-pencil", action="store_true")
    sub.add_parser("spin-norm", parents=[common, ktype], help="spin norm of a K-type")
    sub.add_parser("lambda-norm", parents=[common, ktype], help="lambda norm of a K-type")
    u = sub.add_parser("usmall-count", parents=[common], help="count u-small K-types")
    u.add_argument("--use-cache", action="store_true", help="reuse a cached census")
    u.add_argument("--verbose", action="store_true")
    sub.add_parser("certs", parents=[common], help="u-small K-types with pencil gap >= 165/2")
    sub.add_parser("pencil", parents=[common, ktype], help="minimum spin norm along the pencil")
    s = sub.add_parser("screen", parents=[common, ktype], help="Dirac inequality screen")
    s.add_argument("--lambda", dest="inf_char", required=True, help="infinitesimal character")
    s.add_argument("--lambda-basis", choices=("zeta", "varpi"), default="zeta")
    e = sub.add_parser("enumerate-phi", parents=[common], help="the Phi sieve")
    e.add_argument("--involutions", default="all",
                   help="all | fully-supported | fully-supported-rank4")
    e.add_argument("--nu-bound", default="227/2", help="bound on |nu|^2")
    e.add_argument("--max-coefficient", type=int, default=14)
    sub.add_parser("enumerate-omega", parents=[common], help="the Omega sieve")
    sub.add_parser("nu-stats", parents=[common, fixture], help="|nu|^2 distribution of the tables")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        if hasattr(args, "ktype"):
            ktype_arg(args)
        if hasattr(args, "inf_char"):
            lambda_arg(args)
        return HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"evidirac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
