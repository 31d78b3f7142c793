"""Command-line front end.

    colmez field --modulus 20 --subgroup 9
    colmez height 20:9 full:1,13
    colmez verify --suite all --fields 4,20:9,5
    colmez table --primes 5,13,17

Exit codes: 0 success, 1 exact check failed, 2 numeric check failed, 3 bad input.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import sys
import time

from . import __version__
from .cache import LValueCache
from .cmtypes import cm_type, partial_cm_type
from .conductors import discriminant, real_discriminant, relative_discriminant
from .errors import ColmezError
from .galois import build_field, parse_field_spec
from .heights import height_full, height_partial, verify_example_family
from .lfunctions import CONVENTIONS
from .suites import SUITES, Options, exit_code, run_checks, select_fields

SCHEMA_VERSION = 1
EXIT_OK, EXIT_EXACT, EXIT_NUMERIC, EXIT_INPUT = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _make_cache(args):
    if args.no_cache:
        return None
    return LValueCache(args.cache_dir)


def _timestamp(start: float) -> dict:
    now = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0)
    return {"utc": now.isoformat(), "wall_seconds": round(time.perf_counter() - start, 3)}


# --- subcommands -------------------------------------------------------------------------


def cmd_field(args) -> int:
    gens = []
    for item in args.subgroup or []:
        gens.extend(_int_list(item))
    fld = build_field(args.modulus, gens)
    chars = [
        {
            "label": chi.label,
            "order": chi.order,
            "parity": "odd" if chi.is_odd else "even",
            "conductor": chi.conductor,
        }
        for chi in fld.characters
    ]
    out = {
        "schema_version": SCHEMA_VERSION,
        "field": fld.label,
        "modulus": fld.modulus,
        "subgroup_generators": list(fld.generators),
        "order": fld.order,
        "g": fld.g,
        "c": fld.conj,
        "elements": list(fld.elements),
        "characters": chars,
        "odd_conductors": sorted({c["conductor"] for c in chars if c["parity"] == "odd"}),
        "d_E": discriminant(fld),
        "d_F": real_discriminant(fld),
        "d_E_over_F": relative_discriminant(fld),
    }
    print(_dump(out))
    return EXIT_OK


def _parse_type(fld, text: str):
    kind, _, body = text.partition(":")
    reps = _int_list(body)
    if kind == "full":
        return cm_type(fld, reps), height_full
    if kind == "partial":
        if not reps:
            raise InputError("partial type needs at least one embedding")
        return partial_cm_type(fld, reps), height_partial
    raise InputError(f"type must look like full:1,2 or partial:1,2, got {text!r}")


def cmd_height(args) -> int:
    fld = parse_field_spec(args.field)
    typ, fn = _parse_type(fld, args.type)
    rep = fn(typ, args.convention, _make_cache(args))
    out = {"schema_version": SCHEMA_VERSION, "tool_version": __version__, **rep.as_dict()}
    print(_dump(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    start = time.perf_counter()
    specs = split_field_list(args.fields) if args.fields else None
    fields, skipped = select_fields(specs, args.conductor_max, args.max_g)
    opts = Options(convention=args.convention, tolerance=args.tolerance, cache=_make_cache(args))
    checks = run_checks(args.suite, fields, opts, jobs=args.jobs)
    code = exit_code(checks)
    out = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "suite": args.suite,
        "fields": [f.label for f in fields],
        "skipped_fields": skipped,
        "max_g": args.max_g,
        "convention": args.convention,
        "tolerance": args.tolerance,
        "checks": [c.as_dict() for c in checks],
        "summary": {
            "total": len(checks),
            "failed_exact": sum(1 for c in checks if c.kind == "exact" and not c.passed),
            "failed_numeric": sum(1 for c in checks if c.kind == "numeric" and not c.passed),
            "reports": sum(1 for c in checks if c.kind == "report"),
        },
        "pass": code == EXIT_OK,
        "exit_code": code,
        "timestamp": _timestamp(start),
    }
    print(_dump(out))
    return code


def split_field_list(text: str) -> list[str]:
    """Split a --fields value into field specs.

    ``;`` always separates fields.  With commas only, a token that follows an
    ``n:g`` spec and is not itself a valid CM field is read as a further
    subgroup generator, so ``4,20:9,5`` is three fields.
    """
    if ";" in text:
        return [s.strip() for s in text.split(";") if s.strip()]
    merged: list[str] = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if merged and ":" in merged[-1] and ":" not in tok:
            try:
                parse_field_spec(tok)
            except ColmezError:
                merged[-1] = f"{merged[-1]},{tok}"
                continue
        merged.append(tok)
    return merged


TABLE_COLUMNS = ("p", "d", "h_conj_route", "example_rhs", "delta", "h_minus_quarter_log_d")


def cmd_table(args) -> int:
    if args.family != "biquadratic":
        raise InputError(f"unknown family {args.family!r}")
    primes = _int_list(args.primes or "")
    table = verify_example_family(primes, args.convention, _make_cache(args))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for r in table.rows:
        writer.writerow([r.p, r.d, repr(r.h_conj_route), repr(r.example_rhs), repr(r.delta),
                         repr(r.h_minus_quarter_log_d)])
    return EXIT_OK


# --- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--convention", choices=CONVENTIONS, default="paper",
                        help="value of Z at the trivial character: paper = -log 2pi, analytic = +log 2pi")
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--cache-dir", default=None, help="L-value cache directory (else $COLMEZ_CACHE_DIR)")
    common.add_argument("--no-cache", action="store_true")

    parser = argparse.ArgumentParser(prog="colmez", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="summarize an abelian CM field")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--subgroup", action="append", help="subgroup generators (repeatable or comma list)")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("height", parents=[common], help="conjectural height of a (partial) CM-type")
    p.add_argument("field", help="field spec n[:g1,g2,...]")
    p.add_argument("type", help="full:1,2 or partial:1,2")
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--fields", default=None, help="comma list of field specs, e.g. 4,20:9,5")
    p.add_argument("--conductor-max", type=int, default=None, help="all CM fields up to this conductor")
    p.add_argument("--max-g", type=int, default=8, help="skip (and list) fields with larger g")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="family table as CSV")
    p.add_argument("--family", default="biquadratic")
    p.add_argument("--primes", default="", help="comma list of primes p = 1 mod 4")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ColmezError, InputError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
