"""Command-line front end.

Subcommands: analyze, validate, region, simulate, cross-check.  Exit
codes: 0 on success, 1 when a validation or membership check fails, 2 on
usage or configuration errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .alphapoly import as_fraction, format_fraction
from .dofcalc import InvalidScheme, dof_symbolic, validate
from .region import (
    DimensionMismatch,
    achievability_cross_check,
    contains,
    region_theorem1,
    region_theorem3,
    vertex_table,
)
from .simulate import ConfigError, parse_config, resolve_scheme_ref, run_sweep


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doflab",
        description="Exact DoF calculus and link-level sweeps for "
        "multiuser broadcast schemes under quality-limited CSIT.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="print a scheme's exact DoF")
    p.add_argument("scheme", help="builder name (x1, x2:0, x3:4, ...) or scheme file")
    p.add_argument("--alpha", help="also evaluate at this rational quality, e.g. 1/2")

    p = sub.add_parser("validate", help="run the scheme validator")
    p.add_argument("scheme", help="builder name or scheme file")

    p = sub.add_parser("region", help="inspect a DoF region or test membership")
    p.add_argument("region", choices=["theorem1", "theorem3"])
    p.add_argument("--alpha", default="1/2", help="rational quality (default 1/2)")
    p.add_argument("--point", help="comma-separated rational coordinates")
    p.add_argument("--verbatim", action="store_true",
                   help="use the printed vertex table without the symmetry fix")
    p.add_argument("--json", action="store_true", help="emit the region document")

    p = sub.add_parser("simulate", help="run a Monte Carlo SNR sweep")
    p.add_argument("config", help="sweep configuration file (key=value lines)")

    p = sub.add_parser("cross-check", help="check a scheme against a region")
    p.add_argument("scheme")
    p.add_argument("region", choices=["theorem1", "theorem3"])
    return parser


def _get_region(name: str, verbatim: bool = False):
    if name == "theorem3":
        return region_theorem3()
    return region_theorem1("verbatim" if verbatim else "symmetry_corrected")


def _cmd_analyze(args) -> int:
    scheme = resolve_scheme_ref(args.scheme)
    try:
        result = dof_symbolic(scheme)
    except InvalidScheme as exc:
        print(exc)
        return 1
    print(f"scheme {scheme.name}: K={scheme.K} N={scheme.N} slots={scheme.slot_count}")
    for u, d in enumerate(result.per_user):
        print(f"  user {u}: {d}")
    print(f"  total : {result.total}")
    if args.alpha is not None:
        a = as_fraction(args.alpha)
        values = [d.at(a) for d in result.per_user]
        print(f"at alpha = {format_fraction(a)}:")
        for u, v in enumerate(values):
            print(f"  user {u}: {format_fraction(v)}")
        print(f"  total : {format_fraction(sum(values, Fraction(0)))}")
    return 0


def _cmd_validate(args) -> int:
    scheme = resolve_scheme_ref(args.scheme)
    report = validate(scheme)
    print(report)
    return 0 if report.ok else 1


def _cmd_region(args) -> int:
    region = _get_region(args.region, args.verbatim)
    if args.json:
        print(json.dumps(region.to_doc(), indent=2))
        return 0
    alpha = as_fraction(args.alpha)
    if args.point is None:
        print(f"region {region.name} vertices at alpha = {format_fraction(alpha)}:")
        for row in vertex_table(region, [alpha]):
            coords = ", ".join(row["coords"])
            print(f"  {row['vertex']}: ({coords})")
        return 0
    point = [as_fraction(x) for x in args.point.split(",")]
    inside = contains(region, point, alpha)
    coords = ", ".join(format_fraction(x) for x in point)
    verdict = "inside" if inside else "outside"
    print(f"({coords}) is {verdict} {region.name} at alpha = {format_fraction(alpha)}")
    return 0 if inside else 1


def _cmd_simulate(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        config = parse_config(fh.read())
    report = run_sweep(config)
    for s in report.slopes:
        print(
            f"{s.scheme} alpha={format_fraction(s.alpha)} user={s.user}: "
            f"DoF {s.dof:.4f} (residual {s.residual:.4f}, "
            f"window {s.window_db[0]:g}-{s.window_db[1]:g} dB)"
        )
    if not config.output:
        sys.stdout.write(report.to_csv_text())
    return 0


def _cmd_cross_check(args) -> int:
    scheme = resolve_scheme_ref(args.scheme)
    region = _get_region(args.region)
    report = achievability_cross_check(scheme, region)
    print(report)
    return 0 if report.all_inside else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "validate": _cmd_validate,
        "region": _cmd_region,
        "simulate": _cmd_simulate,
        "cross-check": _cmd_cross_check,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, ValueError, OSError, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
