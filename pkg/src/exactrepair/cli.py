"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import analytics as an
from .codes import MdsMsrCode, RbtMbrCode
from .harness import (
    DEFAULT_SEED, SCENARIOS, bandwidth_audit, run_construction_suite, scenario_instance, toy_code,
)
from .lift import CYCLIC, PERMUTATION, CapacityError, iterated_lift
from .model import random_file, store


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def int_list(text: str) -> list[int]:
    try:
        values = [int(float(v)) if "e" in v.lower() else int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def parse_base(text: str):
    if text == "toy":
        return toy_code()
    m = re.fullmatch(r"(msr|mbr):(\d+),(\d+)", text)
    if not m:
        raise UsageError(f"--base must be toy, msr:N,K or mbr:N,K; got {text!r}")
    kind, n, k = m.group(1), int(m.group(2)), int(m.group(3))
    try:
        return MdsMsrCode(n, k) if kind == "msr" else RbtMbrCode(n, k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_capacity(args):
    value = an.functional_capacity(args.k, args.d, args.alpha, args.gamma)
    print(value)
    print(an.to_decimal_string(value))
    return 0


def cmd_points(args):
    for label, (a, g) in (("msr", an.msr_point(args.k, args.d, args.B)),
                          ("mbr", an.mbr_point(args.k, args.d, args.B))):
        print(f"{label}: alpha={a} gamma={g}")
    return 0


def cmd_bound(args):
    gamma, value = an.exact_lower_bound(args.n, args.k, args.d, args.alpha, args.i)
    print(f"gamma={gamma} bound={value}")
    return 0


def cmd_fig2(args):
    if args.n < 3:
        raise UsageError("--n must be at least 3")
    _emit(an.curves_csv(an.tradeoff_curves(args.n)), args.out)
    return 0


def cmd_asymptotic(args):
    reports = [an.asymptotic_ratio(args.n, args.k, args.d, M, args.s).to_dict() for M in args.M_list]
    _emit(json.dumps(reports, indent=2) + "\n", args.out)
    return 0


def cmd_lift(args):
    base = parse_base(args.base)
    variant = PERMUTATION if args.variant == "perm" else CYCLIC
    if args.times < 0:
        raise UsageError("--times must be non-negative")
    try:
        code = iterated_lift(base, args.times, variant)
    except CapacityError as exc:
        raise UsageError(str(exc)) from None
    instance = store(code, random_file(code, random.Random(args.seed)))
    doc = code.describe()
    doc["seed"] = args.seed
    doc["file_symbols"] = len(instance.file)
    doc["node_symbol_counts"] = [len(c) for c in instance.nodes]
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def _scenario(name):
    if name not in SCENARIOS:
        raise UsageError(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}")
    return name


def cmd_verify(args):
    name = _scenario(args.scenario)
    instance = scenario_instance(name, args.seed)
    if args.flip:
        node, pos = args.flip
        if not 1 <= node <= instance.params.n or not 0 <= pos < len(instance.node(node)):
            raise UsageError(f"--flip {node}:{pos} does not address a stored symbol")
        instance = instance.with_symbol_flipped(node, pos)
    result = run_construction_suite(name, args.seed, instance=instance)
    print(result.summary())
    for note in result.notes:
        print(f"note: {note}")
    for failure in result.report.failures[:10]:
        print(f"failure: {failure}")
    if args.out:
        Path(args.out).write_text(result.to_json(indent=2) + "\n")
    return 0 if result.pass_ else 1


def cmd_audit(args):
    name = _scenario(args.scenario)
    instance = scenario_instance(name, args.seed)
    if not 1 <= args.failed <= instance.params.n:
        raise UsageError(f"--failed must be in [1, {instance.params.n}]")
    audit = bandwidth_audit(instance, args.failed, seed=args.seed)
    print(json.dumps(audit.to_dict(), indent=2))
    return 0 if all(sum(p.values()) == audit.totals[h] for h, p in audit.profiles.items()) else 1


def flip_spec(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+):(\d+)", text)
    if not m:
        raise argparse.ArgumentTypeError("expected NODE:POS")
    return int(m.group(1)), int(m.group(2))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exactrepair", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="functional-repair capacity C_{k,d}(alpha, gamma)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha", type=rational, required=True)
    p.add_argument("--gamma", type=rational, required=True)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("points", help="MSR and MBR points for file size B")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--B", type=rational, required=True)
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("bound", help="exact-repair lower bound at index i")
    for flag in ("--n", "--k", "--d", "--i"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--alpha", type=rational, default=Fraction(1))
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("fig2", help="capacity / bound / interpolation CSV for n = k+1 = d+1")
    p.add_argument("--n", type=int, default=51)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("asymptotic", help="JSON reports of the bound/capacity ratio as M grows")
    for flag in ("--n", "--k", "--d"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--s", type=rational, required=True)
    p.add_argument("--M-list", dest="M_list", type=int_list, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("lift", help="build a lifted code and write its instance JSON")
    p.add_argument("--base", required=True)
    p.add_argument("--variant", choices=["cyclic", "perm"], default="cyclic")
    p.add_argument("--times", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", help="run a verification scenario")
    p.add_argument("--scenario", required=True)
    p.add_argument("--flip", type=flip_spec, help="corrupt one stored symbol, NODE:POS")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="per-helper bandwidth profile for one failed node")
    p.add_argument("--scenario", required=True)
    p.add_argument("--failed", type=int, required=True)
    p.set_defaults(func=cmd_audit)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
