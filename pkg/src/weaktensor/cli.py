"""Batch front door: build lattice families, run check suites, compute joins.

Exit codes: 0 all expected verdicts met, 1 verdict mismatch, 2 input error.
Reports are deterministic: identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import products
from .spaces import ClosureSpace, LatticeFormatError, mo_space, parse_lattice_text, \
    powerset_space, render_lattice_text
from .suites import DEFAULT_SEED, TargetError, build_product, get_suite, \
    parse_product_file, resolve_target, run_suite


class InputError(Exception):
    pass


def _load_lattice(path_text: str) -> ClosureSpace:
    path = Path(path_text)
    if not path.exists():
        raise InputError(f"no such file: {path}")
    try:
        return parse_lattice_text(path.read_text())
    except LatticeFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text)


def cmd_build(args: argparse.Namespace) -> int:
    chosen = [bool(args.mo), bool(args.powerset), bool(args.product), bool(args.lattice)]
    if sum(chosen) != 1:
        raise InputError("pick exactly one of --mo, --powerset, --product, --lattice")
    if args.mo:
        space = mo_space(args.mo)
    elif args.powerset:
        space = powerset_space(args.powerset)
    elif args.lattice:
        space = _load_lattice(args.lattice)
    else:
        kind = args.product[0]
        if kind not in ("box", "fraser", "circle"):
            raise InputError(f"unknown product kind {kind!r}")
        files = args.product[1:]
        if not 2 <= len(files) <= 3:
            raise InputError("--product takes a kind and two or three factor files")
        factors = [_resolve_cli_target(f) for f in files]
        try:
            space = build_product(kind, factors)
        except (ValueError, AssertionError) as exc:
            raise InputError(str(exc)) from None
    _emit(render_lattice_text(space), args.out)
    return 0


def _resolve_cli_target(text: str) -> ClosureSpace:
    try:
        return resolve_target(text, Path.cwd())
    except (TargetError, LatticeFormatError, ValueError) as exc:
        raise InputError(str(exc)) from None


def cmd_check(args: argparse.Namespace) -> int:
    try:
        suite = get_suite(args.suite, Path.cwd())
        report = run_suite(suite, seed=args.seed, base_dir=Path.cwd())
    except (TargetError, LatticeFormatError) as exc:
        raise InputError(str(exc)) from None
    _emit(report.render(), args.out)
    if args.timings:
        for rec in report.records:
            print(f"# {rec.name}: {rec.elapsed:.3f}s", file=sys.stderr)
    return 0 if report.all_expected else 1


def _parse_tuples(universe: products.ProductUniverse, text: str) -> int:
    mask = 0
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        labels = [p.strip() for p in chunk.split(",")]
        try:
            mask |= 1 << universe.encode_labels(labels)
        except ValueError as exc:
            raise InputError(f"bad tuple {chunk!r}: {exc}") from None
    if mask == 0:
        raise InputError("no tuples given")
    return mask


def cmd_join(args: argparse.Namespace) -> int:
    if bool(args.product_file) == bool(args.product):
        raise InputError("give either a product file or --product KIND A B [C]")
    if args.product_file:
        path = Path(args.product_file)
        if not path.exists():
            raise InputError(f"no such file: {path}")
        try:
            kind, factors = parse_product_file(path)
        except TargetError as exc:
            raise InputError(str(exc)) from None
    else:
        kind = args.product[0]
        factors = [_resolve_cli_target(f) for f in args.product[1:]]
    try:
        universe = products.ProductUniverse(factors)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    region = _parse_tuples(universe, args.tuples)
    lines = [f"R0: {universe.render_set(region)}"]
    if args.method == "box":
        result = products.box_join(universe, region)
    elif args.method == "fraser":
        result = products.fraser_join(universe, region)
    else:
        if not args.betas:
            raise InputError("--method beta-sequence needs --betas, e.g. --betas 2,1,2")
        try:
            betas = [int(b) for b in args.betas.split(",")]
        except ValueError:
            raise InputError("--betas must be a comma-separated list of factor numbers")
        if any(not 1 <= b <= len(factors) for b in betas):
            raise InputError(f"factor numbers must be between 1 and {len(factors)}")
        seq = products.beta_join_sequence(universe, region, [b - 1 for b in betas])
        for i, step in enumerate(seq[1:], start=1):
            lines.append(f"R{i}: {universe.render_set(step)}")
        result = seq[-1]
    lines.append(f"RESULT: {universe.render_set(result)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weaktensor",
        description="Build weak tensor products of finite atomistic lattices "
                    "and verify their structure.")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write a canonical lattice file")
    b.add_argument("--mo", type=int, metavar="N", help="MO lattice with N atoms")
    b.add_argument("--powerset", type=int, metavar="N", help="powerset lattice on N points")
    b.add_argument("--product", nargs="+", metavar="ARG",
                   help="KIND A B [C] with KIND box|fraser|circle")
    b.add_argument("--lattice", metavar="FILE", help="canonicalize an existing lattice file")
    b.add_argument("--out", metavar="FILE", help="also write the output to FILE")
    b.set_defaults(fn=cmd_build)

    c = sub.add_parser("check", help="run a named or file-based check suite")
    c.add_argument("--suite", required=True, metavar="NAME|FILE")
    c.add_argument("--seed", type=int, default=DEFAULT_SEED, metavar="K")
    c.add_argument("--out", metavar="FILE")
    c.add_argument("--timings", action="store_true",
                   help="print per-check timings to stderr")
    c.set_defaults(fn=cmd_check)

    j = sub.add_parser("join", help="compute joins of point tuples in a product")
    j.add_argument("product_file", nargs="?", metavar="FILE.prod")
    j.add_argument("--product", nargs="+", metavar="ARG",
                   help="KIND A B [C] instead of a product file")
    j.add_argument("--tuples", required=True,
                   help="semicolon-separated tuples, e.g. 'a,x;b,y;c,z'")
    j.add_argument("--method", choices=("box", "fraser", "beta-sequence"),
                   default="fraser")
    j.add_argument("--betas", help="factor numbers for beta-sequence, e.g. 2,1,2")
    j.add_argument("--out", metavar="FILE")
    j.set_defaults(fn=cmd_join)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:  # console-script shim
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
