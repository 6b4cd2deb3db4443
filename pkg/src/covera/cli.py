"""Command line entry point: ``covera {bound|table|construct|verify|search}``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import tables
from .bounds import TrivialParametersError, best_bounds, make_params
from .construct import affine_plane, blowup, restrict_covering
from .designs import (
    DesignFormatError,
    MalformedDesignError,
    SoundnessViolation,
    bose_lower,
    certificate_check,
    classify,
    excess_or_leave,
    format_design,
    read_design,
    write_design,
)
from .oracle import SearchBudget, max_pack, min_cover

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _report_rows(report):
    for e in report.entries:
        yield {
            "name": e.name,
            "applicable": e.applicable,
            "exact": None if e.value is None else str(e.value),
            "rounded": e.rounded,
        }


def cmd_bound(args) -> int:
    try:
        p = make_params(args.v, args.k, args.lam)
    except TrivialParametersError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = best_bounds(p, args.side)
    out = sys.stdout
    if args.format == "json":
        for row in _report_rows(report):
            out.write(json.dumps(row) + "\n")
        out.write(json.dumps({"best": report.best, "best_source": report.best_source}) + "\n")
    elif args.format == "tsv":
        out.write("name\tapplicable\texact\trounded\n")
        for row in _report_rows(report):
            out.write(
                f"{row['name']}\t{int(row['applicable'])}\t{row['exact'] or ''}\t"
                f"{'' if row['rounded'] is None else row['rounded']}\n"
            )
        out.write(f"best\t1\t\t{report.best}\t{report.best_source}\n")
    else:
        kind = "covering lower bounds" if args.side == "cover" else "packing upper bounds"
        out.write(f"{kind} for (v,k,lambda) = {p}\n")
        out.write(f"  r={p.r_cov if args.side == 'cover' else p.r_pack} "
                  f"d={p.d_cov if args.side == 'cover' else p.d_pack}\n")
        for row in _report_rows(report):
            if row["applicable"]:
                exact = f"  ({row['exact']})" if row["exact"] else ""
                out.write(f"  {row['name']:<16} {row['rounded']}{exact}\n")
            else:
                out.write(f"  {row['name']:<16} n/a\n")
        out.write(f"winner: {report.best_source} = {report.best}\n")
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    return EXIT_OK


def cmd_table(args) -> int:
    if args.n == 4:
        rows = tables.exact_table(args.k_max or tables.DEFAULT_K_MAX[4])
    else:
        rows = tables.improvement_table(args.n, args.k_max, args.lam, args.refined)
    sys.stdout.write(tables.render(rows, args.format))
    return EXIT_OK


def _summarise(d) -> str:
    cls = classify(d)
    line = f"v={d.v} k={d.k} lambda={d.lam} b={d.b} class={cls.kind}"
    if cls.kind != "neither":
        g = excess_or_leave(d)
        label = "excess" if cls.is_covering else "leave"
        line += f" {label}_edges={sum(g.mult.values())}"
    return line


def cmd_construct(args) -> int:
    try:
        if args.kind == "plane":
            d = affine_plane(args.q)
        elif args.kind == "blowup":
            if args.s is None:
                raise ValueError("blowup needs s")
            d = blowup(args.q, args.s)
        else:
            if args.s is None or args.v_target is None:
                raise ValueError("restrict needs s and v_target")
            d = restrict_covering(blowup(args.q, args.s), args.v_target)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        write_design(d, args.out)
    else:
        sys.stdout.write(format_design(d))
    print(_summarise(d), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def _parse_list(text: str, conv):
    return [conv(tok) for tok in text.split(",") if tok.strip()]


def cmd_verify(args) -> int:
    try:
        d = read_design(args.path)
    except (DesignFormatError, MalformedDesignError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cls = classify(d)
    print(_summarise(d))
    if cls.kind == "neither":
        print("violation: design is neither a covering nor a packing")
        return EXIT_VIOLATION
    ok = True
    rank = bose_lower(d)
    print(f"bose_lower={rank}")
    if d.b < rank:
        print(f"violation: b={d.b} < rank(M*)={rank}")
        ok = False
    if 3 <= d.k < d.v:
        p = make_params(d.v, d.k, d.lam)
        if cls.is_covering:
            report = best_bounds(p, "cover")
            print(f"covering lower bound {report.best} ({report.best_source})")
            if d.b < report.best:
                print(f"violation: b={d.b} below covering lower bound {report.best}")
                ok = False
        if cls.is_packing:
            report = best_bounds(p, "pack")
            print(f"packing upper bound {report.best} ({report.best_source})")
            if d.b > report.best:
                print(f"violation: b={d.b} above packing upper bound {report.best}")
                ok = False
    if args.subset:
        try:
            s = _parse_list(args.subset, int)
            weights = _parse_list(args.weights, Fraction) if args.weights else [Fraction(1)] * len(s)
            if len(weights) != len(s):
                raise ValueError("need one weight per point of S")
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        try:
            holds = certificate_check(d, s, dict(zip(s, weights)))
            print(f"certificate premise {'holds' if holds else 'fails'} for |S|={len(set(s))}")
        except SoundnessViolation as exc:
            print(f"violation: {exc}")
            ok = False
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_search(args) -> int:
    budget = SearchBudget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    search = min_cover if args.side == "cover" else max_pack
    try:
        result = search(args.v, args.k, args.lam, budget)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not result.ok:
        print(f"budget-exceeded after {result.nodes} nodes (bounds {result.lower}..{result.upper})")
        return EXIT_BUDGET
    name = "C" if args.side == "cover" else "D"
    print(f"{name}_{args.lam}({args.v},{args.k}) = {result.value}  [{result.nodes} nodes]")
    if args.out:
        write_design(result.witness, args.out)
    else:
        sys.stdout.write(format_design(result.witness))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covera", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="report every bound for one parameter set")
    p.add_argument("v", type=int)
    p.add_argument("k", type=int)
    p.add_argument("lam", type=int, nargs="?", default=1)
    p.add_argument("--side", choices=("cover", "pack"), default="cover")
    p.add_argument("--format", choices=("text", "tsv", "json"), default="text")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("table", help="regenerate an improvement table (1-3) or the exact table (4)")
    p.add_argument("n", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--lam", type=int, default=1)
    p.add_argument("--refined", action="store_true", help="compare with the +1 refined Schonheim bound")
    p.add_argument("--format", choices=("text", "tsv", "jsonl"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("construct", help="build an affine plane, blow-up or restricted covering")
    p.add_argument("kind", choices=("plane", "blowup", "restrict"))
    p.add_argument("q", type=int)
    p.add_argument("s", type=int, nargs="?")
    p.add_argument("v_target", type=int, nargs="?")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a design file against the rank and bound certificates")
    p.add_argument("path")
    p.add_argument("--subset", help="comma-separated points S for the weighted certificate")
    p.add_argument("--weights", help="comma-separated positive rationals, one per point of S")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive covering/packing number for tiny parameters")
    p.add_argument("v", type=int)
    p.add_argument("k", type=int)
    p.add_argument("lam", type=int, nargs="?", default=1)
    p.add_argument("--side", choices=("cover", "pack"), default="cover")
    p.add_argument("--max-seconds", type=float, default=None)
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
