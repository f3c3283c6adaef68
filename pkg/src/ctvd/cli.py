"""Command-line front end: kernelize, solve, verify, gen, stats."""

from __future__ import annotations

import argparse
import csv
import random
import sys
from pathlib import Path

from . import io as ctvd_io
from .generate import planted_instance, random_instance
from .kernelizer import kernelize
from .solvers import approx_deletion_set, brute_force

EXACT_WARN_SIZE = 20


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ctvd_io.DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctvd",
        description=(
            "Cliques-or-trees vertex deletion: kernelize instances, solve them "
            "exactly or approximately, and run verification campaigns."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernelize", help="reduce an instance to a bounded kernel")
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path)
    p.add_argument("trace", type=Path)
    p.set_defaults(handler=cmd_kernelize)

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("input", type=Path)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--approx", action="store_true")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("verify", help="random kernelize-versus-oracle campaign")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-n", type=int, default=14)
    p.add_argument("--max-k", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("gen", help="emit a planted instance")
    p.add_argument("--cliques", type=int, default=0)
    p.add_argument("--trees", type=int, default=0)
    p.add_argument("--noise-vertices", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("output", type=Path)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("stats", help="kernel-size table over a k range")
    p.add_argument("--k-range", default="1..4", help="inclusive range, e.g. 1..4")
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("csv", type=Path)
    p.set_defaults(handler=cmd_stats)
    return parser


def cmd_kernelize(args) -> int:
    instance = ctvd_io.load_instance(args.input)
    result = kernelize(instance)
    ctvd_io.save_instance(result.instance, args.output)
    with open(args.trace, "w", encoding="utf-8") as fh:
        fh.write(ctvd_io.serialize_trace(ctvd_io.trace_document(result)))
    status = "no-instance" if result.no_instance else "kernel"
    print(
        f"{status}: n={result.instance.graph.vertex_count} "
        f"k={result.instance.k} rules={len(result.trace)}"
    )
    return 0


def cmd_solve(args) -> int:
    instance = ctvd_io.load_instance(args.input)
    if args.exact:
        n = instance.graph.vertex_count
        if n > EXACT_WARN_SIZE:
            print(
                f"warning: exact search on {n} vertices may take a while",
                file=sys.stderr,
            )
        result = brute_force(instance.graph, instance.k)
        if result.feasible:
            print("YES")
            print("witness:", _ids(result.solution))
            return 0
        print("NO")
        return 1
    modulator = approx_deletion_set(instance.graph)
    s = modulator.vertices
    print(f"modulator ({len(s)} vertices, factor {modulator.factor}):", _ids(s))
    if len(s) <= instance.k:
        print("YES")
        print("witness:", _ids(s))
        return 0
    # |S| <= factor * opt, so |S| > factor*k certifies opt > k; in between
    # the NO is only heuristic.
    certified = len(s) > modulator.factor * instance.k
    print("NO" if certified else "NO (heuristic)")
    return 1


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    failures = 0
    for i in range(args.count):
        instance = random_instance(rng, args.max_n, args.max_k)
        result = kernelize(instance)
        want = brute_force(instance.graph, instance.k).feasible
        got = (
            False
            if result.no_instance
            else brute_force(result.instance.graph, result.instance.k).feasible
        )
        if want != got:
            failures += 1
            print(f"mismatch on instance {i}: oracle={want} kernel={got}", file=sys.stderr)
            print(ctvd_io.serialize_instance(instance), file=sys.stderr)
    print(f"verify: {args.count - failures}/{args.count} passed")
    return 0 if failures == 0 else 1


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    instance = planted_instance(
        rng, args.cliques, args.trees, args.noise_vertices, args.k
    )
    ctvd_io.save_instance(instance, args.output)
    print(f"wrote {args.output}: n={instance.graph.vertex_count} k={instance.k}")
    return 0


def cmd_stats(args) -> int:
    try:
        lo, hi = _parse_range(args.k_range)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rng = random.Random(args.seed)
    rows = []
    violations = 0
    for k in range(lo, hi + 1):
        for _ in range(args.reps):
            instance = planted_instance(rng, k + 1, k + 1, k, k)
            result = kernelize(instance)
            row = {
                "k": k,
                "input_n": instance.graph.vertex_count,
                "kernel_n": result.instance.graph.vertex_count,
                "bound": result.bound,
                "rules_fired": len(result.trace),
            }
            rows.append(row)
            if row["kernel_n"] > row["bound"]:
                violations += 1
                print(f"bound violation: {row}", file=sys.stderr)
    with open(args.csv, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["k", "input_n", "kernel_n", "bound", "rules_fired"]
        )
        writer.writeheader()
        writer.writerows(rows)
    figure_path = args.csv.with_suffix(".png")
    if rows:
        from .report import write_stats_figure

        write_stats_figure(rows, figure_path)
        print(f"wrote {args.csv} ({len(rows)} rows) and {figure_path}")
    else:
        print(f"wrote {args.csv} (header only)")
    return 0 if violations == 0 else 1


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"bad k-range {text!r}; expected like 1..4")
    try:
        return int(lo), int(hi)
    except ValueError as exc:
        raise ValueError(f"bad k-range {text!r}; expected like 1..4") from exc


def _ids(vs) -> str:
    return " ".join(str(v) for v in sorted(vs)) if vs else "(empty)"


if __name__ == "__main__":
    sys.exit(main())
