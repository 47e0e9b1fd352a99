"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 input-validation error, 3 generation
failure (attempt/trial budget exhausted or a distribution check failed).
All randomness flows from --seed, echoed on every randomized subcommand.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import bench as bench_mod
from .completion import (
    check_postfix_condition,
    combined_tree,
    completion_order,
)
from .entropy import (
    GibbsModel,
    distance_entropy_profile,
    position_entropy_map,
    sequence_entropy_profile,
    write_profile_csv,
)
from .errors import (
    FileFormatError,
    GenerationFailureError,
    TreeOrderError,
)
from .lattice import Lattice, full_region
from .masking import random_connected_mask, read_mask, write_mask
from .orders import OrderKind, make_order, validate_order, write_order
from .rng import Rng
from .spanning import (
    count_spanning_trees,
    enumerate_spanning_trees,
    wilson_ust,
)

_KIND_NAMES = {
    "raster": OrderKind.RASTER,
    "random": OrderKind.RANDOM_PERMUTATION,
    "star": OrderKind.SPANNING_TREE,
}


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for
    input validation, so remap to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="treeorder", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("order", help="generate a sequence order file")
    p.add_argument("--kind", choices=sorted(_KIND_NAMES), required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("mask", help="generate a random connected mask file")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-attempts", type=int, default=1000)
    p.add_argument("--out", required=True)

    p = sub.add_parser("complete", help="sample a postfix-completion order for a mask")
    p.add_argument("--mask", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--traversal", choices=["bfs", "dfs"], default="bfs")
    p.add_argument("--root", choices=["farthest", "random"], default="farthest")
    p.add_argument("--max-trials", type=int, default=100)
    p.add_argument("--out", required=True)
    p.add_argument("--self-check", dest="self_check", action="store_true",
                   default=True, help=argparse.SUPPRESS)
    p.add_argument("--no-self-check", dest="self_check", action="store_false",
                   help=argparse.SUPPRESS)

    p = sub.add_parser("count-trees", help="exact spanning-tree count of a lattice")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--w", type=int, required=True)

    p = sub.add_parser(
        "verify-uniformity",
        help="chi-square test of the tree sampler against enumeration",
    )
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--samples", type=int, default=40000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("bench", help="acceptance-ratio benchmark over strategies")
    p.add_argument("--h", type=int, default=16)
    p.add_argument("--w", type=int, default=16)
    p.add_argument("--masks-per-ratio", type=int, default=5000)
    p.add_argument("--max-trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--extended", action="store_true",
                   help="append the accepted-only mean-trials column")
    p.add_argument("--out", required=True)

    p = sub.add_parser("entropy", help="exact entropy profiles of the toy model")
    p.add_argument("--study", choices=["distance", "position", "sequence"],
                   required=True)
    p.add_argument("--j", type=float, default=0.6)
    p.add_argument("--h", type=int, default=4)
    p.add_argument("--w", type=int, default=4)
    p.add_argument("--kind", choices=sorted(_KIND_NAMES), default="random",
                   help="order family for the sequence study / prefix source")
    p.add_argument("--orders", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    return parser


def _cmd_order(args) -> int:
    lattice = Lattice(args.h, args.w)
    print(f"seed: {args.seed}")
    order = make_order(_KIND_NAMES[args.kind], lattice, Rng(args.seed))
    write_order(order, args.out)
    print(f"wrote {args.kind} order for {args.h}x{args.w} to {args.out}")
    return 0


def _cmd_mask(args) -> int:
    lattice = Lattice(args.h, args.w)
    print(f"seed: {args.seed}")
    mask = random_connected_mask(lattice, args.ratio, Rng(args.seed),
                                 args.max_attempts)
    write_mask(mask, args.out)
    print(f"wrote mask of {len(mask)} vertices (ratio {args.ratio}) to {args.out}")
    return 0


def _cmd_complete(args) -> int:
    mask = read_mask(args.mask)
    lattice = Lattice(mask.h, mask.w)
    print(f"seed: {args.seed}")
    result = completion_order(
        lattice,
        mask.region,
        Rng(args.seed),
        traversal=args.traversal,
        root_strategy=args.root,
        max_trials=args.max_trials,
    )
    if not result.accepted:
        print(f"rejected after {result.trials} trials", file=sys.stderr)
        return 3
    if args.self_check:
        masked = mask.region.vertices
        prefix_len = lattice.n - len(masked)
        ok = validate_order(result.order) and all(
            v not in masked for v in result.order.positions[:prefix_len]
        )
        if ok and args.traversal == "bfs":
            joined = combined_tree(result.prefix_tree, result.mask_tree)
            ok = check_postfix_condition(joined, mask.region)
        if not ok:
            print("error: completion self-check failed", file=sys.stderr)
            return 2
    write_order(result.order, args.out)
    print(f"trials: {result.trials}")
    print(f"wrote completion order to {args.out}")
    return 0


def _cmd_count_trees(args) -> int:
    lattice = Lattice(args.h, args.w)
    count = count_spanning_trees(full_region(lattice))
    print(count)
    print(f"log_count_per_vertex: {math.log(count) / lattice.n:.6f}")
    return 0


def _cmd_verify_uniformity(args) -> int:
    from scipy.stats import chi2

    lattice = Lattice(args.h, args.w)
    region = full_region(lattice)
    trees = enumerate_spanning_trees(region)
    print(f"seed: {args.seed}")
    print(f"enumerated trees: {len(trees)}")
    index = {t: i for i, t in enumerate(trees)}
    counts = [0] * len(trees)
    rng = Rng(args.seed)
    root = lattice.vertex(0)
    for _ in range(args.samples):
        tree = wilson_ust(region, root, rng)
        counts[index[tree.canonical_edges()]] += 1
    expected = args.samples / len(trees)
    statistic = sum((c - expected) ** 2 / expected for c in counts)
    df = len(trees) - 1
    critical = chi2.ppf(0.999, df)
    verdict = "PASS" if statistic <= critical else "FAIL"
    print(f"chi2: {statistic:.4f} (df={df}, critical at alpha=0.001: {critical:.4f})")
    print(verdict)
    return 0 if verdict == "PASS" else 3


def _cmd_bench(args) -> int:
    print(f"seed: {args.seed}")
    config = bench_mod.BenchConfig(
        h=args.h,
        w=args.w,
        masks_per_ratio=args.masks_per_ratio,
        max_trials=args.max_trials,
        master_seed=args.seed,
        workers=args.workers,
    )
    stats = bench_mod.acceptance_experiment(config)
    bench_mod.write_stats_csv(stats, args.out, extended=args.extended)
    print(f"wrote {len(stats)} rows to {args.out}")
    return 0


def _cmd_entropy(args) -> int:
    print(f"seed: {args.seed}")
    model = GibbsModel(Lattice(args.h, args.w), args.j)
    rng = Rng(args.seed)
    kind = _KIND_NAMES[args.kind]
    if args.study == "distance":
        profile = distance_entropy_profile(model, rng, args.orders, kind)
    elif args.study == "position":
        profile = position_entropy_map(model, rng, args.orders)
    else:
        profile = sequence_entropy_profile(model, kind, rng, args.orders)
    write_profile_csv(profile, args.out)
    print(f"wrote {args.study} profile ({len(profile.rows)} rows) to {args.out}")
    return 0


_COMMANDS = {
    "order": _cmd_order,
    "mask": _cmd_mask,
    "complete": _cmd_complete,
    "count-trees": _cmd_count_trees,
    "verify-uniformity": _cmd_verify_uniformity,
    "bench": _cmd_bench,
    "entropy": _cmd_entropy,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except GenerationFailureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (TreeOrderError, FileFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
