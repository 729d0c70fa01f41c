"""Command line interface: ``bbqp {solve,exact,generate,reduce-bqp,landscape}``.

Exit codes: 0 success, 2 input error, 3 instance too large for ``exact``.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .errors import BBQPError, TooLargeError
from .fileio import (parse_bqp, parse_solution, read_instance, serialize_instance,
                     serialize_solution, write_text)
from .harness import ALGORITHMS, Budget, generate_random_instance, multi_start
from .landscape import DEFAULT_SAMPLES, sample_landscape, write_landscape_csv
from .model import brute_force_opt, reduce_bqp, reduction_guard
from .tabu import TabuParams

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TOO_LARGE = 3


def _u64(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _emit(text, out):
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def cmd_solve(args):
    if args.time_limit is None and args.restarts is None:
        raise BBQPError("solve needs --time-limit and/or --restarts")
    inst = read_instance(args.instance)
    budget = Budget(wall_seconds=args.time_limit, max_restarts=args.restarts)
    params = TabuParams(tabu_depth=args.tabu_depth)
    report = multi_start(inst, args.algo, params, budget, master_seed=args.seed,
                         jobs=args.jobs)
    if args.tsv:
        print(report.to_tsv(header=args.header))
    else:
        print(report.to_block())
    if args.out:
        write_text(args.out, serialize_solution(report.best_solution))
    return EXIT_OK


def cmd_exact(args):
    inst = read_instance(args.instance)
    sol, value = brute_force_opt(inst)
    print(value)
    print(serialize_solution(sol).split("\n", 1)[1], end="")
    if args.out:
        write_text(args.out, serialize_solution(sol))
    return EXIT_OK


def cmd_generate(args):
    inst = generate_random_instance(args.rows, args.cols, args.lo, args.hi, args.seed)
    _emit(serialize_instance(inst), args.out)
    return EXIT_OK


def cmd_reduce_bqp(args):
    Qp, cp = parse_bqp(args.instance)
    M = args.M if args.M is not None else reduction_guard(Qp, cp)
    inst = reduce_bqp(Qp, cp, M)
    _emit(serialize_instance(inst), args.out)
    return EXIT_OK


def cmd_landscape(args):
    inst = read_instance(args.instance)
    reference = parse_solution(args.reference) if args.reference else None
    samples = sample_landscape(inst, args.samples, TabuParams(tabu_depth=args.tabu_depth),
                               reference=reference, master_seed=args.seed)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_landscape_csv(samples, fh)
    else:
        write_landscape_csv(samples, sys.stdout)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bbqp", description="Heuristics for bipartite boolean quadratic programming.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="multi-start heuristic search")
    p.add_argument("--instance", required=True)
    p.add_argument("--algo", choices=ALGORITHMS, default="hybrid")
    p.add_argument("--time-limit", type=float, help="wall-clock budget in seconds")
    p.add_argument("--restarts", type=_positive_int, help="number of random restarts")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--tabu-depth", type=_positive_int, help="default 10*(m+n)")
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")
    p.add_argument("--out", help="write the best solution here")
    p.add_argument("--tsv", action="store_true", help="tab-separated report line")
    p.add_argument("--header", action="store_true", help="with --tsv, print a header line")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="brute-force optimum (m + n <= 30)")
    p.add_argument("--instance", required=True)
    p.add_argument("--out", help="write the optimal solution here")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("generate", help="uniform random instance")
    p.add_argument("--rows", type=_positive_int, required=True)
    p.add_argument("--cols", type=_positive_int, required=True)
    p.add_argument("--lo", type=int, default=-100)
    p.add_argument("--hi", type=int, default=100)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce-bqp", help="encode a BQP file as a BBQP instance")
    p.add_argument("--instance", required=True, help="BQP file ('BQP 1' format)")
    p.add_argument("--M", type=int, help="penalty; default is the smallest safe value")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce_bqp)

    p = sub.add_parser("landscape", help="fitness-distance samples as CSV")
    p.add_argument("--instance", required=True)
    p.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--tabu-depth", type=_positive_int)
    p.add_argument("--reference", help="reference solution file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_landscape)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except TooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (BBQPError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
