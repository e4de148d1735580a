"""``robflow`` command line tool.

Exit codes: 0 success, 1 usage or input error, 2 infeasible, 3 budget
exceeded, 4 flow violates the instance, 5 digraph not series-parallel.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from robflow.errors import (BudgetExceeded, NotSeriesParallel, PreconditionError,
                            RobflowError)
from robflow.fileio import (format_result, parse_flow, parse_instance, write_flow,
                            write_instance)
from robflow.network import validate_robust_flow
from robflow.reductions import (gen_partition_instance, gen_sat_instance, parse_dimacs_cnf,
                                parse_partition, random_sat3b2, write_dimacs_cnf)
from robflow.solve import METHODS, choose_method, solve
from robflow.spdec import decompose, random_sp_instance

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_BUDGET, EXIT_INVALID, EXIT_NOT_SP = range(6)
DEFAULT_SEED = 20240101
BUDGET_ENV = "ROBFLOW_BUDGET"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_solve(args) -> int:
    net = parse_instance(Path(args.input).read_text())
    method = args.method
    if method == "auto":
        method = choose_method(net)
        print(f"auto selected {method}")
    res = solve(net, method, _budget(args))
    sys.stdout.write(format_result(res))
    if args.verbose and res.info:
        for key in sorted(res.info):
            print(f"{key} {res.info[key]}", file=sys.stderr)
    if not res.optimal:
        return EXIT_INFEASIBLE
    if args.output:
        Path(args.output).write_text(
            write_flow(res.flow, [f"method {res.method}", f"robust cost {res.robust_cost}"]))
    return EXIT_OK


def cmd_validate(args) -> int:
    net = parse_instance(Path(args.input).read_text())
    flow = parse_flow(Path(args.flow).read_text(), net)
    violations = validate_robust_flow(net, flow)
    if not violations:
        print("ok")
        return EXIT_OK
    for v in violations:
        print(v)
    return EXIT_INVALID


def cmd_generate(args) -> int:
    rng = random.Random(args.seed)
    comments: list[str] = []
    if args.kind == "partition":
        if args.values is not None:
            p = parse_partition(" ".join(args.values))
        elif args.values_file is not None:
            p = parse_partition(Path(args.values_file).read_text())
        else:
            raise PreconditionError("partition needs --values or --values-file")
        net, beta = gen_partition_instance(p)
        comments = ["partition " + " ".join(map(str, p.values)), f"threshold {beta}"]
    elif args.kind in ("sat3b2-multi", "sat3b2-unique"):
        if args.cnf is not None:
            f = parse_dimacs_cnf(Path(args.cnf).read_text(), strict=False)
        else:
            f = random_sat3b2(args.n, rng)
        variant = "multi_sink" if args.kind == "sat3b2-multi" else "unique_sink"
        net = gen_sat_instance(f, variant)
        beta = 0
        comments = [f"sat {variant}"] + write_dimacs_cnf(f).splitlines() + ["threshold 0"]
    else:
        net, _ = random_sp_instance(args.arcs, args.max_capacity, args.max_cost,
                                    args.scenarios, mode=args.mode, rng=rng,
                                    p_fixed=args.p_fixed, max_demand=args.max_demand)
        comments = [f"random-sp seed {args.seed}"]
        beta = None
    _emit(write_instance(net, comments), args.output)
    if args.output is not None and beta is not None:
        print(f"threshold {beta}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    net = parse_instance(Path(args.input).read_text())
    tree = decompose(net)
    print(tree.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for every randomized step (default %(default)s)")
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; solving is single-threaded")
    common.add_argument("-v", "--verbose", action="store_true",
                        help="print solver statistics to stderr")

    parser = _Parser(prog="robflow", description="Robust min cost flow with fixed arcs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common], help="solve an instance")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output")
    p.add_argument("--budget", type=int,
                   help=f"enumeration/label budget (overrides ${BUDGET_ENV})")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", parents=[common], help="check a flow file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--flow", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", parents=[common], help="write a generated instance")
    p.add_argument("kind", choices=("partition", "sat3b2-multi", "sat3b2-unique", "random-sp"))
    p.add_argument("--out", dest="output")
    p.add_argument("--values", nargs="+", help="partition numbers")
    p.add_argument("--values-file", help="file of whitespace-separated partition numbers")
    p.add_argument("--cnf", help="DIMACS CNF formula; random (3,B2) formula if omitted")
    p.add_argument("--n", type=int, default=3, help="variables of a random formula")
    p.add_argument("--arcs", type=int, default=8)
    p.add_argument("--max-capacity", type=int, default=3)
    p.add_argument("--max-cost", type=int, default=5)
    p.add_argument("--scenarios", type=int, default=2)
    p.add_argument("--mode", choices=("unique", "multi"), default="unique")
    p.add_argument("--p-fixed", type=float, default=0.5)
    p.add_argument("--max-demand", type=int, default=4)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("decompose", parents=[common], help="print the SP tree")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotSeriesParallel as exc:
        shown = ", ".join(map(str, exc.witness[:10]))
        more = f" and {len(exc.witness) - 10} more" if len(exc.witness) > 10 else ""
        print(f"not series-parallel: {exc} (arcs {shown}{more})", file=sys.stderr)
        return EXIT_NOT_SP
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (RobflowError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
