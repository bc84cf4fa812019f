import argparse
import json
import sys
from typing import List, Optional

from edgefog.bench.commands import cmd_bench, cmd_gen, cmd_solve, cmd_sweep
from edgefog.config import config
from edgefog.exceptions import EdgeFogError
from edgefog.logger import define_log_level
from edgefog.solver import SolverType
from edgefog.topology import SweepAxis


def _common(parser: argparse.ArgumentParser, seeded: bool = True):
    if seeded:
        parser.add_argument("--seed", type=int, help="Base seed (defaults to [bench] base_seed)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")


def _limits(parser: argparse.ArgumentParser):
    parser.add_argument("--time-limit-ms", type=float, help="Per-solve wall time limit")
    parser.add_argument("--node-limit", type=int, help="Per-solve explored node limit")


def _grid(parser: argparse.ArgumentParser, default_output: str):
    _limits(parser)
    parser.add_argument("--seeds", type=int, help="Seeds per grid point")
    parser.add_argument("--workers", type=int, help="Worker threads")
    parser.add_argument("-o", "--output", default=default_output, help="Result file")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgefog", description="Edge-Fog task assignment solvers and experiments"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="Generate a random Edge-Fog instance")
    _common(gen)
    gen.add_argument("--n", type=int, required=True, help="Number of devices")
    gen.add_argument("--n-jobs", type=int, help="Number of jobs (defaults to --n)")
    gen.add_argument("--edge-fraction", type=float, help="Share of Edge devices")
    gen.add_argument("--edge-density", type=float)
    gen.add_argument("--fog-density", type=float)
    gen.add_argument("--inter-density", type=float)
    gen.add_argument("--dep-density", type=float)
    gen.add_argument("-o", "--output", help="Instance file (stdout when omitted)")
    gen.set_defaults(handler=cmd_gen)

    solve = commands.add_parser("solve", help="Solve one instance document")
    _common(solve, seeded=False)
    _limits(solve)
    solve.add_argument(
        "--solver", choices=[kind.value for kind in SolverType], default=SolverType.LPCF.value
    )
    solve.add_argument("-i", "--input", help="Instance file (stdin when omitted)")
    solve.add_argument("-o", "--output", help="Assignment file (stdout when omitted)")
    solve.add_argument(
        "--diagnose",
        action="store_true",
        help="LPCF only: also report the minimum over all same-cost permutations (n <= 7)",
    )
    solve.set_defaults(handler=cmd_solve)

    bench = commands.add_parser("bench", help="Run a solver x size x seed grid")
    _common(bench)
    _grid(bench, "bench.csv")
    bench.add_argument("--sizes", required=True, help="Comma separated problem sizes")
    bench.add_argument("--solvers", default="lpcf", help="Comma separated solver names")
    bench.add_argument(
        "--match-lpcf-time",
        action="store_true",
        help="Limit every noc-bnb solve to LPCF's wall time on the same instance",
    )
    bench.set_defaults(handler=cmd_bench)

    sweep = commands.add_parser("sweep", help="Sweep one generator density with LPCF")
    _common(sweep)
    _grid(sweep, "sweep.csv")
    sweep.add_argument("--axis", choices=[axis.value for axis in SweepAxis], required=True)
    sweep.add_argument("--values", required=True, help="start:stop:step or a comma list")
    sweep.add_argument(
        "--n", "--sizes", dest="sizes", required=True, help="Problem size or comma separated sizes"
    )
    sweep.set_defaults(handler=cmd_sweep)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        define_log_level("DEBUG", config.logging.logfile_level, args.command)
    try:
        return args.handler(args)
    except EdgeFogError as e:
        sys.stderr.write(json.dumps(e.to_dict(), default=str) + "\n")
        return 2
    except KeyboardInterrupt:
        interrupted = {"error": "Interrupted", "message": "Operation cancelled", "context": {}}
        sys.stderr.write(json.dumps(interrupted) + "\n")
        return 130
