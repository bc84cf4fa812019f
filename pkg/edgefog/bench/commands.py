"""Subcommand implementations. Each returns the process exit status."""

import argparse
import asyncio
import sys
from pathlib import Path
from typing import Optional

from edgefog.bench.runner import run_bench, run_sweep
from edgefog.bench.schema import ExperimentSpec, OutputFormat, SweepSpec
from edgefog.config import config
from edgefog.exceptions import InstanceParseError, ParamInvalidError
from edgefog.logger import logger
from edgefog.model import (
    assignment_document,
    emit_assignment,
    graphs_from_document,
    load_instance_document,
    normalize_instance,
)
from edgefog.solver import SolverBudget, SolverType, run_solver, solve_lpcf
from edgefog.topology import GenParams, SweepAxis, generate_document, parse_values


def _read_text(path: Optional[str]) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceParseError(f"Cannot read {path}: {e.strerror}", field="input")


def _write_text(path: Optional[str], text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")


def _int_list(text: str, name: str) -> list:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ParamInvalidError(f"--{name} expects comma separated integers", value=text)


def _solver_list(text: str) -> list:
    try:
        return [SolverType(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError:
        choices = ", ".join(kind.value for kind in SolverType)
        raise ParamInvalidError(f"--solvers must be drawn from {choices}", value=text)


def _pick(flag, default):
    return default if flag is None else flag


def cmd_gen(args: argparse.Namespace) -> int:
    params = GenParams.from_settings(
        args.n,
        seed=_pick(args.seed, config.bench.base_seed),
        n_jobs=args.n_jobs,
        edge_fraction=args.edge_fraction,
        fog_fraction=(None if args.edge_fraction is None else 1 - args.edge_fraction),
        edge_density=args.edge_density,
        fog_density=args.fog_density,
        inter_density=args.inter_density,
        dep_density=args.dep_density,
    )
    doc = generate_document(params)
    _write_text(args.output, doc.model_dump_json(indent=2, exclude_none=True) + "\n")
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    doc = load_instance_document(_read_text(args.input))
    instance = normalize_instance(*graphs_from_document(doc))
    budget = SolverBudget.from_ms(
        _pick(args.time_limit_ms, config.solver.time_limit_ms),
        _pick(args.node_limit, config.solver.node_limit),
    )
    kind = SolverType(args.solver)
    if kind is SolverType.LPCF:
        report = solve_lpcf(instance, budget, diagnose=args.diagnose)
    else:
        report = run_solver(kind, instance, budget)

    extra = report.document_fields()
    if getattr(report, "full_same_cost_network_minimum", None) is not None:
        extra["full_same_cost_network_minimum"] = report.full_same_cost_network_minimum
    _write_text(args.output, emit_assignment(assignment_document(report.best, instance, extra)))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    spec = ExperimentSpec(
        sizes=_int_list(args.sizes, "sizes"),
        solvers=_solver_list(args.solvers),
        seeds=_pick(args.seeds, config.bench.seeds),
        base_seed=_pick(args.seed, config.bench.base_seed),
        time_limit_ms=_pick(args.time_limit_ms, config.bench.time_limit_ms),
        node_limit=args.node_limit,
        workers=_pick(args.workers, config.bench.workers),
        output=Path(args.output),
        format=OutputFormat(args.format),
        match_lpcf_time=args.match_lpcf_time,
    )
    rows = asyncio.run(run_bench(spec))
    logger.info(f"{len(rows)} rows in {spec.output}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = SweepSpec(
        axis=SweepAxis(args.axis),
        values=parse_values(args.values),
        sizes=_int_list(args.sizes, "sizes"),
        seeds=_pick(args.seeds, config.bench.seeds),
        base_seed=_pick(args.seed, config.bench.base_seed),
        time_limit_ms=_pick(args.time_limit_ms, config.bench.time_limit_ms),
        node_limit=args.node_limit,
        workers=_pick(args.workers, config.bench.workers),
        output=Path(args.output),
        format=OutputFormat(args.format),
    )
    rows = asyncio.run(run_sweep(spec))
    logger.info(f"{len(rows)} sweep points in {spec.output}")
    return 0
