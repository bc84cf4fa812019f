"""Asynchronous grid runner for ``bench`` and ``sweep``.

Grid points run in a thread pool. Finished rows are merged under a lock and the
output file is rewritten after every point, so an interrupted run leaves a
valid file that the next run resumes from.
"""

import asyncio
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from edgefog.bench.schema import ExperimentSpec, ResultRow, SweepRow, SweepSpec
from edgefog.bench.store import ResultStore, bench_store, sweep_store
from edgefog.logger import logger
from edgefog.model import link_cost_bounds, normalize_instance
from edgefog.schema import Instance
from edgefog.solver import SolverBudget, SolverReport, SolverType, run_solver
from edgefog.solver.lpcf import LpcfReport
from edgefog.topology import GenParams, SweepAxis, derive_seed, generate, sweep_params


@dataclass
class GridPoint:
    label: str
    run: Callable[[], list]


def build_instance(params: GenParams) -> Instance:
    rg, jg = generate(params)
    return normalize_instance(rg, jg)


def result_row(
    n: int, seed: int, report: SolverReport, bounds: Tuple[float, float]
) -> ResultRow:
    return ResultRow(
        n=n,
        solver=report.solver,
        seed=seed,
        wall_time_s=report.wall_time,
        processing_cost=report.best.processing_cost,
        network_cost=report.best.network_cost,
        optimal=report.optimal,
        reduced_space_size=(
            report.reduced_space_size if isinstance(report, LpcfReport) else None
        ),
        nodes_explored=report.nodes_explored,
        link_low=bounds[0],
        link_high=bounds[1],
        mapping=" ".join(str(k) for k in report.best.f),
    )


class GridRunner:
    """Runs grid points on a worker pool and persists their rows."""

    def __init__(self, store: ResultStore, workers: int = 1):
        self.store = store
        self.workers = workers
        self.rows: Dict[Tuple, object] = store.load()
        self._lock = asyncio.Lock()

    async def _run_point(self, pool: ThreadPoolExecutor, point: GridPoint):
        rows = await asyncio.get_running_loop().run_in_executor(pool, point.run)
        async with self._lock:
            for row in rows:
                self.rows[row.key()] = row
            self.store.write(self.rows.values())
        logger.info(f"Finished {point.label} ({len(rows)} rows)")

    async def run(self, points: List[GridPoint]) -> list:
        if points:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                await asyncio.gather(*(self._run_point(pool, point) for point in points))
        elif not self.store.path.exists():
            self.store.write(self.rows.values())
        return sorted(self.rows.values(), key=lambda row: row.key())


def _bench_point(
    spec: ExperimentSpec, n: int, seed: int, solvers: List[SolverType], existing: Dict
) -> Callable[[], List[ResultRow]]:
    def run() -> List[ResultRow]:
        params = GenParams.from_settings(n, settings=spec.generator, seed=seed)
        instance = build_instance(params)
        bounds = link_cost_bounds(instance)
        budget = SolverBudget.from_ms(spec.time_limit_ms, spec.node_limit)

        rows = []
        lpcf_time: Optional[float] = None
        lpcf_row = existing.get((n, SolverType.LPCF.value, seed))
        if lpcf_row is not None:
            lpcf_time = lpcf_row.wall_time_s
        for kind in solvers:
            solver_budget = budget
            if kind is SolverType.NOC_BNB and spec.match_lpcf_time:
                solver_budget = SolverBudget(time_limit=lpcf_time, node_limit=spec.node_limit)
            report = run_solver(kind, instance, solver_budget)
            if kind is SolverType.LPCF:
                lpcf_time = report.wall_time
            rows.append(result_row(n, seed, report, bounds))
        return rows

    return run


def _solver_order(solvers: List[SolverType], match_lpcf_time: bool) -> List[SolverType]:
    ordered = list(dict.fromkeys(SolverType(s) for s in solvers))
    if match_lpcf_time:
        # LPCF's wall time is the noc-bnb time limit
        ordered.sort(key=lambda kind: kind is not SolverType.LPCF)
    return ordered


async def run_bench(spec: ExperimentSpec) -> List[ResultRow]:
    """Solve every (n, solver, seed) grid point missing from the output file."""
    runner = GridRunner(bench_store(spec.output, spec.format), spec.workers)
    solvers = _solver_order(spec.solvers, spec.match_lpcf_time)

    points = []
    for n in sorted(set(spec.sizes)):
        for s in range(spec.seeds):
            seed = derive_seed(spec.base_seed, n, s)
            missing = [k for k in solvers if (n, k.value, seed) not in runner.rows]
            if not missing:
                logger.debug(f"Skipping n={n} seed={seed}: already in {spec.output}")
                continue
            points.append(
                GridPoint(
                    label=f"n={n} seed={seed} solvers={','.join(k.value for k in missing)}",
                    run=_bench_point(spec, n, seed, missing, dict(runner.rows)),
                )
            )
    return await runner.run(points)


def summarize(
    axis: SweepAxis, axis_value: float, n: int, reports: List[LpcfReport]
) -> SweepRow:
    network = np.array([r.best.network_cost for r in reports])
    processing = np.array([r.best.processing_cost for r in reports])
    std = float(network.std(ddof=1)) if network.size > 1 else 0.0
    return SweepRow(
        axis=axis,
        value=axis_value,
        n=n,
        seeds=len(reports),
        mean_network_cost=float(network.mean()),
        std_network_cost=std,
        stderr_network_cost=std / math.sqrt(network.size),
        mean_processing_cost=float(processing.mean()),
        exhausted_runs=sum(1 for r in reports if r.space_exhausted),
    )


def _sweep_point(
    spec: SweepSpec, value: float, params: GenParams
) -> Callable[[], List[SweepRow]]:
    def run() -> List[SweepRow]:
        budget = SolverBudget.from_ms(spec.time_limit_ms, spec.node_limit)
        reports = []
        for s in range(spec.seeds):
            seed = derive_seed(params.seed, params.n_total, s)
            instance = build_instance(params.with_values(seed=seed))
            reports.append(run_solver(SolverType.LPCF, instance, budget))
        return [summarize(spec.axis, value, params.n_total, reports)]

    return run


async def run_sweep(spec: SweepSpec) -> List[SweepRow]:
    """Run LPCF over every sweep point missing from the output file."""
    runner = GridRunner(sweep_store(spec.output, spec.format), spec.workers)

    points = []
    for n in sorted(set(spec.sizes)):
        base = GenParams.from_settings(n, settings=spec.generator, seed=spec.base_seed)
        for value, params in zip(spec.values, sweep_params(base, spec.axis, spec.values)):
            label = f"{spec.axis.value}={value} n={n}"
            if (spec.axis.value, float(value), n) in runner.rows:
                logger.debug(f"Skipping {label}: already in {spec.output}")
                continue
            points.append(GridPoint(label=label, run=_sweep_point(spec, float(value), params)))
    return await runner.run(points)
