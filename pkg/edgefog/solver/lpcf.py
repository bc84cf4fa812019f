"""Least Processing Cost First (LPCF) assignment.

1. Solve the linear assignment problem on processing costs.
2. Collect the processing-cost preserving orbit of that solution: permutations
   within equal-power device classes and within equal-size job classes.
3. Return the orbit member with the least network cost.

The orbit of ``base`` is the double coset ``S_dev . base . S_job``. A bijection
belongs to it exactly when, for every job class K and device class C, it sends
as many jobs of K into C as ``base`` does. Those counts fix the processing cost,
and they are what the enumeration below keeps as quotas.
"""

import itertools
import math
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from edgefog.exceptions import SolverError
from edgefog.logger import logger
from edgefog.model.costs import processing_cost
from edgefog.schema import Assignment, Instance
from edgefog.solver.base import COST_TOLERANCE, BudgetClock, SolverBudget, SolverReport
from edgefog.solver.lap import build_processing_matrix, solve_lap


Partition = Tuple[Tuple[int, ...], ...]

_DIAGNOSTIC_MAX_N = 7


class EquivalenceClasses(BaseModel):
    """Device indices grouped by equal power, job indices grouped by equal size"""

    model_config = ConfigDict(frozen=True)

    device_classes: Partition
    job_classes: Partition

    @model_validator(mode="after")
    def _validate_partitions(self) -> "EquivalenceClasses":
        for name in ("device_classes", "job_classes"):
            members = sorted(i for group in getattr(self, name) for i in group)
            if members != list(range(len(members))):
                raise ValueError(f"{name} must cover every index exactly once")
        if len(self.device_classes) and sum(map(len, self.device_classes)) != sum(
            map(len, self.job_classes)
        ):
            raise ValueError("device and job partitions must cover the same n")
        return self

    @property
    def n(self) -> int:
        return sum(len(group) for group in self.device_classes)

    def class_index(self) -> Tuple[List[int], List[int]]:
        """Class number of every device and of every job"""
        device_of = [0] * self.n
        for c, group in enumerate(self.device_classes):
            for device in group:
                device_of[device] = c
        job_of = [0] * self.n
        for k, group in enumerate(self.job_classes):
            for job in group:
                job_of[job] = k
        return device_of, job_of


def _group_by(values: np.ndarray) -> Partition:
    buckets: Dict[float, List[int]] = {}
    for index, value in enumerate(values.tolist()):
        buckets.setdefault(value, []).append(index)
    return tuple(tuple(group) for group in buckets.values())


def equivalence_classes(instance: Instance) -> EquivalenceClasses:
    """Group by exact value equality; classes are ordered by their first index."""
    return EquivalenceClasses(
        device_classes=_group_by(instance.device_power),
        job_classes=_group_by(instance.job_size),
    )


class _OrbitLayout:
    """Quotas and candidate devices describing the orbit of one base permutation."""

    def __init__(self, base: Sequence[int], classes: EquivalenceClasses):
        self.n = classes.n
        self.base = tuple(int(x) for x in base)
        self.device_of, self.job_of = classes.class_index()
        self.quota = [[0] * len(classes.device_classes) for _ in classes.job_classes]
        for job, device in enumerate(self.base):
            self.quota[self.job_of[job]][self.device_of[device]] += 1

        # devices a job of class k may take, ascending
        self.candidates: List[List[int]] = []
        for k in range(len(classes.job_classes)):
            allowed = [
                device
                for c, group in enumerate(classes.device_classes)
                if self.quota[k][c]
                for device in group
            ]
            self.candidates.append(sorted(allowed))

        self.size = math.prod(math.factorial(len(g)) for g in classes.device_classes)
        self.size *= math.prod(math.factorial(len(g)) for g in classes.job_classes)
        for row in self.quota:
            for count in row:
                self.size //= math.factorial(count)

    def fixed(self, job: int) -> bool:
        return len(self.candidates[self.job_of[job]]) == 1

    def members(self) -> Iterator[Tuple[int, ...]]:
        """All orbit members in lexicographic order"""
        remaining = [list(row) for row in self.quota]
        used = [False] * self.n
        f = [-1] * self.n

        def extend(job: int) -> Iterator[Tuple[int, ...]]:
            if job == self.n:
                yield tuple(f)
                return
            k = self.job_of[job]
            for device in self.candidates[k]:
                c = self.device_of[device]
                if used[device] or not remaining[k][c]:
                    continue
                used[device] = True
                remaining[k][c] -= 1
                f[job] = device
                yield from extend(job + 1)
                used[device] = False
                remaining[k][c] += 1

        yield from extend(0)


def enumerate_orbit(
    base: Sequence[int], classes: EquivalenceClasses
) -> Iterator[Tuple[int, ...]]:
    """Yield every permutation in the orbit of ``base`` exactly once, base first."""
    layout = _OrbitLayout(base, classes)
    yield layout.base
    for member in layout.members():
        if member != layout.base:
            yield member


def reduced_space_size(classes: EquivalenceClasses, base: Sequence[int]) -> int:
    """Exact orbit cardinality.

    prod |C|! * prod |K|! / prod N[K][C]!, with N[K][C] the number of jobs of
    class K that ``base`` places in device class C.
    """
    return _OrbitLayout(base, classes).size


class LpcfReport(SolverReport):
    lap_value: float
    reduced_space_size: int = Field(..., ge=1)
    full_same_cost_network_minimum: Optional[float] = Field(
        None,
        description="Least network cost over all permutations sharing the LAP value (n <= 7)",
    )

    @property
    def space_exhausted(self) -> bool:
        return self.optimal

    def document_fields(self) -> dict:
        return {
            "solver": self.solver,
            "lap_value": self.lap_value,
            "reduced_space_size": self.reduced_space_size,
            "space_exhausted": self.optimal,
        }


class _OrbitSearch:
    """Depth-first scan of the orbit with an incumbent-pruned lower bound.

    Jobs are placed in increasing index order and candidate devices tried in
    increasing index order, so complete assignments appear in lexicographic
    order. The bound adds to the committed pairs, for every unplaced job, its
    cheapest device against the already placed partners, plus the cheapest
    device pair for each dependent pair with both jobs unplaced.

    The search starts from the better of the LAP solution and a greedy dive.
    Until a leaf of the scan itself becomes the incumbent, ties with the seed are
    explored rather than pruned, so the lexicographically smallest minimum wins.
    Costs within COST_TOLERANCE of each other count as ties.
    """

    def __init__(self, instance: Instance, layout: _OrbitLayout, clock: BudgetClock):
        n = instance.n
        self.n = n
        self.layout = layout
        self.clock = clock
        self.d_conn = instance.d_conn
        self.pair_rows, self.pair_cols, self.pair_weights = instance.dependent_pairs()
        self.neighbours: List[List[Tuple[int, float]]] = [[] for _ in range(n)]
        for i, j, w in zip(
            self.pair_rows.tolist(), self.pair_cols.tolist(), self.pair_weights.tolist()
        ):
            self.neighbours[i].append((j, w))
            self.neighbours[j].append((i, w))
        self.neighbour_index = [
            np.asarray([o for o, _ in nbrs], dtype=np.intp) for nbrs in self.neighbours
        ]
        off_diagonal = self.d_conn[np.triu_indices(n, 1)]
        self.cheapest_pair = float(off_diagonal.min()) if off_diagonal.size else 0.0

        self.device_of = np.asarray(layout.device_of, dtype=np.intp)
        self.job_of = np.asarray(layout.job_of, dtype=np.intp)
        self.remaining = np.asarray(layout.quota, dtype=np.int64)
        self.f = np.full(n, -1, dtype=np.intp)
        self.placed = np.zeros(n, dtype=bool)
        self.used = np.zeros(n, dtype=bool)
        # partial[u, x]: cost job u would add on device x against placed partners
        self.partial = np.zeros((n, n))

        self.committed = 0.0
        for job in range(n):
            if layout.fixed(job):
                self.committed += self.partial[job, layout.base[job]]
                self._place(job, layout.base[job])
        self.free_jobs = [job for job in range(n) if not self.placed[job]]

        self.best_cost = math.inf
        self.best_f: Optional[List[int]] = None
        self.lexicographic = False
        self.stopped = False

    def _place(self, job: int, device: int) -> np.ndarray:
        nbrs = self.neighbour_index[job]
        saved = self.partial[nbrs].copy()
        for other, weight in self.neighbours[job]:
            self.partial[other] += weight * self.d_conn[device]
        self.f[job] = device
        self.placed[job] = True
        self.used[device] = True
        self.remaining[self.job_of[job], self.device_of[device]] -= 1
        return saved

    def _unplace(self, job: int, device: int, saved: np.ndarray):
        self.partial[self.neighbour_index[job]] = saved
        self.f[job] = -1
        self.placed[job] = False
        self.used[device] = False
        self.remaining[self.job_of[job], self.device_of[device]] += 1

    def _allowed(self, device: int, job: int) -> bool:
        return not self.used[device] and self.remaining[self.job_of[job], self.device_of[device]] > 0

    def _lower_bound(self) -> float:
        unplaced = np.flatnonzero(~self.placed)
        if unplaced.size == 0:
            return 0.0
        open_quota = self.remaining > 0
        allowed = open_quota[np.ix_(self.job_of[unplaced], self.device_of)] & ~self.used[None, :]
        cheapest = np.where(allowed, self.partial[unplaced], np.inf).min(axis=1).sum()
        both_open = ~self.placed[self.pair_rows] & ~self.placed[self.pair_cols]
        return float(cheapest) + float(self.pair_weights[both_open].sum()) * self.cheapest_pair

    def _dominated(self, bound: float) -> bool:
        if bound > self.best_cost + COST_TOLERANCE:
            return True
        return self.lexicographic and bound >= self.best_cost - COST_TOLERANCE

    def _cost_of(self, f: Sequence[int]) -> float:
        f = np.asarray(f, dtype=np.intp)
        return math.fsum(self.pair_weights * self.d_conn[f[self.pair_rows], f[self.pair_cols]])

    def _accept(self, cost: float, f: List[int]) -> bool:
        """Keep ``f`` when it is cheaper, or tied and lexicographically smaller."""
        if self.best_f is not None and cost >= self.best_cost - COST_TOLERANCE:
            if cost > self.best_cost + COST_TOLERANCE or f >= self.best_f:
                return False
        self.best_cost, self.best_f = min(cost, self.best_cost), f
        return True

    def _greedy(self) -> List[int]:
        trail = []
        for job in self.free_jobs:
            k = self.job_of[job]
            options = [d for d in self.layout.candidates[k] if self._allowed(d, job)]
            device = min(options, key=lambda d: (self.partial[job, d], d))
            trail.append((job, device, self._place(job, device)))
        f = self.f.tolist()
        for job, device, saved in reversed(trail):
            self._unplace(job, device, saved)
        return f

    def seed(self, candidates: Sequence[Sequence[int]]):
        for f in candidates:
            self._accept(self._cost_of(f), list(f))

    def run(self):
        self.seed([list(self.layout.base), self._greedy()])
        self._search(0, self.committed)

    def _search(self, depth: int, committed: float):
        if self.clock.tick():
            self.stopped = True
            return
        if depth == len(self.free_jobs):
            f = self.f.tolist()
            cost = self._cost_of(f)
            self._accept(cost, f)
            # every later leaf is lexicographically larger than this one
            if cost <= self.best_cost + COST_TOLERANCE:
                self.lexicographic = True
            return
        if self._dominated(committed + self._lower_bound()):
            return

        job = self.free_jobs[depth]
        for device in self.layout.candidates[self.job_of[job]]:
            if not self._allowed(device, job):
                continue
            increment = float(self.partial[job, device])
            if self._dominated(committed + increment):
                continue
            saved = self._place(job, device)
            self._search(depth + 1, committed + increment)
            self._unplace(job, device, saved)
            if self.stopped:
                return


def same_cost_network_minimum(instance: Instance, lap_value: float) -> Optional[float]:
    """Least network cost over every permutation whose processing cost equals
    ``lap_value``; None when n is too large to enumerate."""
    if instance.n > _DIAGNOSTIC_MAX_N:
        return None
    best = math.inf
    rows, cols, weights = instance.dependent_pairs()
    for perm in itertools.permutations(range(instance.n)):
        if abs(processing_cost(perm, instance) - lap_value) <= COST_TOLERANCE:
            f = np.asarray(perm)
            best = min(best, math.fsum(weights * instance.d_conn[f[rows], f[cols]]))
    return best


def solve_lpcf(
    instance: Instance,
    budget: Optional[SolverBudget] = None,
    diagnose: bool = False,
) -> LpcfReport:
    """Run the three LPCF stages under ``budget``.

    When the budget runs out during stage 3 the best orbit member found so far
    is returned (the LAP solution itself if none was completed) with
    ``space_exhausted`` false.
    """
    clock = (budget or SolverBudget.unlimited()).start()

    lap = solve_lap(build_processing_matrix(instance))
    layout = _OrbitLayout(lap.f, equivalence_classes(instance))
    logger.debug(f"lpcf: lap_value={lap.value:g} reduced_space_size={layout.size}")

    search = _OrbitSearch(instance, layout, clock)
    search.run()
    best_f = search.best_f if search.best_f is not None else list(lap.f)
    best = Assignment.evaluate(best_f, instance)
    if best.processing_cost != lap.value:
        raise SolverError(
            "Orbit member changed the processing cost",
            lap_value=lap.value,
            processing_cost=best.processing_cost,
        )

    full_minimum = same_cost_network_minimum(instance, lap.value) if diagnose else None
    exhausted = not search.stopped
    logger.info(
        f"lpcf: n={instance.n} processing_cost={best.processing_cost:g} "
        f"network_cost={best.network_cost:g} space_exhausted={exhausted} "
        f"nodes={clock.nodes} time={clock.elapsed:.3f}s"
    )
    return LpcfReport(
        solver="lpcf",
        best=best,
        optimal=exhausted,
        nodes_explored=clock.nodes,
        wall_time=clock.elapsed,
        lap_value=lap.value,
        reduced_space_size=layout.size,
        full_same_cost_network_minimum=full_minimum,
    )
