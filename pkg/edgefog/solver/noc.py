"""Network-Only-Cost (NOC) baselines: exhaustive permutations and branch-and-bound.

NOC is a quadratic assignment problem: minimize the sum over dependent job
pairs of J_conn(i, j) * D_conn(f(i), f(j)) with no regard to processing cost.
"""

import itertools
import math
from typing import List, Optional

import numpy as np

from edgefog.logger import logger
from edgefog.schema import Assignment, Instance
from edgefog.solver.base import COST_TOLERANCE, BudgetClock, SolverBudget, SolverReport


_CHUNK = 1024


class NocReport(SolverReport):
    @property
    def proven_optimal(self) -> bool:
        return self.optimal

    def document_fields(self) -> dict:
        return {"solver": self.solver, "proven_optimal": self.optimal}


def _report(
    solver: str, instance: Instance, f, proven: bool, clock: BudgetClock
) -> NocReport:
    best = Assignment.evaluate(f, instance)
    logger.info(
        f"{solver}: n={instance.n} network_cost={best.network_cost:g} "
        f"proven_optimal={proven} nodes={clock.nodes} time={clock.elapsed:.3f}s"
    )
    return NocReport(
        solver=solver,
        best=best,
        optimal=proven,
        nodes_explored=clock.nodes,
        wall_time=clock.elapsed,
    )


def solve_noc_exhaustive(
    instance: Instance, budget: Optional[SolverBudget] = None
) -> NocReport:
    """Scan all n! permutations in lexicographic order.

    Permutations are scored in chunks, never more than the node budget has left.
    Only improvements beyond COST_TOLERANCE replace the incumbent, so ties
    resolve toward the lexicographically smaller permutation. A zero-cost
    permutation ends the scan early since no cost can be lower.
    """
    clock = (budget or SolverBudget.unlimited()).start()
    rows, cols, weights = instance.dependent_pairs()
    d_conn = instance.d_conn

    best_f = tuple(range(instance.n))
    best_cost = math.inf
    completed = True
    permutations = itertools.permutations(range(instance.n))
    node_limit = clock.budget.node_limit
    while True:
        size = _CHUNK if node_limit is None else min(_CHUNK, node_limit - clock.nodes)
        chunk = list(itertools.islice(permutations, size))
        if not chunk:
            break
        perms = np.asarray(chunk, dtype=np.intp)
        costs = (d_conn[perms[:, rows], perms[:, cols]] * weights).sum(axis=1)
        # first permutation of the chunk tied with its minimum
        k = int(np.flatnonzero(costs <= costs.min() + COST_TOLERANCE)[0])
        if costs[k] < best_cost - COST_TOLERANCE:
            best_cost = float(costs[k])
            best_f = chunk[k]
        if best_cost == 0:
            clock.tick(k + 1)
            break
        if clock.tick(len(chunk)):
            # the chunk just scored may have been the last one
            completed = next(permutations, None) is None
            break

    return _report("noc-perm", instance, best_f, completed, clock)


class _BranchAndBound:
    """Depth-first branch-and-bound over job -> device placements."""

    def __init__(self, instance: Instance, clock: BudgetClock):
        self.n = instance.n
        self.clock = clock
        self.d_conn = instance.d_conn
        self.j_conn = instance.j_conn

        # jobs by descending total dependence, ties by index
        degree = self.j_conn.sum(axis=1)
        self.order = sorted(range(self.n), key=lambda j: (-degree[j], j))

        self.pair_rows, self.pair_cols, self.pair_weights = instance.dependent_pairs()
        self.dev_rows, self.dev_cols = np.triu_indices(self.n, 1)
        self.dev_costs = self.d_conn[self.dev_rows, self.dev_cols]

        self.f = np.full(self.n, -1, dtype=np.intp)
        self.placed = np.zeros(self.n, dtype=bool)
        self.used = np.zeros(self.n, dtype=bool)

        self.incumbent_f: List[int] = list(range(self.n))
        self.incumbent_cost = self._full_cost(self.incumbent_f)
        self.stopped = False

    def _full_cost(self, f) -> float:
        f = np.asarray(f, dtype=np.intp)
        return math.fsum(self.pair_weights * self.d_conn[f[self.pair_rows], f[self.pair_cols]])

    def lower_bound(self) -> float:
        """Product pairing bound on the cost still to be committed.

        Undecided dependent pairs can only land on device pairs with at least one
        free end, each on a distinct pair; pairing the heaviest weights with the
        cheapest such pairs never overestimates.
        """
        undecided = ~(self.placed[self.pair_rows] & self.placed[self.pair_cols])
        weights = self.pair_weights[undecided]
        m = weights.size
        if m == 0:
            return 0.0
        open_pairs = ~(self.used[self.dev_rows] & self.used[self.dev_cols])
        costs = self.dev_costs[open_pairs]
        if m < costs.size:
            costs = np.partition(costs, m - 1)[:m]
        return float(np.dot(np.sort(weights)[::-1], np.sort(costs)))

    def search(self, depth: int, committed: float):
        if self.stopped:
            return
        if self.clock.tick():
            self.stopped = True
            return
        if depth == self.n:
            if committed < self.incumbent_cost - COST_TOLERANCE:
                self.incumbent_cost = committed
                self.incumbent_f = self.f.tolist()
                logger.debug(f"noc-bnb: incumbent {committed:g} at node {self.clock.nodes}")
            return

        job = self.order[depth]
        free = np.flatnonzero(~self.used)
        assigned = np.flatnonzero(self.placed)
        if assigned.size:
            increments = self.d_conn[np.ix_(free, self.f[assigned])] @ self.j_conn[job, assigned]
        else:
            increments = np.zeros(free.size)

        # value order: ascending resulting partial cost, ties by device index
        for k in np.lexsort((free, increments)):
            device = int(free[k])
            child_cost = committed + float(increments[k])
            if child_cost >= self.incumbent_cost - COST_TOLERANCE:
                break
            self.f[job] = device
            self.placed[job] = True
            self.used[device] = True
            if child_cost + self.lower_bound() < self.incumbent_cost - COST_TOLERANCE:
                self.search(depth + 1, child_cost)
            self.f[job] = -1
            self.placed[job] = False
            self.used[device] = False
            if self.stopped or self.incumbent_cost == 0:
                return


def solve_noc_bnb(instance: Instance, budget: Optional[SolverBudget] = None) -> NocReport:
    """Anytime branch-and-bound for NOC with a Gilmore-Lawler style bound.

    Seeds the incumbent with the identity assignment, then only accepts strict
    improvements, so the incumbent cost never increases during the run.
    """
    clock = (budget or SolverBudget.unlimited()).start()
    search = _BranchAndBound(instance, clock)
    if search.incumbent_cost > 0:
        search.search(0, 0.0)
    return _report("noc-bnb", instance, search.incumbent_f, not search.stopped, clock)
