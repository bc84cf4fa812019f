from enum import Enum
from typing import Optional

from edgefog.schema import Assignment, Instance
from edgefog.solver.base import SolverBudget, SolverReport
from edgefog.solver.lap import build_processing_matrix, solve_lap
from edgefog.solver.lpcf import solve_lpcf
from edgefog.solver.noc import solve_noc_bnb, solve_noc_exhaustive


class SolverType(str, Enum):
    LAP = "lap"
    LPCF = "lpcf"
    NOC_PERM = "noc-perm"
    NOC_BNB = "noc-bnb"


def _solve_lap_report(instance: Instance, budget: Optional[SolverBudget] = None) -> SolverReport:
    clock = (budget or SolverBudget.unlimited()).start()
    lap = solve_lap(build_processing_matrix(instance))
    clock.tick()
    return SolverReport(
        solver=SolverType.LAP.value,
        best=Assignment.evaluate(lap.f, instance),
        optimal=True,
        nodes_explored=clock.nodes,
        wall_time=clock.elapsed,
    )


class SolverFactory:
    """Dispatches a solve to the solver named by a SolverType"""

    @staticmethod
    def run_solver(
        kind: SolverType, instance: Instance, budget: Optional[SolverBudget] = None
    ) -> SolverReport:
        solvers = {
            SolverType.LAP: _solve_lap_report,
            SolverType.LPCF: solve_lpcf,
            SolverType.NOC_PERM: solve_noc_exhaustive,
            SolverType.NOC_BNB: solve_noc_bnb,
        }

        solver = solvers.get(SolverType(kind))
        if not solver:
            raise ValueError(f"Unknown solver type: {kind}")

        return solver(instance, budget)


run_solver = SolverFactory.run_solver
