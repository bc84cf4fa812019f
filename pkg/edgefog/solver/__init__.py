from edgefog.solver.base import BudgetClock, SolverBudget, SolverReport
from edgefog.solver.lap import CostMatrix, LapSolution, build_processing_matrix, solve_lap
from edgefog.solver.lpcf import (
    EquivalenceClasses,
    LpcfReport,
    enumerate_orbit,
    equivalence_classes,
    reduced_space_size,
    same_cost_network_minimum,
    solve_lpcf,
)
from edgefog.solver.noc import NocReport, solve_noc_bnb, solve_noc_exhaustive
from edgefog.solver.solver_factory import SolverFactory, SolverType, run_solver


__all__ = [
    "BudgetClock",
    "CostMatrix",
    "EquivalenceClasses",
    "LapSolution",
    "LpcfReport",
    "NocReport",
    "SolverBudget",
    "SolverFactory",
    "SolverReport",
    "SolverType",
    "build_processing_matrix",
    "enumerate_orbit",
    "equivalence_classes",
    "reduced_space_size",
    "run_solver",
    "same_cost_network_minimum",
    "solve_lap",
    "solve_lpcf",
    "solve_noc_bnb",
    "solve_noc_exhaustive",
]
