import time
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from edgefog.exceptions import ParamInvalidError
from edgefog.schema import Assignment


# network costs closer than this are ties
COST_TOLERANCE = 1e-9


class SolverBudget(BaseModel):
    """Time and node limits for a single solve. Both None means run to completion."""

    model_config = ConfigDict(frozen=True)

    time_limit: Optional[float] = Field(None, description="Wall time limit in seconds")
    node_limit: Optional[int] = Field(None, description="Maximum nodes to explore")

    @model_validator(mode="after")
    def _validate_limits(self) -> "SolverBudget":
        if self.time_limit is not None and self.time_limit < 0:
            raise ParamInvalidError("time_limit must be non-negative")
        if self.node_limit is not None and self.node_limit < 1:
            raise ParamInvalidError("node_limit must be at least 1")
        return self

    @classmethod
    def from_ms(
        cls, time_limit_ms: Optional[float] = None, node_limit: Optional[int] = None
    ) -> "SolverBudget":
        seconds = None if time_limit_ms is None else time_limit_ms / 1000.0
        return cls(time_limit=seconds, node_limit=node_limit)

    @classmethod
    def unlimited(cls) -> "SolverBudget":
        return cls()

    def start(self) -> "BudgetClock":
        return BudgetClock(self)


class BudgetClock:
    """Tracks elapsed time and explored nodes against a SolverBudget."""

    def __init__(self, budget: SolverBudget):
        self.budget = budget
        self.nodes = 0
        self._started = time.perf_counter()
        self._deadline = (
            None if budget.time_limit is None else self._started + budget.time_limit
        )

    def tick(self, count: int = 1) -> bool:
        """Record explored nodes; returns True once the budget is exhausted."""
        self.nodes += count
        return self.exhausted()

    def exhausted(self) -> bool:
        if self.budget.node_limit is not None and self.nodes >= self.budget.node_limit:
            return True
        return self._deadline is not None and time.perf_counter() >= self._deadline

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self._started


class SolverReport(BaseModel):
    """Outcome of one solve"""

    model_config = ConfigDict(frozen=True)

    solver: str
    best: Assignment
    optimal: bool = Field(
        ..., description="proven_optimal for NOC, space_exhausted for LPCF, always true for LAP"
    )
    nodes_explored: int = 0
    wall_time: float = Field(..., description="Solver wall time in seconds")

    def document_fields(self) -> dict:
        """Report fields emitted next to the assignment document"""
        return {"solver": self.solver, "optimal": self.optimal}
