"""Experiment specifications and result rows of the benchmark harness."""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from edgefog.config import GeneratorSettings, config
from edgefog.exceptions import ParamInvalidError
from edgefog.solver.solver_factory import SolverType
from edgefog.topology.sweep import SweepAxis


BENCH_FIELDS: Tuple[str, ...] = (
    "n",
    "solver",
    "seed",
    "wall_time_s",
    "processing_cost",
    "network_cost",
    "optimal",
    "reduced_space_size",
    "nodes_explored",
    "link_low",
    "link_high",
    "mapping",
)

SWEEP_FIELDS: Tuple[str, ...] = (
    "axis",
    "value",
    "n",
    "seeds",
    "mean_network_cost",
    "std_network_cost",
    "stderr_network_cost",
    "mean_processing_cost",
    "exhausted_runs",
)


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class _GridSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    seeds: int = Field(default_factory=lambda: config.bench.seeds)
    base_seed: int = Field(default_factory=lambda: config.bench.base_seed)
    time_limit_ms: Optional[float] = Field(default_factory=lambda: config.bench.time_limit_ms)
    node_limit: Optional[int] = None
    workers: int = Field(default_factory=lambda: config.bench.workers)
    generator: GeneratorSettings = Field(default_factory=lambda: config.generator)
    output: Path
    format: OutputFormat = OutputFormat.CSV

    def _check_grid(self):
        if self.seeds < 1:
            raise ParamInvalidError("seeds must be at least 1", seeds=self.seeds)
        if self.workers < 1:
            raise ParamInvalidError("workers must be at least 1", workers=self.workers)
        if self.time_limit_ms is not None and self.time_limit_ms < 0:
            raise ParamInvalidError("time_limit_ms must be non-negative")


class ExperimentSpec(_GridSpec):
    """Solver x size x seed grid"""

    name: str = "bench"
    sizes: List[int]
    solvers: List[SolverType]
    match_lpcf_time: bool = Field(
        False, description="Give every noc-bnb solve LPCF's wall time on the same instance"
    )

    @model_validator(mode="after")
    def _validate_spec(self) -> "ExperimentSpec":
        self._check_grid()
        if not self.sizes or not self.solvers:
            raise ParamInvalidError("An experiment needs at least one size and one solver")
        if any(n < 1 for n in self.sizes):
            raise ParamInvalidError("Problem sizes must be positive", sizes=self.sizes)
        if self.match_lpcf_time and not {
            SolverType.LPCF,
            SolverType.NOC_BNB,
        } <= set(self.solvers):
            raise ParamInvalidError("--match-lpcf-time needs both lpcf and noc-bnb solvers")
        return self


class SweepSpec(_GridSpec):
    """LPCF runs over one swept generator parameter, at one or more sizes"""

    name: str = "sweep"
    axis: SweepAxis
    values: List[float]
    sizes: List[int]

    @model_validator(mode="after")
    def _validate_spec(self) -> "SweepSpec":
        self._check_grid()
        if not self.values or not self.sizes:
            raise ParamInvalidError("A sweep needs at least one value and one size")
        if any(n < 1 for n in self.sizes):
            raise ParamInvalidError("Problem sizes must be positive", sizes=self.sizes)
        return self


class _Row(BaseModel):
    model_config = ConfigDict(frozen=True)

    @field_validator("*", mode="before")
    @classmethod
    def _empty_is_none(cls, value: Any) -> Any:
        return None if value == "" else value

    def record(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


class ResultRow(_Row):
    """One solve of one grid point"""

    n: int
    solver: SolverType
    seed: int
    wall_time_s: float
    processing_cost: float
    network_cost: float
    optimal: bool = Field(..., description="proven_optimal or space_exhausted")
    reduced_space_size: Optional[int] = Field(None, description="LPCF rows only")
    nodes_explored: int
    link_low: float
    link_high: float
    mapping: str = Field(..., description="Virtual device index per job, space separated")

    def key(self) -> Tuple[int, str, int]:
        return self.n, self.solver.value, self.seed

    def assignment(self) -> List[int]:
        return [int(k) for k in self.mapping.split()]


class SweepRow(_Row):
    """Aggregate of all seeds at one sweep point"""

    axis: SweepAxis
    value: float
    n: int
    seeds: int
    mean_network_cost: float
    std_network_cost: float
    stderr_network_cost: float
    mean_processing_cost: float
    exhausted_runs: int

    def key(self) -> Tuple[str, float, int]:
        return self.axis.value, self.value, self.n
