"""Linear assignment on the processing-cost matrix (LPCF step 1)."""

import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.optimize import linear_sum_assignment

from edgefog.exceptions import DimensionMismatchError
from edgefog.schema import Instance


class CostMatrix(BaseModel):
    """Square matrix of processing costs, entry [i][j] = J_size(i) / D_proc(j)"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: np.ndarray

    @model_validator(mode="after")
    def _validate_entries(self) -> "CostMatrix":
        shape = self.entries.shape
        if len(shape) != 2 or shape[0] != shape[1]:
            raise DimensionMismatchError(
                "Cost matrix must be square; normalize the instance first", shape=shape
            )
        if not np.all(np.isfinite(self.entries)):
            raise DimensionMismatchError("Cost matrix entries must be finite")
        return self

    @classmethod
    def of(cls, entries) -> "CostMatrix":
        matrix = np.array(entries, dtype=float)
        matrix.flags.writeable = False
        return cls(entries=matrix)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


class LapSolution(BaseModel):
    model_config = ConfigDict(frozen=True)

    f: Tuple[int, ...]
    value: float


def build_processing_matrix(instance: Instance) -> CostMatrix:
    return CostMatrix.of(instance.job_size[:, None] / instance.device_power[None, :])


def solve_lap(m: CostMatrix) -> LapSolution:
    """Optimal job -> device permutation for ``m``.

    Uses the shortest augmenting path (Jonker-Volgenant) variant of the
    Hungarian method, O(n^3) worst case. Among several optima the returned one
    is fixed for a fixed input but otherwise unspecified.
    """
    rows, cols = linear_sum_assignment(m.entries)
    f = np.empty(m.n, dtype=np.intp)
    f[rows] = cols
    return LapSolution(
        f=tuple(int(x) for x in f),
        value=math.fsum(m.entries[np.arange(m.n), f]),
    )
