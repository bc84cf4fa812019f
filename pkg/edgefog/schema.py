from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from edgefog.exceptions import (
    DimensionMismatchError,
    DuplicateIdError,
    InstanceError,
    InvalidEdgeError,
)


class Layer(str, Enum):
    """Device layer options"""

    EDGE = "edge"
    FOG = "fog"


class Device(BaseModel):
    """A compute resource in the Edge or Fog layer"""

    model_config = ConfigDict(frozen=True)

    id: int
    layer: Layer
    power: float = Field(..., gt=0, description="Processing units offered")


class Link(BaseModel):
    """Undirected communication link between two devices"""

    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    cost: float = Field(..., ge=0, description="Communication cost of the link")


class Job(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: int
    size: float = Field(..., gt=0, description="Processing units required")


class Dependency(BaseModel):
    """Two-way dependence between jobs"""

    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    weight: float = Field(1.0, gt=0)


def _check_edges(field: str, ids: Sequence[int], edges: Sequence[Tuple[int, int]]):
    known = set(ids)
    seen = set()
    for index, (a, b) in enumerate(edges):
        where = f"{field}[{index}]"
        if a == b:
            raise InvalidEdgeError(f"Self-edge on {a} in {where}", where, a, b)
        if a not in known or b not in known:
            raise InvalidEdgeError(f"Unknown endpoint in {where}", where, a, b)
        pair = (min(a, b), max(a, b))
        if pair in seen:
            raise InvalidEdgeError(f"Repeated pair ({a}, {b}) in {where}", where, a, b)
        seen.add(pair)


def _check_ids(field: str, ids: Sequence[int]):
    seen = set()
    for index, item_id in enumerate(ids):
        if item_id in seen:
            raise DuplicateIdError(f"{field}[{index}].id", item_id)
        seen.add(item_id)


class ResourceGraph(BaseModel):
    """Edge-Fog devices and their weighted connectivity links"""

    model_config = ConfigDict(frozen=True)

    devices: Tuple[Device, ...] = ()
    links: Tuple[Link, ...] = ()

    @model_validator(mode="after")
    def _validate_graph(self) -> "ResourceGraph":
        ids = [d.id for d in self.devices]
        _check_ids("devices", ids)
        _check_edges("links", ids, [(l.a, l.b) for l in self.links])
        return self

    def incident_cost(self) -> Dict[int, float]:
        """Summed cost of the links touching each device"""
        totals = {d.id: 0.0 for d in self.devices}
        for link in self.links:
            totals[link.a] += link.cost
            totals[link.b] += link.cost
        return totals


class JobGraph(BaseModel):
    """Jobs and their symmetric dependence links"""

    model_config = ConfigDict(frozen=True)

    jobs: Tuple[Job, ...] = ()
    deps: Tuple[Dependency, ...] = ()

    @model_validator(mode="after")
    def _validate_graph(self) -> "JobGraph":
        ids = [j.id for j in self.jobs]
        _check_ids("jobs", ids)
        _check_edges("deps", ids, [(d.a, d.b) for d in self.deps])
        return self


def _frozen(array: Any, name: str, ndim: int) -> np.ndarray:
    out = np.array(array, dtype=float)
    if out.ndim != ndim:
        raise DimensionMismatchError(f"{name} must have {ndim} dimension(s)", shape=out.shape)
    out.flags.writeable = False
    return out


class Instance(BaseModel):
    """A normalized pairing of devices and jobs with dense cost matrices.

    Index ``k`` on the device side is a virtual device; ``device_ids[k]`` is the
    physical device it was derived from. Index ``i`` on the job side is the
    ``i``-th job of the job graph (``job_ids[i]``).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    device_power: np.ndarray
    job_size: np.ndarray
    d_conn: np.ndarray
    j_conn: np.ndarray
    device_ids: Tuple[int, ...]
    job_ids: Tuple[int, ...]
    device_layers: Tuple[Layer, ...]

    @model_validator(mode="after")
    def _validate_instance(self) -> "Instance":
        n = self.n
        if n < 1:
            raise InstanceError("Instance must contain at least one device and one job")
        for name in ("device_power", "job_size"):
            if getattr(self, name).shape != (n,):
                raise DimensionMismatchError(f"{name} must have length {n}")
        for name in ("d_conn", "j_conn"):
            matrix = getattr(self, name)
            if matrix.shape != (n, n):
                raise DimensionMismatchError(f"{name} must be {n}x{n}")
            if not np.all(np.isfinite(matrix)) or np.any(matrix < 0):
                raise InstanceError(f"{name} must be finite and non-negative")
            if not np.array_equal(matrix, matrix.T):
                raise InstanceError(f"{name} must be symmetric")
            if np.any(np.diag(matrix) != 0):
                raise InstanceError(f"{name} must have a zero diagonal")
        if np.any(self.device_power <= 0) or np.any(self.job_size <= 0):
            raise InstanceError("Powers and sizes must be positive")
        for name in ("device_ids", "job_ids", "device_layers"):
            if len(getattr(self, name)) != n:
                raise DimensionMismatchError(f"{name} must have length {n}")
        return self

    @classmethod
    def from_matrices(
        cls,
        device_power: Any,
        job_size: Any,
        d_conn: Any,
        j_conn: Any,
        device_ids: Optional[Sequence[int]] = None,
        job_ids: Optional[Sequence[int]] = None,
        device_layers: Optional[Sequence[Layer]] = None,
    ) -> "Instance":
        power = _frozen(device_power, "device_power", 1)
        n = len(power)
        return cls(
            n=n,
            device_power=power,
            job_size=_frozen(job_size, "job_size", 1),
            d_conn=_frozen(d_conn, "d_conn", 2),
            j_conn=_frozen(j_conn, "j_conn", 2),
            device_ids=tuple(device_ids) if device_ids is not None else tuple(range(n)),
            job_ids=tuple(job_ids) if job_ids is not None else tuple(range(n)),
            device_layers=(
                tuple(device_layers)
                if device_layers is not None
                else tuple(Layer.EDGE for _ in range(n))
            ),
        )

    def dependent_pairs(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Unordered dependent job pairs (i < j) and their weights"""
        rows, cols = np.triu_indices(self.n, 1)
        weights = self.j_conn[rows, cols]
        mask = weights > 0
        return rows[mask], cols[mask], weights[mask]


class Assignment(BaseModel):
    """A bijection job -> virtual device with cached costs"""

    model_config = ConfigDict(frozen=True)

    f: Tuple[int, ...]
    processing_cost: float
    network_cost: float

    @classmethod
    def evaluate(cls, f: Sequence[int], instance: Instance) -> "Assignment":
        from edgefog.model.costs import network_cost, processing_cost

        mapping = tuple(int(x) for x in f)
        return cls(
            f=mapping,
            processing_cost=processing_cost(mapping, instance),
            network_cost=network_cost(mapping, instance),
        )


# ============== Documents ==============


class DeviceDoc(BaseModel):
    id: int
    layer: Layer
    power: float = Field(..., gt=0)


class LinkDoc(BaseModel):
    a: int
    b: int
    cost: float = Field(..., ge=0)


class JobDoc(BaseModel):
    id: int
    size: float = Field(..., gt=0)


class DependencyDoc(BaseModel):
    a: int
    b: int
    weight: float = Field(1.0, gt=0)


class InstanceDocument(BaseModel):
    """JSON instance document"""

    devices: List[DeviceDoc]
    links: List[LinkDoc] = Field(default_factory=list)
    jobs: List[JobDoc]
    deps: List[DependencyDoc] = Field(default_factory=list)
    meta: Optional[Dict[str, Any]] = None


class MappingEntry(BaseModel):
    job: int
    device: int


class AssignmentDocument(BaseModel):
    """JSON assignment document, optionally extended with solver report fields"""

    model_config = ConfigDict(extra="allow")

    mapping: List[MappingEntry]
    processing_cost: float
    network_cost: float
