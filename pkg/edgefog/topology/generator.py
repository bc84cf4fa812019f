"""Seeded Edge-Fog topology and job graph generator.

Draws come from one numpy ``default_rng`` (PCG64) stream per parameter set,
consumed in a fixed order: edge powers, fog powers, link inclusion uniforms
over the upper triangle, link costs, job sizes, dependence uniforms.
"""

import itertools
import math
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
from pydantic import ConfigDict, Field, ValidationError, model_validator

from edgefog.config import GeneratorSettings, config
from edgefog.exceptions import ParamInvalidError
from edgefog.logger import logger
from edgefog.model.connectivity import resource_network
from edgefog.model.io import instance_document
from edgefog.schema import (
    Dependency,
    Device,
    InstanceDocument,
    Job,
    JobGraph,
    Layer,
    Link,
    ResourceGraph,
)


_SEED_BOUND = 2**64
_FRACTION_TOLERANCE = 1e-9

# pair kinds, indexing the per-kind density and cost arrays
_EDGE_EDGE, _FOG_FOG, _EDGE_FOG = 0, 1, 2


def derive_seed(*keys: int) -> int:
    """Stream-splitting rule: a 64-bit seed derived from a tuple of integer keys."""
    return int(np.random.SeedSequence(list(keys)).generate_state(1, np.uint64)[0])


class GenParams(GeneratorSettings):
    """Generator parameters: the simulator defaults plus size and seed."""

    model_config = ConfigDict(frozen=True)

    n_total: int = Field(..., description="Number of physical devices")
    n_jobs: Optional[int] = Field(None, description="Number of jobs (defaults to n_total)")
    seed: int = Field(0, description="64-bit generator seed")

    @model_validator(mode="after")
    def _validate_params(self) -> "GenParams":
        if self.n_total < 1:
            raise ParamInvalidError("n_total must be at least 1", n_total=self.n_total)
        if self.n_jobs is not None and self.n_jobs < 1:
            raise ParamInvalidError("n_jobs must be at least 1", n_jobs=self.n_jobs)
        if not 0 <= self.seed < _SEED_BOUND:
            raise ParamInvalidError("seed must be an unsigned 64-bit integer", seed=self.seed)
        for name in ("edge_fraction", "fog_fraction"):
            if not 0 <= getattr(self, name) <= 1:
                raise ParamInvalidError(f"{name} must lie in [0, 1]", field=name)
        if abs(self.edge_fraction + self.fog_fraction - 1) > _FRACTION_TOLERANCE:
            raise ParamInvalidError(
                "edge_fraction and fog_fraction must sum to 1",
                edge_fraction=self.edge_fraction,
                fog_fraction=self.fog_fraction,
            )
        for name in ("edge_density", "fog_density", "inter_density", "dep_density"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise ParamInvalidError(f"{name} must lie in [0, 1]", field=name, value=value)
        ranges = {
            "edge_power_range": self.edge_power_range,
            "fog_power_range": self.fog_power_range,
            "job_size_range": self.job_size_range,
            "link_cost_ranges.edge_edge": self.link_cost_ranges.edge_edge,
            "link_cost_ranges.fog_fog": self.link_cost_ranges.fog_fog,
            "link_cost_ranges.edge_fog": self.link_cost_ranges.edge_fog,
        }
        for name, (low, high) in ranges.items():
            if low <= 0 or low > high:
                raise ParamInvalidError(
                    f"{name} must be a non-empty range with positive bounds",
                    field=name,
                    low=low,
                    high=high,
                )
        return self

    @property
    def job_count(self) -> int:
        return self.n_total if self.n_jobs is None else self.n_jobs

    @property
    def edge_count(self) -> int:
        # round half away from zero
        return math.floor(self.n_total * self.edge_fraction + 0.5)

    @classmethod
    def build(cls, **values: Any) -> "GenParams":
        """Validate raw values, reporting type errors as ParamInvalidError."""
        try:
            return cls.model_validate(values)
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(part) for part in first["loc"])
            raise ParamInvalidError(f"{field}: {first['msg']}", field=field)

    @classmethod
    def from_settings(
        cls, n_total: int, settings: Optional[GeneratorSettings] = None, **overrides: Any
    ) -> "GenParams":
        """Parameters from the configured generator defaults with ``overrides`` applied."""
        base = (settings or config.generator).model_dump()
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls.build(n_total=n_total, **base)

    def with_values(self, **values: Any) -> "GenParams":
        """Validated copy with ``values`` replaced"""
        return GenParams.build(**{**self.model_dump(), **values})


def _pair_kinds(is_fog: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    a, b = is_fog[rows], is_fog[cols]
    return np.where(a & b, _FOG_FOG, np.where(~a & ~b, _EDGE_EDGE, _EDGE_FOG))


def _repair_links(
    network: nx.Graph, layers: List[Layer], params: GenParams
) -> List[Link]:
    """Links joining the components of ``network`` at least total cost.

    Every candidate link costs the top of its layer-pair range. The cheapest
    candidate between each pair of components is kept, ties by device ids, and
    a minimum spanning tree over the components picks the links to add.
    """
    components = sorted(
        (sorted(c) for c in nx.connected_components(network)), key=lambda c: c[0]
    )
    if len(components) <= 1:
        return []

    ranges = params.link_cost_ranges
    top = {
        (Layer.EDGE, Layer.EDGE): ranges.edge_edge[1],
        (Layer.FOG, Layer.FOG): ranges.fog_fog[1],
        (Layer.EDGE, Layer.FOG): ranges.edge_fog[1],
        (Layer.FOG, Layer.EDGE): ranges.edge_fog[1],
    }
    bridges = nx.Graph()
    bridges.add_nodes_from(range(len(components)))
    for p, q in itertools.combinations(range(len(components)), 2):
        cost, a, b = min(
            (top[layers[a], layers[b]], a, b)
            for a in components[p]
            for b in components[q]
        )
        bridges.add_edge(p, q, cost=cost, link=(min(a, b), max(a, b)))

    tree = nx.minimum_spanning_edges(bridges, weight="cost", algorithm="kruskal", data=True)
    chosen = sorted(data["link"] for _, _, data in tree)
    return [
        Link(a=a, b=b, cost=float(top[layers[a], layers[b]])) for a, b in chosen
    ]


def _generate(params: GenParams) -> Tuple[ResourceGraph, JobGraph, int]:
    rng = np.random.default_rng(params.seed)
    n = params.n_total
    n_edge = params.edge_count
    n_fog = n - n_edge

    edge_power = rng.integers(*params.edge_power_range, size=n_edge, endpoint=True)
    fog_power = rng.integers(*params.fog_power_range, size=n_fog, endpoint=True)
    layers = [Layer.EDGE] * n_edge + [Layer.FOG] * n_fog
    powers = np.concatenate([edge_power, fog_power])

    rows, cols = np.triu_indices(n, 1)
    kinds = _pair_kinds(np.arange(n) >= n_edge, rows, cols)
    density = np.array([params.edge_density, params.fog_density, params.inter_density])
    included = rng.random(rows.size) < density[kinds]

    ranges = params.link_cost_ranges
    low = np.array([ranges.edge_edge[0], ranges.fog_fog[0], ranges.edge_fog[0]])
    high = np.array([ranges.edge_edge[1], ranges.fog_fog[1], ranges.edge_fog[1]])
    picked = kinds[included]
    costs = rng.integers(low[picked], high[picked], endpoint=True) if picked.size else []

    devices = [
        Device(id=i, layer=layers[i], power=float(powers[i])) for i in range(n)
    ]
    links = [
        Link(a=int(a), b=int(b), cost=float(c))
        for a, b, c in zip(rows[included], cols[included], costs)
    ]

    m = params.job_count
    sizes = rng.integers(*params.job_size_range, size=m, endpoint=True)
    job_rows, job_cols = np.triu_indices(m, 1)
    dependent = rng.random(job_rows.size) < params.dep_density
    jobs = [Job(id=i, size=float(sizes[i])) for i in range(m)]
    deps = [
        Dependency(a=int(a), b=int(b), weight=1.0)
        for a, b in zip(job_rows[dependent], job_cols[dependent])
    ]

    network = resource_network(ResourceGraph(devices=devices, links=links))
    repairs = _repair_links(network, layers, params)
    if repairs:
        logger.info(
            f"Resource graph (seed={params.seed}) was disconnected; "
            f"added {len(repairs)} repair links"
        )
        links = sorted(links + repairs, key=lambda link: (link.a, link.b))

    return ResourceGraph(devices=devices, links=links), JobGraph(jobs=jobs, deps=deps), len(repairs)


def generate(params: GenParams) -> Tuple[ResourceGraph, JobGraph]:
    """Random connected resource graph and job graph for ``params``"""
    rg, jg, _ = _generate(params)
    return rg, jg


def generate_document(params: GenParams) -> InstanceDocument:
    """Generated instance as a document, parameters echoed under ``meta``."""
    rg, jg, repaired = _generate(params)
    meta: Dict[str, Any] = {
        "generator": params.model_dump(mode="json"),
        "repaired_links": repaired,
    }
    return instance_document(rg, jg, meta)
