"""Shared fixtures and independent brute-force oracles."""

import itertools
import json
import math
from collections import deque
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
import pytest

from edgefog.schema import Instance


def floyd_warshall(raw: np.ndarray) -> np.ndarray:
    """Plain triple-loop all-pairs shortest paths (inf marks a missing link)."""
    n = raw.shape[0]
    dist = raw.copy()
    for i in range(n):
        dist[i, i] = 0.0
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i, k] + dist[k, j] < dist[i, j]:
                    dist[i, j] = dist[i, k] + dist[k, j]
    return dist


def random_instance(
    rng: np.random.Generator,
    n: int,
    powers: Sequence[int] = (2, 3, 4),
    sizes: Sequence[int] = (2, 3, 4),
    dep_density: float = 0.5,
    cost_range: Tuple[int, int] = (1, 9),
) -> Instance:
    """Random instance with integer link costs and a metric d_conn."""
    raw = rng.integers(cost_range[0], cost_range[1], size=(n, n), endpoint=True).astype(float)
    raw = np.triu(raw, 1)
    raw = raw + raw.T
    deps = np.triu(rng.random((n, n)) < dep_density, 1)
    j_conn = (deps | deps.T).astype(float)
    return Instance.from_matrices(
        device_power=rng.choice(powers, size=n).astype(float),
        job_size=rng.choice(sizes, size=n).astype(float),
        d_conn=floyd_warshall(raw),
        j_conn=j_conn,
    )


def scaled_instance(instance: Instance, d_scale: float = 0.1, j_scale: float = 0.3) -> Instance:
    """Same instance with non-integer link costs and dependence weights."""
    return Instance.from_matrices(
        device_power=instance.device_power,
        job_size=instance.job_size,
        d_conn=instance.d_conn * d_scale,
        j_conn=instance.j_conn * j_scale,
    )


def edge_list_network_cost(instance: Instance, f: Sequence[int]) -> float:
    """Network cost from an explicit dependency edge list."""
    edges = [
        (i, j, instance.j_conn[i][j])
        for i in range(instance.n)
        for j in range(i + 1, instance.n)
        if instance.j_conn[i][j] > 0
    ]
    return math.fsum(w * instance.d_conn[f[i]][f[j]] for i, j, w in edges)


def term_processing_cost(instance: Instance, f: Sequence[int]) -> float:
    return math.fsum(
        float(instance.job_size[i]) / float(instance.device_power[f[i]])
        for i in range(instance.n)
    )


PERMUTATION_TABLES: Dict[int, np.ndarray] = {}


def permutation_table(n: int) -> np.ndarray:
    """Every permutation of range(n) as rows, in lexicographic order."""
    if n not in PERMUTATION_TABLES:
        PERMUTATION_TABLES[n] = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    return PERMUTATION_TABLES[n]


def all_network_costs(instance: Instance) -> np.ndarray:
    """Network cost of every permutation, summed over ordered pairs and halved."""
    perms = permutation_table(instance.n)
    d = instance.d_conn[perms[:, :, None], perms[:, None, :]]
    return (d * instance.j_conn[None]).sum(axis=(1, 2)) / 2


def all_processing_costs(instance: Instance) -> np.ndarray:
    perms = permutation_table(instance.n)
    return (instance.job_size[None, :] / instance.device_power[perms]).sum(axis=1)


def brute_noc_minimum(instance: Instance) -> float:
    return float(all_network_costs(instance).min())


def brute_processing_minimum(instance: Instance) -> float:
    return float(all_processing_costs(instance).min())


def orbit_closure(instance: Instance, base: Sequence[int]) -> Set[Tuple[int, ...]]:
    """Graph search over single moves: swap the jobs of two equal-power devices,
    or swap the devices of two equal-size jobs."""
    n = instance.n
    power, size = instance.device_power, instance.job_size
    device_swaps = [(a, b) for a in range(n) for b in range(a + 1, n) if power[a] == power[b]]
    job_swaps = [(i, j) for i in range(n) for j in range(i + 1, n) if size[i] == size[j]]

    start = tuple(int(x) for x in base)
    seen = {start}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        neighbours: List[Tuple[int, ...]] = []
        for a, b in device_swaps:
            neighbours.append(tuple(b if x == a else a if x == b else x for x in f))
        for i, j in job_swaps:
            g = list(f)
            g[i], g[j] = g[j], g[i]
            neighbours.append(tuple(g))
        for g in neighbours:
            if g not in seen:
                seen.add(g)
                queue.append(g)
    return seen


GOLDEN_DIR = Path(__file__).parent / "data"
GOLDEN_VALUES = GOLDEN_DIR / "golden_values.json"


def golden_text(name: str, produce: Callable[[], str]) -> str:
    """Stored golden file ``name``; recorded from ``produce`` when it is missing."""
    path = GOLDEN_DIR / name
    if not path.exists():
        GOLDEN_DIR.mkdir(exist_ok=True)
        path.write_text(produce(), encoding="utf-8")
    return path.read_text(encoding="utf-8")


def golden_value(key: str, produce: Callable[[], Optional[float]]) -> Optional[float]:
    """Stored golden number ``key``; recorded from ``produce`` unless it returns None."""
    values = json.loads(GOLDEN_VALUES.read_text()) if GOLDEN_VALUES.exists() else {}
    if key not in values:
        value = produce()
        if value is None:
            return None
        values[key] = value
        GOLDEN_DIR.mkdir(exist_ok=True)
        GOLDEN_VALUES.write_text(json.dumps(values, indent=2, sort_keys=True) + "\n")
    return values[key]


def sorted_pairing_processing_cost(instance: Instance) -> float:
    """Least processing cost by rearrangement: largest job on the strongest device."""
    sizes = np.sort(instance.job_size)[::-1]
    powers = np.sort(instance.device_power)[::-1]
    return math.fsum(sizes / powers)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def triangle_instance() -> Instance:
    """Three devices on a path 0-1-2 (costs 2, 3) and a chain of dependent jobs."""
    d_conn = [[0, 2, 5], [2, 0, 3], [5, 3, 0]]
    j_conn = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    return Instance.from_matrices([2, 2, 8], [4, 4, 8], d_conn, j_conn)
