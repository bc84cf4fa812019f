from typing import List

import numpy as np

from edgefog.exceptions import EmptyGraphError
from edgefog.logger import logger
from edgefog.model.connectivity import effective_connectivity
from edgefog.schema import Instance, JobGraph, ResourceGraph


def _split_parents(rg: ResourceGraph, n_jobs: int) -> List[int]:
    """Positions of the physical devices backing each virtual device.

    Original devices come first in graph order; extra virtual copies are handed
    out round-robin over the devices sorted by descending power, then id.
    """
    positions = list(range(len(rg.devices)))
    order = sorted(positions, key=lambda p: (-rg.devices[p].power, rg.devices[p].id))
    extra = n_jobs - len(positions)
    for k in range(extra):
        positions.append(order[k % len(order)])
    return positions


def _kept_positions(rg: ResourceGraph, n_jobs: int) -> List[int]:
    """Positions of the devices that survive when devices outnumber jobs.

    Drop order: lowest power first, then higher summed link cost, then higher id.
    """
    incident = rg.incident_cost()
    positions = list(range(len(rg.devices)))
    drop_order = sorted(
        positions,
        key=lambda p: (
            rg.devices[p].power,
            -incident[rg.devices[p].id],
            -rg.devices[p].id,
        ),
    )
    dropped = set(drop_order[: len(positions) - n_jobs])
    return [p for p in positions if p not in dropped]


def normalize_instance(rg: ResourceGraph, jg: JobGraph) -> Instance:
    """Pair a resource graph with a job graph at equal cardinality.

    Virtual copies keep the full power of their parent and copy its row of the
    effective connectivity matrix, so siblings are at distance zero.

    Raises:
        EmptyGraphError: If there are no devices or no jobs.
        UnreachablePairError: If the resource graph is disconnected.
    """
    if not rg.devices or not jg.jobs:
        raise EmptyGraphError(
            "Normalization needs at least one device and one job",
            devices=len(rg.devices),
            jobs=len(jg.jobs),
        )

    closure = effective_connectivity(rg)
    n = len(jg.jobs)
    if n >= len(rg.devices):
        positions = _split_parents(rg, n)
        if n > len(rg.devices):
            logger.debug(f"Split {len(rg.devices)} devices into {n} virtual devices")
    else:
        positions = _kept_positions(rg, n)
        logger.debug(f"Dropped {len(rg.devices) - n} superfluous devices")

    index = np.asarray(positions, dtype=np.intp)
    d_conn = closure[np.ix_(index, index)]

    job_index = {job.id: i for i, job in enumerate(jg.jobs)}
    j_conn = np.zeros((n, n))
    for dep in jg.deps:
        i, j = job_index[dep.a], job_index[dep.b]
        j_conn[i, j] = j_conn[j, i] = dep.weight

    return Instance.from_matrices(
        device_power=[rg.devices[p].power for p in positions],
        job_size=[job.size for job in jg.jobs],
        d_conn=d_conn,
        j_conn=j_conn,
        device_ids=[rg.devices[p].id for p in positions],
        job_ids=[job.id for job in jg.jobs],
        device_layers=[rg.devices[p].layer for p in positions],
    )
