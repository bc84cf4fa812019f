"""The two assignment objectives.

Both are evaluated with ``math.fsum`` so that a cost depends only on the multiset
of its terms: relabeling jobs and devices, or permuting within equal-power
classes, yields bit-identical values.
"""

import math
from typing import Sequence, Tuple

import numpy as np

from edgefog.exceptions import DimensionMismatchError, InvalidAssignmentError
from edgefog.schema import Instance


def as_permutation(assignment: Sequence[int], instance: Instance) -> np.ndarray:
    """Validate that ``assignment`` is a bijection on ``[0, n)``"""
    f = np.asarray(assignment, dtype=np.intp)
    if f.shape != (instance.n,):
        raise DimensionMismatchError(
            f"Assignment of length {f.size} does not match instance of size {instance.n}",
            expected=instance.n,
            actual=int(f.size),
        )
    if not np.array_equal(np.sort(f), np.arange(instance.n)):
        raise InvalidAssignmentError("Assignment is not a bijection", f=f.tolist())
    return f


def network_cost(assignment: Sequence[int], instance: Instance) -> float:
    """Sum of J_conn(i, j) * D_conn(f(i), f(j)) over unordered dependent pairs"""
    f = as_permutation(assignment, instance)
    rows, cols, weights = instance.dependent_pairs()
    return math.fsum(weights * instance.d_conn[f[rows], f[cols]])


def processing_cost(assignment: Sequence[int], instance: Instance) -> float:
    """Sum of J_size(i) / D_proc(f(i)) over all jobs"""
    f = as_permutation(assignment, instance)
    return math.fsum(instance.job_size / instance.device_power[f])


def link_cost_bounds(instance: Instance) -> Tuple[float, float]:
    """Envelope of network cost built from the cheapest / dearest device pairs.

    The m dependence weights (m = number of dependent job pairs) are paired with
    the m smallest and the m largest off-diagonal device pair costs, largest
    weight against the cheapest (resp. dearest) pair. The low value bounds every
    assignment from below; neither value has to be attained.
    """
    _, _, weights = instance.dependent_pairs()
    m = weights.size
    if m == 0:
        return 0.0, 0.0
    rows, cols = np.triu_indices(instance.n, 1)
    pair_costs = np.sort(instance.d_conn[rows, cols])
    heavy_first = np.sort(weights)[::-1]
    low = math.fsum(heavy_first * pair_costs[:m])
    high = math.fsum(heavy_first * pair_costs[::-1][:m])
    return low, high
