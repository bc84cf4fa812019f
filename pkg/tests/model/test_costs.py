import numpy as np
import pytest

from conftest import edge_list_network_cost, random_instance, term_processing_cost
from edgefog.exceptions import DimensionMismatchError, InvalidAssignmentError
from edgefog.model import link_cost_bounds, network_cost, processing_cost
from edgefog.schema import Assignment, Instance


def test_network_cost_single_pair():
    instance = Instance.from_matrices([1, 1], [1, 1], [[0, 3], [3, 0]], [[0, 1], [1, 0]])
    assert network_cost([0, 1], instance) == 3


def test_network_cost_without_dependence_is_zero(rng):
    instance = random_instance(rng, 5, dep_density=0.0)
    for f in ([0, 1, 2, 3, 4], [4, 3, 2, 1, 0], [2, 0, 4, 1, 3]):
        assert network_cost(f, instance) == 0


def test_network_cost_matches_edge_list(rng):
    for _ in range(20):
        instance = random_instance(rng, 4)
        f = rng.permutation(4)
        assert network_cost(f, instance) == pytest.approx(
            edge_list_network_cost(instance, f), abs=1e-9
        )


def test_processing_cost_examples():
    single = Instance.from_matrices([4], [2], [[0]], [[0]])
    assert processing_cost([0], single) == 0.5

    homogeneous = Instance.from_matrices([2, 2], [2, 2], [[0, 1], [1, 0]], np.zeros((2, 2)))
    assert processing_cost([0, 1], homogeneous) == 2.0
    assert processing_cost([1, 0], homogeneous) == 2.0


def test_processing_cost_matches_term_sum(rng):
    for _ in range(20):
        instance = random_instance(rng, 5, powers=(2, 3, 5, 7), sizes=(1, 4, 6))
        f = rng.permutation(5)
        assert processing_cost(f, instance) == pytest.approx(
            term_processing_cost(instance, f), abs=1e-9
        )


def test_costs_reject_bad_assignments(rng):
    instance = random_instance(rng, 4)
    with pytest.raises(DimensionMismatchError):
        network_cost([0, 1, 2], instance)
    with pytest.raises(InvalidAssignmentError):
        processing_cost([0, 0, 1, 2], instance)


def test_costs_are_positive(rng):
    for _ in range(10):
        instance = random_instance(rng, 5)
        f = rng.permutation(5)
        assert network_cost(f, instance) >= 0
        assert processing_cost(f, instance) > 0


def test_network_cost_invariant_under_relabeling(rng):
    instance = random_instance(rng, 6)
    f = rng.permutation(6)
    jobs = rng.permutation(6)
    devices = rng.permutation(6)
    relabeled = Instance.from_matrices(
        instance.device_power[devices],
        instance.job_size[jobs],
        instance.d_conn[np.ix_(devices, devices)],
        instance.j_conn[np.ix_(jobs, jobs)],
    )
    # relabeled job k is old job jobs[k]; old device x is new device inverse[x]
    inverse = np.argsort(devices)
    g = inverse[f[jobs]]
    assert network_cost(g, relabeled) == network_cost(f, instance)
    assert processing_cost(g, relabeled) == processing_cost(f, instance)


def test_scaling_d_conn_scales_network_cost(rng):
    instance = random_instance(rng, 5)
    scaled = Instance.from_matrices(
        instance.device_power, instance.job_size, instance.d_conn * 4, instance.j_conn
    )
    for _ in range(5):
        f = rng.permutation(5)
        assert network_cost(f, scaled) == 4 * network_cost(f, instance)


def test_scaling_power_scales_processing_cost(rng):
    instance = random_instance(rng, 5)
    scaled = Instance.from_matrices(
        instance.device_power * 2, instance.job_size, instance.d_conn, instance.j_conn
    )
    for _ in range(5):
        f = rng.permutation(5)
        assert processing_cost(f, scaled) == processing_cost(f, instance) / 2


def test_link_cost_bounds_envelope(rng):
    instance = random_instance(rng, 5)
    low, high = link_cost_bounds(instance)
    assert low <= high
    for _ in range(30):
        f = rng.permutation(5)
        assert network_cost(f, instance) >= low


def test_link_cost_bounds_without_dependence(rng):
    assert link_cost_bounds(random_instance(rng, 4, dep_density=0.0)) == (0.0, 0.0)


def test_assignment_evaluate_caches_costs(rng):
    instance = random_instance(rng, 5)
    f = [4, 2, 0, 1, 3]
    assignment = Assignment.evaluate(f, instance)
    assert assignment.f == tuple(f)
    assert assignment.network_cost == network_cost(f, instance)
    assert assignment.processing_cost == processing_cost(f, instance)
