import itertools
import math
import time

import numpy as np
import pytest

from conftest import brute_processing_minimum, random_instance
from edgefog.exceptions import DimensionMismatchError
from edgefog.solver import CostMatrix, build_processing_matrix, solve_lap


def _brute_lap(entries: np.ndarray):
    n = entries.shape[0]
    values = {
        perm: math.fsum(entries[i, perm[i]] for i in range(n))
        for perm in itertools.permutations(range(n))
    }
    best = min(values.values())
    return best, {perm for perm, v in values.items() if v <= best + 1e-9}


def test_processing_matrix_examples():
    from edgefog.schema import Instance

    single = Instance.from_matrices([4], [2], [[0]], [[0]])
    np.testing.assert_array_equal(build_processing_matrix(single).entries, [[0.5]])

    pair = Instance.from_matrices([2, 3], [2, 6], np.zeros((2, 2)), np.zeros((2, 2)))
    np.testing.assert_allclose(build_processing_matrix(pair).entries, [[1, 2 / 3], [3, 2]])


def test_processing_matrix_matches_division(rng):
    instance = random_instance(rng, 6, powers=(2, 3, 5), sizes=(1, 4, 7))
    m = build_processing_matrix(instance).entries
    for i, j in itertools.product(range(6), repeat=2):
        assert m[i, j] == pytest.approx(instance.job_size[i] / instance.device_power[j], abs=1e-12)


def test_small_matrices():
    identity = solve_lap(CostMatrix.of([[0, 9], [9, 0]]))
    assert identity.value == 0
    assert identity.f == (0, 1)

    swap = solve_lap(CostMatrix.of([[1, 2], [2, 4]]))
    assert swap.value == 4
    assert swap.f == (1, 0)


def test_rejects_rectangular_and_non_finite():
    with pytest.raises(DimensionMismatchError):
        CostMatrix.of([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(DimensionMismatchError):
        CostMatrix.of([[1, np.inf], [2, 3]])


def test_matches_brute_force_on_random_matrices(rng):
    for _ in range(200):
        entries = rng.integers(0, 20, size=(7, 7)).astype(float)
        solution = solve_lap(CostMatrix.of(entries))
        best, _ = _brute_lap(entries)
        assert solution.value == pytest.approx(best, abs=1e-9)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_lap_value_equals_minimum_processing_cost(n):
    rng = np.random.default_rng(n)
    seeds = 200 if n < 8 else 20
    for _ in range(seeds):
        instance = random_instance(rng, n, powers=(2, 3, 4, 5), sizes=(2, 3, 4, 5, 6))
        solution = solve_lap(build_processing_matrix(instance))
        assert solution.value == pytest.approx(brute_processing_minimum(instance), abs=1e-9)


def test_row_shift_and_scaling_preserve_optimal_set(rng):
    for _ in range(20):
        entries = rng.integers(0, 10, size=(5, 5)).astype(float)
        base = solve_lap(CostMatrix.of(entries))

        shifted_entries = entries.copy()
        shifted_entries[2] += 7
        shifted = solve_lap(CostMatrix.of(shifted_entries))
        assert shifted.value == pytest.approx(base.value + 7, abs=1e-9)
        _, optimal = _brute_lap(entries)
        assert shifted.f in optimal

        scaled = solve_lap(CostMatrix.of(entries * 3))
        assert scaled.value == pytest.approx(base.value * 3, abs=1e-9)
        assert scaled.f in optimal


def test_deterministic_output(rng):
    entries = rng.integers(0, 3, size=(9, 9)).astype(float)
    assert solve_lap(CostMatrix.of(entries)) == solve_lap(CostMatrix.of(entries))


@pytest.mark.slow
def test_runtime_grows_at_most_cubically():
    rng = np.random.default_rng(0)
    medians = []
    for n in (50, 100, 200, 400):
        times = []
        for _ in range(5):
            matrix = CostMatrix.of(rng.random((n, n)))
            start = time.perf_counter()
            solve_lap(matrix)
            times.append(time.perf_counter() - start)
        medians.append(max(float(np.median(times)), 1e-4))
    for small, large in zip(medians, medians[1:]):
        assert large / small <= 10
