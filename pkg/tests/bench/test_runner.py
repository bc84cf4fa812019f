import csv
import json

import pytest

from edgefog.bench import (
    BENCH_FIELDS,
    SWEEP_FIELDS,
    ExperimentSpec,
    OutputFormat,
    SweepSpec,
    run_bench,
    run_sweep,
)
from edgefog.config import GeneratorSettings
from edgefog.exceptions import BenchError, ParamInvalidError
from edgefog.model import normalize_instance
from edgefog.schema import Assignment
from edgefog.solver import SolverType
from edgefog.topology import GenParams, SweepAxis, generate


def _bench_spec(output, **overrides):
    values = dict(
        sizes=[5],
        solvers=[SolverType.LPCF, SolverType.NOC_PERM],
        seeds=3,
        base_seed=0,
        time_limit_ms=None,
        workers=2,
        generator=GeneratorSettings(),
        output=output,
    )
    values.update(overrides)
    return ExperimentSpec(**values)


def _read_csv(path):
    with path.open(newline="") as f:
        return list(csv.DictReader(f))


def _without_time(rows):
    return [{k: v for k, v in row.items() if k != "wall_time_s"} for row in rows]


@pytest.mark.asyncio
async def test_bench_grid_cardinality(tmp_path):
    output = tmp_path / "bench.csv"
    rows = await run_bench(_bench_spec(output))
    assert len(rows) == 6
    assert output.read_text().splitlines()[0] == ",".join(BENCH_FIELDS)
    records = _read_csv(output)
    assert len(records) == 6
    assert [(int(r["n"]), r["solver"], int(r["seed"])) for r in records] == sorted(
        row.key() for row in rows
    )


@pytest.mark.asyncio
async def test_bench_rows_recompute_from_mapping(tmp_path):
    rows = await run_bench(_bench_spec(tmp_path / "bench.csv"))
    for row in rows:
        params = GenParams.from_settings(row.n, settings=GeneratorSettings(), seed=row.seed)
        instance = normalize_instance(*generate(params))
        assignment = Assignment.evaluate(row.assignment(), instance)
        assert assignment.processing_cost == row.processing_cost
        assert assignment.network_cost == row.network_cost
        assert row.link_low <= row.network_cost
        if row.solver is SolverType.LPCF:
            assert row.reduced_space_size >= 1
            assert row.optimal
        else:
            assert row.reduced_space_size is None


@pytest.mark.asyncio
async def test_noc_never_beaten_by_lpcf(tmp_path):
    rows = await run_bench(_bench_spec(tmp_path / "bench.csv"))
    by_key = {row.key(): row for row in rows}
    for (n, solver, seed), row in by_key.items():
        if solver == "lpcf":
            assert by_key[(n, "noc-perm", seed)].network_cost <= row.network_cost


@pytest.mark.asyncio
async def test_rerun_is_idempotent(tmp_path):
    output = tmp_path / "bench.csv"
    await run_bench(_bench_spec(output))
    before = output.read_text()
    await run_bench(_bench_spec(output))
    assert output.read_text() == before


@pytest.mark.asyncio
async def test_resume_fills_missing_rows(tmp_path):
    output = tmp_path / "bench.csv"
    await run_bench(_bench_spec(output))
    complete = output.read_text().splitlines()

    output.write_text("\n".join(complete[:3]) + "\n")
    await run_bench(_bench_spec(output))
    resumed = output.read_text().splitlines()
    assert len(resumed) == len(complete)
    assert resumed[:3] == complete[:3]
    assert _without_time(_read_csv(output)) == _without_time(
        list(csv.DictReader(complete))
    )


@pytest.mark.asyncio
async def test_repeated_runs_are_deterministic(tmp_path):
    await run_bench(_bench_spec(tmp_path / "a.csv", workers=1))
    await run_bench(_bench_spec(tmp_path / "b.csv", workers=3))
    assert _without_time(_read_csv(tmp_path / "a.csv")) == _without_time(
        _read_csv(tmp_path / "b.csv")
    )


@pytest.mark.asyncio
async def test_json_format(tmp_path):
    output = tmp_path / "bench.json"
    await run_bench(_bench_spec(output, format=OutputFormat.JSON, solvers=[SolverType.LAP]))
    rows = json.loads(output.read_text())
    assert len(rows) == 3
    assert set(rows[0]) == set(BENCH_FIELDS)
    assert rows[0]["optimal"] is True


@pytest.mark.asyncio
async def test_match_lpcf_time(tmp_path):
    spec = _bench_spec(
        tmp_path / "bench.csv",
        sizes=[7],
        seeds=2,
        solvers=[SolverType.NOC_BNB, SolverType.LPCF],
        match_lpcf_time=True,
    )
    rows = await run_bench(spec)
    assert {row.solver for row in rows} == {SolverType.LPCF, SolverType.NOC_BNB}
    for row in rows:
        if row.solver is SolverType.NOC_BNB:
            lpcf = next(r for r in rows if r.solver is SolverType.LPCF and r.seed == row.seed)
            assert row.wall_time_s < lpcf.wall_time_s + 1.0


def test_match_lpcf_time_needs_both_solvers(tmp_path):
    with pytest.raises(ParamInvalidError):
        _bench_spec(tmp_path / "bench.csv", solvers=[SolverType.NOC_BNB], match_lpcf_time=True)


@pytest.mark.parametrize(
    "overrides", [{"sizes": []}, {"solvers": []}, {"seeds": 0}, {"sizes": [0]}, {"workers": 0}]
)
def test_invalid_experiment(tmp_path, overrides):
    with pytest.raises(ParamInvalidError):
        _bench_spec(tmp_path / "bench.csv", **overrides)


@pytest.mark.asyncio
async def test_foreign_file_is_not_resumed(tmp_path):
    output = tmp_path / "bench.csv"
    output.write_text("a,b\n1,2\n")
    with pytest.raises(BenchError):
        await run_bench(_bench_spec(output))


@pytest.mark.asyncio
async def test_sweep_rows(tmp_path):
    output = tmp_path / "sweep.csv"
    spec = SweepSpec(
        axis=SweepAxis.DEP_DENSITY,
        values=[0.1, 0.5, 0.9],
        sizes=[6],
        seeds=4,
        base_seed=3,
        time_limit_ms=None,
        generator=GeneratorSettings(),
        output=output,
    )
    rows = await run_sweep(spec)
    assert [row.value for row in rows] == [0.1, 0.5, 0.9]
    assert output.read_text().splitlines()[0] == ",".join(SWEEP_FIELDS)
    for row in rows:
        assert row.seeds == 4
        assert row.exhausted_runs == 4
        assert row.std_network_cost >= 0
        assert row.stderr_network_cost == pytest.approx(row.std_network_cost / 2)

    before = output.read_text()
    await run_sweep(spec)
    assert output.read_text() == before


@pytest.mark.asyncio
async def test_sweep_over_several_sizes(tmp_path):
    spec = SweepSpec(
        axis=SweepAxis.DEP_DENSITY,
        values=[0.2, 0.6],
        sizes=[7, 5],
        seeds=2,
        base_seed=3,
        time_limit_ms=None,
        generator=GeneratorSettings(),
        output=tmp_path / "sweep.csv",
    )
    rows = await run_sweep(spec)
    assert [row.key() for row in rows] == [
        ("dep-density", 0.2, 5),
        ("dep-density", 0.2, 7),
        ("dep-density", 0.6, 5),
        ("dep-density", 0.6, 7),
    ]

    single = await run_sweep(spec.model_copy(update={"sizes": [5], "output": tmp_path / "five.csv"}))
    assert single == [row for row in rows if row.n == 5]


def test_sweep_needs_sizes(tmp_path):
    with pytest.raises(ParamInvalidError):
        SweepSpec(
            axis=SweepAxis.DEP_DENSITY,
            values=[0.2],
            sizes=[],
            output=tmp_path / "sweep.csv",
        )
