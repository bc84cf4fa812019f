from edgefog.bench.runner import GridRunner, run_bench, run_sweep
from edgefog.bench.schema import (
    BENCH_FIELDS,
    SWEEP_FIELDS,
    ExperimentSpec,
    OutputFormat,
    ResultRow,
    SweepRow,
    SweepSpec,
)
from edgefog.bench.store import ResultStore, bench_store, sweep_store


__all__ = [
    "BENCH_FIELDS",
    "SWEEP_FIELDS",
    "ExperimentSpec",
    "GridRunner",
    "OutputFormat",
    "ResultRow",
    "ResultStore",
    "SweepRow",
    "SweepSpec",
    "bench_store",
    "run_bench",
    "run_sweep",
    "sweep_store",
]
