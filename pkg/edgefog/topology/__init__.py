from edgefog.topology.generator import GenParams, derive_seed, generate, generate_document
from edgefog.topology.sweep import SweepAxis, parse_values, sweep_params


__all__ = [
    "GenParams",
    "SweepAxis",
    "derive_seed",
    "generate",
    "generate_document",
    "parse_values",
    "sweep_params",
]
