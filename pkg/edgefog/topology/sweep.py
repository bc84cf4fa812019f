from enum import Enum
from typing import List, Sequence

import numpy as np

from edgefog.exceptions import ParamInvalidError
from edgefog.topology.generator import GenParams, derive_seed


class SweepAxis(str, Enum):
    EDGE_DENSITY = "edge-density"
    FOG_DENSITY = "fog-density"
    INTER_DENSITY = "inter-density"
    DEP_DENSITY = "dep-density"

    @property
    def field(self) -> str:
        return self.value.replace("-", "_")


def sweep_params(base: GenParams, axis: SweepAxis, values: Sequence[float]) -> List[GenParams]:
    """One parameter set per value, varying only ``axis``.

    Point ``i`` is seeded with ``derive_seed(base.seed, i)``.
    """
    axis = SweepAxis(axis)
    points = []
    for i, value in enumerate(values):
        if not 0 <= value <= 1:
            raise ParamInvalidError(
                f"Sweep value {value} for {axis.value} is outside [0, 1]",
                axis=axis.value,
                value=value,
            )
        points.append(
            base.with_values(**{axis.field: float(value), "seed": derive_seed(base.seed, i)})
        )
    return points


def parse_values(text: str) -> List[float]:
    """Sweep values from ``start:stop:step`` (inclusive) or a comma separated list."""
    try:
        if ":" in text:
            start, stop, step = (float(part) for part in text.split(":"))
            if step <= 0 or stop < start:
                raise ParamInvalidError(f"Empty value range {text!r}", values=text)
            count = int(round((stop - start) / step)) + 1
            return [float(round(v, 12)) for v in np.linspace(start, start + (count - 1) * step, count)]
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ParamInvalidError(f"Cannot parse sweep values {text!r}", values=text)
