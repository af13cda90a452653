"""Parameter grids and their results."""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np
from dataclasses_json import dataclass_json

from ..exceptions import GridMismatchError
from .record import ProtocolRecord, format_float

SWEEP_CSV_HEADER: List[str] = [
    "scenario", "axis1", "axis2", "e_in", "e_com", "e_fin", "delta_e", "classification",
]


@dataclass_json
@dataclass(frozen=True)
class Axis:
    """One swept parameter: `name` runs from `minimum` to `maximum` in `step` increments."""

    name: str
    minimum: float
    maximum: float
    step: float

    def __post_init__(self) -> None:
        if not self.step > 0:
            raise GridMismatchError(f"Axis {self.name}: step must be positive, got {self.step}")
        if self.minimum > self.maximum:
            raise GridMismatchError(
                f"Axis {self.name}: min {self.minimum} exceeds max {self.maximum}"
            )

    @classmethod
    def fixed(cls, name: str, value: float) -> "Axis":
        """Single-point axis."""
        return cls(name, value, value, 1.0)

    def __len__(self) -> int:
        return int(round((self.maximum - self.minimum) / self.step)) + 1

    def values(self) -> np.ndarray:
        """Evenly spaced points from min to max inclusive."""
        return np.linspace(self.minimum, self.maximum, len(self))


@dataclass_json
@dataclass(frozen=True)
class SweepGrid:
    """Axes, channel spec, fixed parameters and seed of a sweep.

    Points run row-major: the first axis is the outer loop.
    """

    axes: Tuple[Axis, ...]
    channel: Optional[str] = None
    fixed: Dict[str, Any] = field(default_factory=dict)
    grouping: Optional[str] = None
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "axes", tuple(self.axes))
        if not 1 <= len(self.axes) <= 2:
            raise GridMismatchError(f"Sweeps take one or two axes, got {len(self.axes)}")
        names = [axis.name for axis in self.axes]
        if len(set(names)) != len(names):
            raise GridMismatchError(f"Duplicate axis names: {names}")

    @property
    def axis_names(self) -> Tuple[str, ...]:
        return tuple(axis.name for axis in self.axes)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(axis) for axis in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def points(self) -> Iterator[Tuple[float, ...]]:
        """Grid points in row-major order."""
        if len(self.axes) == 1:
            for x in self.axes[0].values():
                yield (float(x),)
            return
        outer, inner = self.axes
        inner_values = inner.values()
        for x in outer.values():
            for y in inner_values:
                yield (float(x), float(y))


@dataclass(frozen=True)
class SweepPoint:
    """One evaluated grid point."""

    scenario: str
    coordinates: Tuple[float, ...]
    record: ProtocolRecord

    def to_csv_row(self) -> List[str]:
        axis1 = format_float(self.coordinates[0])
        axis2 = format_float(self.coordinates[1]) if len(self.coordinates) > 1 else ""
        _, e_in, e_com, e_fin, delta_e, classification = self.record.to_csv_row()
        return [self.scenario, axis1, axis2, e_in, e_com, e_fin, delta_e, classification]


@dataclass(frozen=True)
class SweepResult:
    """Evaluated grid: one record per point, in grid order."""

    grid: SweepGrid
    points: Tuple[SweepPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[SweepPoint]:
        return iter(self.points)

    @property
    def records(self) -> List[ProtocolRecord]:
        return [point.record for point in self.points]

    def column(self, name: str) -> np.ndarray:
        """Values of one record field, shaped like the grid."""
        values = [getattr(point.record, name) for point in self.points]
        return np.asarray(values, dtype=float).reshape(self.grid.shape)

    def argmax(self, name: str = "delta_e") -> SweepPoint:
        """Point with the largest value of `name`; ties go to the first in grid order."""
        values = [getattr(point.record, name) for point in self.points]
        return self.points[int(np.argmax(values))]

    def merged(self, other: "SweepResult") -> "SweepResult":
        """Concatenate two results over the same grid (e.g. two groupings)."""
        if other.grid.axis_names != self.grid.axis_names:
            raise GridMismatchError("Cannot merge sweeps with different axes")
        return SweepResult(self.grid, self.points + other.points)
