"""Grid evaluation of the protocol scenarios."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Dict, FrozenSet, List, Mapping, Optional, Tuple

import structlog

from ..exceptions import GridMismatchError, UnknownScenarioError
from ..models.channel import KrausChannel
from ..models.partition import Grouping
from ..models.record import MeasureKind, ProtocolRecord
from ..models.sweep import SweepGrid, SweepPoint, SweepResult
from .channels import PARAMETERLESS, channel_family, channel_from_spec, spec_strength
from .protocols import (
    FIG3_GROUPING,
    CommunicationTiming,
    ame_protocol,
    catalysis_compare,
    direct_then_indirect,
    indirect_noisy,
    noisy_labs,
)

logger = structlog.get_logger(__name__)

DEFAULT_P = 0.34

# Options any scenario may receive through SweepGrid.fixed.
_OPTIONS = frozenset({"timing"})


@dataclass(frozen=True)
class Scenario:
    """A named protocol together with the parameters a grid may sweep."""

    name: str
    parameters: FrozenSet[str]
    evaluate: Callable[[Dict[str, Any], SweepGrid], ProtocolRecord]
    defaults: Mapping[str, Any] = field(default_factory=dict)
    options: FrozenSet[str] = frozenset()
    default_channel: Optional[str] = None

    def check_grid(self, grid: SweepGrid) -> None:
        """Raise GridMismatchError unless the grid fits this scenario."""
        unknown = [name for name in grid.axis_names if name not in self.parameters]
        if unknown:
            raise GridMismatchError(
                f"Scenario {self.name} has no parameter(s) {unknown}; "
                f"expected a subset of {sorted(self.parameters)}"
            )
        allowed = self.parameters | self.options | _OPTIONS
        extra = [key for key in grid.fixed if key not in allowed]
        if extra:
            raise GridMismatchError(f"Scenario {self.name} does not accept {extra}")
        if self.default_channel is None:
            if grid.channel is not None:
                raise GridMismatchError(f"Scenario {self.name} takes no channel")
            return

        spec = grid.channel or self.default_channel
        family = channel_family(spec)
        strength_given = spec_strength(spec) is not None or family in PARAMETERLESS
        delta_swept = "delta" in grid.axis_names or "delta" in grid.fixed
        if strength_given and delta_swept:
            raise GridMismatchError(
                f"Channel {spec!r} fixes its strength; drop the delta axis or give a bare family"
            )
        if not strength_given and not delta_swept:
            raise GridMismatchError(f"Channel {spec!r} needs a delta axis or fixed delta")

    def parameters_at(self, grid: SweepGrid, coordinates: Tuple[float, ...]) -> Dict[str, Any]:
        params: Dict[str, Any] = dict(self.defaults)
        params.update(grid.fixed)
        params.update(zip(grid.axis_names, coordinates))
        return params

    def channel(self, grid: SweepGrid, params: Dict[str, Any]) -> KrausChannel:
        spec = grid.channel or self.default_channel
        return channel_from_spec(spec, params.get("delta"))


def _timing(params: Dict[str, Any]) -> CommunicationTiming:
    timing = params.get("timing", CommunicationTiming.AFTER_CHANNEL)
    return timing if isinstance(timing, CommunicationTiming) else CommunicationTiming(timing)


def _grouping(grid: SweepGrid, default: Grouping) -> Grouping:
    return Grouping.parse(grid.grouping) if grid.grouping else default


def _measure(params: Dict[str, Any]) -> MeasureKind:
    measure = params.get("measure", MeasureKind.LOG_NEGATIVITY)
    return measure if isinstance(measure, MeasureKind) else MeasureKind.parse(measure)


def _eval_ame(params: Dict[str, Any], grid: SweepGrid) -> ProtocolRecord:
    return ame_protocol(
        params["q"],
        _grouping(grid, FIG3_GROUPING),
        _measure(params),
        swap=bool(params.get("swap", False)),
    )


def _eval_catalysis(params: Dict[str, Any], grid: SweepGrid) -> ProtocolRecord:
    return catalysis_compare(params["q"])[1]


def _eval_indirect(params: Dict[str, Any], grid: SweepGrid) -> ProtocolRecord:
    channel = SCENARIOS["indirect"].channel(grid, params)
    return indirect_noisy(params["p"], params["s"], channel, _timing(params))


def _eval_direct_then_indirect(params: Dict[str, Any], grid: SweepGrid) -> ProtocolRecord:
    channel = SCENARIOS["direct_then_indirect"].channel(grid, params)
    return direct_then_indirect(params["p"], params["s"], channel, _timing(params))[1]


def _eval_noisy_labs(params: Dict[str, Any], grid: SweepGrid) -> ProtocolRecord:
    channel = SCENARIOS["noisy_labs"].channel(grid, params)
    return noisy_labs(params["p"], channel, params["local_delta"], _timing(params))


SCENARIOS: Dict[str, Scenario] = {
    "ame": Scenario(
        "ame", frozenset({"q"}), _eval_ame,
        options=frozenset({"swap", "measure"}),
    ),
    "catalysis": Scenario("catalysis", frozenset({"q"}), _eval_catalysis),
    "indirect": Scenario(
        "indirect", frozenset({"p", "s", "delta"}), _eval_indirect,
        defaults={"p": DEFAULT_P, "s": 1.0}, default_channel="dephasing",
    ),
    "direct_then_indirect": Scenario(
        "direct_then_indirect", frozenset({"p", "s", "delta"}), _eval_direct_then_indirect,
        defaults={"p": DEFAULT_P, "s": 1.0}, default_channel="dephasing",
    ),
    "noisy_labs": Scenario(
        "noisy_labs", frozenset({"p", "delta", "local_delta"}), _eval_noisy_labs,
        defaults={"p": DEFAULT_P, "local_delta": 0.0}, default_channel="ad",
    ),
}


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]
    except KeyError:
        raise UnknownScenarioError(
            f"Unknown scenario {name!r}; expected one of {sorted(SCENARIOS)}"
        ) from None


def _evaluate_point(scenario: Scenario, grid: SweepGrid,
                    coordinates: Tuple[float, ...]) -> SweepPoint:
    params = scenario.parameters_at(grid, coordinates)
    record = scenario.evaluate(params, grid)
    logger.debug("sweep_point", scenario=scenario.name, coordinates=coordinates,
                 delta_e=record.delta_e)
    return SweepPoint(scenario.name, coordinates, record)


def sweep(grid: SweepGrid, scenario: str, threads: int = 1) -> SweepResult:
    """Evaluate `scenario` at every grid point.

    Output order is row-major over the axes for any thread count.
    """
    definition = get_scenario(scenario)
    definition.check_grid(grid)
    coordinates: List[Tuple[float, ...]] = list(grid.points())
    evaluate = partial(_evaluate_point, definition, grid)

    logger.info("sweep_started", scenario=scenario, points=len(coordinates),
                axes=",".join(grid.axis_names), threads=threads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            points = list(pool.map(evaluate, coordinates))
    else:
        points = [evaluate(c) for c in coordinates]
    logger.info("sweep_completed", scenario=scenario, points=len(points))
    return SweepResult(grid, tuple(points))
