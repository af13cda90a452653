"""Random search for pure states that violate the negativity inequalities."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import structlog

from ..exceptions import ParameterRangeError
from ..models.partition import Dims, Grouping
from ..models.state import PureState
from .measures import theorem1_residual, theorem2_residual
from .states import haar_random_pure

logger = structlog.get_logger(__name__)

VIOLATION_THRESHOLD = -1e-9
SEARCH_GROUPING = Grouping.parse("1:2:3")
CHUNK_SIZE = 256


class ResidualKind(Enum):
    """Inequality whose violation is searched for."""

    THEOREM1 = "theorem1"
    THEOREM2 = "theorem2"

    @property
    def function(self) -> Callable[[PureState, Grouping], float]:
        return theorem1_residual if self is ResidualKind.THEOREM1 else theorem2_residual


@dataclass(frozen=True)
class Witness:
    """A sampled state whose residual fell below the violation threshold."""

    residual_kind: ResidualKind
    trial: int
    seed: int
    trial_seed: int
    residual: float
    state: PureState

    def to_dict(self) -> Dict[str, Any]:
        return {
            "residual_kind": self.residual_kind.value,
            "trial": self.trial,
            "seed": self.seed,
            "trial_seed": self.trial_seed,
            "residual": self.residual,
            "state": self.state.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Witness":
        return cls(
            ResidualKind(data["residual_kind"]),
            int(data["trial"]),
            int(data["seed"]),
            int(data["trial_seed"]),
            float(data["residual"]),
            PureState.from_dict(data["state"]),
        )


def trial_seed(seed: int, trial: int) -> int:
    """Seed of one trial, derived from the search seed and the trial index."""
    return int(np.random.SeedSequence([seed, trial]).generate_state(1)[0])


def _evaluate(dims: Dims, kind: ResidualKind, seed: int, trial: int) -> Optional[Witness]:
    derived = trial_seed(seed, trial)
    psi = haar_random_pure(dims, derived)
    residual = kind.function(psi, SEARCH_GROUPING)
    if residual < VIOLATION_THRESHOLD:
        return Witness(kind, trial, seed, derived, residual, psi)
    return None


def search_witnesses(d_a: int, trials: int, seed: int,
                     residual: ResidualKind = ResidualKind.THEOREM1,
                     threads: int = 1,
                     max_witnesses: Optional[int] = None) -> List[Witness]:
    """Sample Haar states on [d_a, 2, 2] and keep every violation, in trial order.

    With `max_witnesses` the search stops once that many are found. Results
    depend only on (d_a, trials, seed, residual, max_witnesses).
    """
    if d_a < 2:
        raise ParameterRangeError(f"d_a must be at least 2, got {d_a}")
    if trials < 1:
        raise ParameterRangeError(f"trials must be positive, got {trials}")

    dims = Dims.of([d_a, 2, 2])
    witnesses: List[Witness] = []
    logger.info("search_started", d_a=d_a, trials=trials, seed=seed, residual=residual.value)

    run = partial(_evaluate, dims, residual, seed)
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for start in range(0, trials, CHUNK_SIZE):
            chunk = range(start, min(start + CHUNK_SIZE, trials))
            results = pool.map(run, chunk) if pool else map(run, chunk)
            witnesses.extend(w for w in results if w is not None)
            if max_witnesses is not None and len(witnesses) >= max_witnesses:
                witnesses = witnesses[:max_witnesses]
                logger.info("search_stopped_early", after_trials=chunk.stop)
                break
    finally:
        if pool:
            pool.shutdown()

    logger.info("search_completed", witnesses=len(witnesses))
    return witnesses


def search_violation(d_a: int, trials: int, seed: int,
                     residual: ResidualKind = ResidualKind.THEOREM1,
                     threads: int = 1) -> List[PureState]:
    """Witness states with residual below -1e-9 among `trials` Haar samples."""
    return [w.state for w in search_witnesses(d_a, trials, seed, residual, threads)]
