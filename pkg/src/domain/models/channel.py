"""Kraus-operator channel value types."""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from ..exceptions import InvalidChannelError
from .state import DensityMatrix
from .validation import ChannelValidator


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Completely positive trace-preserving map given by Kraus operators.

    `parameter` is the noise strength the channel was built with (δ or q), if any.
    """

    kraus_ops: Tuple[np.ndarray, ...]
    label: str
    parameter: Optional[float] = None

    def __post_init__(self) -> None:
        ops = []
        for op in self.kraus_ops:
            frozen = np.array(op, dtype=np.complex128, copy=True)
            frozen.setflags(write=False)
            ops.append(frozen)
        errors = ChannelValidator.validate_kraus(ops)
        if errors:
            raise InvalidChannelError(f"{self.label}: " + "; ".join(errors))
        object.__setattr__(self, "kraus_ops", tuple(ops))

    @classmethod
    def from_ops(cls, ops: Sequence[np.ndarray], label: str,
                 parameter: Optional[float] = None) -> "KrausChannel":
        return cls(tuple(ops), label, parameter)

    @property
    def dim(self) -> int:
        """Dimension of the subsystem the channel acts on."""
        return int(self.kraus_ops[0].shape[0])

    def spec(self) -> str:
        """Channel spec string, e.g. 'dephasing:0.3'."""
        if self.parameter is None:
            return self.label
        return f"{self.label}:{self.parameter:g}"

    def __repr__(self) -> str:
        return f"KrausChannel({self.spec()}, ops={len(self.kraus_ops)})"


@dataclass(frozen=True)
class ChoiMatrix:
    """Normalized Choi state (I ⊗ Λ)(|φ+><φ+|) on dims [d, d]."""

    matrix: DensityMatrix
    channel_label: str = field(default="")
