"""Kraus channel families, Choi matrices and entanglement-breaking certification."""

from typing import Optional

import numpy as np
import structlog

from ..exceptions import DimensionMismatchError, InvalidChannelError
from ..models.channel import ChoiMatrix, KrausChannel
from ..models.partition import Bipartition, Dims
from ..models.state import DensityMatrix
from . import tensor
from .measures import negativity
from .states import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z, check_unit_interval

logger = structlog.get_logger(__name__)

PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

CHANNEL_ALIASES = {
    "dephasing": "dephasing",
    "ph": "dephasing",
    "depolarizing": "depolarizing",
    "pol": "depolarizing",
    "ad": "ad",
    "amplitude_damping": "ad",
    "lambda1": "lambda1",
    "lambda2": "lambda2",
    "identity": "identity",
}

# Families whose constructor takes no strength.
PARAMETERLESS = {"lambda1", "identity"}


def identity(dim: int = 2) -> KrausChannel:
    """The noiseless channel."""
    return KrausChannel.from_ops([np.eye(dim, dtype=np.complex128)], "identity")


def dephasing(delta: float) -> KrausChannel:
    """Coherence loss in the computational basis: off-diagonals scale by 1 - δ."""
    delta = check_unit_interval("delta", delta)
    return KrausChannel.from_ops(
        [np.sqrt(1 - delta / 2) * IDENTITY_2, np.sqrt(delta / 2) * SIGMA_Z],
        "dephasing", delta,
    )


def depolarizing(delta: float) -> KrausChannel:
    """Coherence loss in every basis."""
    delta = check_unit_interval("delta", delta)
    ops = [np.sqrt(1 - delta) * IDENTITY_2] + [np.sqrt(delta / 3) * p for p in PAULIS]
    return KrausChannel.from_ops(ops, "depolarizing", delta)


def amplitude_damping(delta: float) -> KrausChannel:
    """Decay |1> → |0> with probability δ."""
    delta = check_unit_interval("delta", delta)
    k0 = np.array([[1, 0], [0, np.sqrt(1 - delta)]], dtype=np.complex128)
    k1 = np.array([[0, np.sqrt(delta)], [0, 0]], dtype=np.complex128)
    return KrausChannel.from_ops([k0, k1], "ad", delta)


def lambda1() -> KrausChannel:
    """Pauli channel with weights (1/2, 1/6, 1/6, 1/6)."""
    ops = [IDENTITY_2 / np.sqrt(2)] + [p / np.sqrt(6) for p in PAULIS]
    return KrausChannel.from_ops(ops, "lambda1")


def lambda2(q: float) -> KrausChannel:
    """Pauli channel with weights (q, (1-q)/3, (1-q)/3, (1-q)/3)."""
    q = check_unit_interval("q", q)
    ops = [np.sqrt(q) * IDENTITY_2] + [np.sqrt((1 - q) / 3) * p for p in PAULIS]
    return KrausChannel.from_ops(ops, "lambda2", q)


def channel_family(spec: str) -> str:
    """Canonical family name of a channel spec such as 'pol:0.2'."""
    name = spec.split(":", 1)[0].strip().lower()
    try:
        return CHANNEL_ALIASES[name]
    except KeyError:
        raise InvalidChannelError(
            f"Unknown channel {name!r}; expected one of {sorted(set(CHANNEL_ALIASES.values()))}"
        ) from None


def spec_strength(spec: str) -> Optional[float]:
    """Strength given in a channel spec, or None for a bare family name."""
    if ":" not in spec:
        return None
    raw = spec.split(":", 1)[1].strip()
    try:
        return float(raw)
    except ValueError:
        raise InvalidChannelError(f"Malformed channel strength in {spec!r}") from None


def channel_from_spec(spec: str, strength: Optional[float] = None) -> KrausChannel:
    """Build a channel from 'family[:strength]'.

    A bare family name takes its strength from `strength`.
    """
    family = channel_family(spec)
    given = spec_strength(spec)
    if family in PARAMETERLESS:
        if given is not None:
            raise InvalidChannelError(f"Channel {family} takes no strength: {spec!r}")
        return identity() if family == "identity" else lambda1()
    value = given if given is not None else strength
    if value is None:
        raise InvalidChannelError(f"Channel {family} needs a strength, e.g. '{family}:0.3'")
    builders = {
        "dephasing": dephasing,
        "depolarizing": depolarizing,
        "ad": amplitude_damping,
        "lambda2": lambda2,
    }
    return builders[family](value)


def apply_channel(rho: DensityMatrix, channel: KrausChannel, target: int) -> DensityMatrix:
    """Σ_k K_k ρ K_k† with the channel acting on subsystem `target`."""
    rho.dims.check_index(target)
    if channel.dim != rho.dims[target]:
        raise DimensionMismatchError(
            f"{channel.spec()} acts on dimension {channel.dim}, "
            f"subsystem {target} has dimension {rho.dims[target]}"
        )
    out = tensor.apply_kraus(rho.matrix, channel.kraus_ops, [target], rho.dims)
    return DensityMatrix(rho.dims, (out + out.conj().T) / 2)


def choi(channel: KrausChannel) -> ChoiMatrix:
    """(I ⊗ Λ)(|φ+><φ+|) with |φ+> maximally entangled on [d, d], trace one."""
    d = channel.dim
    phi = np.eye(d, dtype=np.complex128).reshape(d * d) / np.sqrt(d)
    state = DensityMatrix(Dims.of([d, d]), np.outer(phi, phi.conj()))
    return ChoiMatrix(apply_channel(state, channel, 1), channel.spec())


def is_entanglement_breaking(channel: KrausChannel) -> bool:
    """True iff the channel's Choi state is PPT; exact for qubit channels only."""
    if channel.dim != 2:
        raise InvalidChannelError(
            f"Entanglement-breaking certification supports qubit channels, "
            f"{channel.spec()} acts on dimension {channel.dim}"
        )
    return negativity(choi(channel).matrix, Bipartition.of({0}, 2)) == 0.0
