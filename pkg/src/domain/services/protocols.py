"""Distribution protocols: the AME family, catalysis and the noisy c-phase protocols.

Noisy protocols act on three qubits A, B, C (indices 0, 1, 2). A and C start
in Alice's lab, B in Bob's.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np
import structlog

from ..exceptions import DimensionMismatchError
from ..models.channel import KrausChannel
from ..models.partition import Bipartition, Grouping
from ..models.record import MeasureKind, ProtocolRecord
from ..models.state import DensityMatrix
from . import tensor
from .channels import (
    amplitude_damping,
    apply_channel,
    is_entanglement_breaking,
    lambda1,
    lambda2,
)
from .measures import negativity, protocol_record
from .states import (
    ame5,
    ancilla_alpha,
    check_unit_interval,
    density_from_pure,
    product_density,
    werner,
    werner_negativity,
)

logger = structlog.get_logger(__name__)

FIG3_GROUPING = Grouping.parse("2,4,5:1:3")
FIG4_GROUPING = Grouping.parse("1,4,5:2:3")
CATALYSIS_GROUPING = Grouping.parse("4,5:1,2:3")
NOISY_GROUPING = Grouping.parse("1:2:3")

TABLE1_PARTITIONS = ("12:345", "2:1345", "1:2345", "3:1245", "13:245", "123:45")
# Partitions that stay PPT on each side of q = 1/2.
_TABLE1_PPT_LOW = {"12:345", "2:1345", "1:2345"}
_TABLE1_PPT_HIGH = {"1:2345"}

PPT = "PPT"
NPT = "NPT"


class CommunicationTiming(Enum):
    """When E_AB:C is evaluated relative to the transit noise on C."""

    AFTER_CHANNEL = "after"
    BEFORE_CHANNEL = "before"


@dataclass(frozen=True)
class SeparabilityEntry:
    """Negativity and PPT/NPT status of one partition of ρ(q)."""

    partition: str
    negativity: float
    status: str

    @property
    def is_npt(self) -> bool:
        return self.status == NPT


def cphase() -> np.ndarray:
    """Controlled-phase gate diag(1, 1, 1, -1)."""
    return np.diag([1, 1, 1, -1]).astype(np.complex128)


def rho_q(q: float) -> DensityMatrix:
    """AME state with Λ₁ on qubit 1 and Λ₂(q) on qubit 2."""
    q = check_unit_interval("q", q)
    rho = density_from_pure(ame5())
    rho = apply_channel(rho, lambda1(), 0)
    return apply_channel(rho, lambda2(q), 1)


def table1_scan(q: float) -> List[SeparabilityEntry]:
    """PPT/NPT pattern of ρ(q) over the tabulated partitions."""
    rho = rho_q(q)
    entries = []
    for label in TABLE1_PARTITIONS:
        value = negativity(rho, Bipartition.parse(label, 5))
        entries.append(SeparabilityEntry(label, value, NPT if value > 0 else PPT))
    return entries


def table1_expected(q: float) -> Dict[str, str]:
    """Published PPT/NPT pattern: three PPT cuts up to q = 1/2, one above."""
    ppt = _TABLE1_PPT_LOW if q <= 0.5 else _TABLE1_PPT_HIGH
    return {label: (PPT if label in ppt else NPT) for label in TABLE1_PARTITIONS}


def swap_roles(grouping: Grouping) -> Grouping:
    """Exchange which group stays with Bob (B) and which travels (C)."""
    return grouping.swapped()


def ame_protocol(q: float, grouping: Grouping = FIG3_GROUPING,
                 measure: MeasureKind = MeasureKind.LOG_NEGATIVITY,
                 swap: bool = False) -> ProtocolRecord:
    """Distribute ρ(q) with the given grouping."""
    if grouping.size != 5:
        raise DimensionMismatchError(f"AME protocol needs a grouping of 5 qubits, got {grouping.size}")
    if swap:
        grouping = swap_roles(grouping)
    return protocol_record(rho_q(q), grouping, measure)


def catalysis_compare(q: float) -> Tuple[ProtocolRecord, ProtocolRecord]:
    """Records without and with qubit 1 sent to Bob beforehand."""
    rho = rho_q(q)
    plain = protocol_record(rho, FIG4_GROUPING, MeasureKind.LOG_NEGATIVITY)
    catalysed = protocol_record(rho, CATALYSIS_GROUPING, MeasureKind.LOG_NEGATIVITY)
    return plain, catalysed


def _initial_state(p: float, s: float) -> DensityMatrix:
    return product_density(werner(p), ancilla_alpha(s))


def _check_qubit_channel(channel: KrausChannel) -> None:
    if channel.dim != 2:
        raise DimensionMismatchError(f"{channel.spec()} is not a qubit channel")


def _communicated(before: DensityMatrix, after: DensityMatrix,
                  timing: CommunicationTiming) -> float:
    state = after if timing is CommunicationTiming.AFTER_CHANNEL else before
    return negativity(state, NOISY_GROUPING.cut_ab_c())


def indirect_noisy(p: float, s: float, channel: KrausChannel,
                   timing: CommunicationTiming = CommunicationTiming.AFTER_CHANNEL) -> ProtocolRecord:
    """Werner pair A-B, ancilla C; c-phase on A,C; C crosses the channel to Bob."""
    _check_qubit_channel(channel)
    rho = _initial_state(p, s)
    e_in = negativity(rho, NOISY_GROUPING.cut_ac_b())
    rho = DensityMatrix(rho.dims, tensor.apply_local(rho, cphase(), [0, 2], rho.dims))
    sent = apply_channel(rho, channel, 2)
    e_com = _communicated(rho, sent, timing)
    e_fin = negativity(sent, NOISY_GROUPING.cut_a_bc())
    return ProtocolRecord.from_values(e_in, e_com, e_fin, MeasureKind.NEGATIVITY)


def direct_then_indirect(p: float, s: float, channel: KrausChannel,
                         timing: CommunicationTiming = CommunicationTiming.AFTER_CHANNEL,
                         ) -> Tuple[float, ProtocolRecord]:
    """B first crosses the channel, then C follows after the c-phase.

    Returns E_AC:B after the direct stage and the record of the indirect stage.
    """
    _check_qubit_channel(channel)
    rho = apply_channel(_initial_state(p, s), channel, 1)
    rho = DensityMatrix(rho.dims, tensor.apply_local(rho, cphase(), [0, 2], rho.dims))
    e_after_direct = negativity(rho, NOISY_GROUPING.cut_ac_b())
    sent = apply_channel(rho, channel, 2)
    e_com = _communicated(rho, sent, timing)
    e_fin = negativity(sent, NOISY_GROUPING.cut_a_bc())
    record = ProtocolRecord.from_values(e_after_direct, e_com, e_fin, MeasureKind.NEGATIVITY)
    return e_after_direct, record


def direct_gain(p: float, channel: KrausChannel) -> float:
    """Change of A-B negativity caused by sending B alone through the channel."""
    _check_qubit_channel(channel)
    sent = apply_channel(werner(p), channel, 1)
    return negativity(sent, Bipartition.of({0}, 2)) - werner_negativity(p)


def noisy_labs(p: float, channel: KrausChannel, local_delta: float,
               timing: CommunicationTiming = CommunicationTiming.AFTER_CHANNEL) -> ProtocolRecord:
    """Direct-then-indirect with pure C and amplitude damping on the qubits at rest."""
    _check_qubit_channel(channel)
    local = amplitude_damping(local_delta)
    rho = _initial_state(p, 1.0)
    rho = DensityMatrix(rho.dims, tensor.apply_local(rho, cphase(), [0, 2], rho.dims))

    # B in transit, A and C idle in Alice's lab.
    rho = apply_channel(rho, channel, 1)
    rho = apply_channel(rho, local, 0)
    rho = apply_channel(rho, local, 2)
    e_in = negativity(rho, NOISY_GROUPING.cut_ac_b())

    # C in transit, A idle with Alice and B idle with Bob.
    sent = apply_channel(rho, channel, 2)
    sent = apply_channel(sent, local, 0)
    sent = apply_channel(sent, local, 1)
    e_com = _communicated(rho, sent, timing)
    e_fin = negativity(sent, NOISY_GROUPING.cut_a_bc())
    return ProtocolRecord.from_values(e_in, e_com, e_fin, MeasureKind.NEGATIVITY)


def eb_no_gain_check(channel: KrausChannel, rho: DensityMatrix, grouping: Grouping) -> float:
    """Negativity gain when every subsystem of C crosses `channel`.

    Entanglement-breaking channels never produce a positive gain. A
    non-breaking channel is reported and the check still runs.
    """
    if grouping.size != len(rho.dims):
        raise DimensionMismatchError(
            f"Grouping {grouping.label()} does not fit a state of {len(rho.dims)} subsystems"
        )
    if channel.dim == 2 and not is_entanglement_breaking(channel):
        logger.warning("channel_not_entanglement_breaking", channel=channel.spec())
    elif channel.dim != 2:
        logger.warning("entanglement_breaking_uncertified", channel=channel.spec())

    e_in = negativity(rho, grouping.cut_ac_b())
    sent = rho
    for target in sorted(grouping.c):
        sent = apply_channel(sent, channel, target)
    e_fin = negativity(sent, grouping.cut_a_bc())
    return e_fin - e_in
