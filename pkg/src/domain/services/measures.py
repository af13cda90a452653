"""Entanglement quantifiers, inequality residuals and protocol classification."""

import math
from typing import Callable, Dict, Union

import numpy as np
import structlog

from ..exceptions import InvalidPartitionError, MixedStateError
from ..models.partition import Bipartition, Grouping
from ..models.record import MeasureKind, ProtocolRecord
from ..models.state import DensityMatrix, PureState
from ..models.tolerances import ENTROPY_CUTOFF
from . import tensor
from .states import density_from_pure, reduced_state, schmidt, schmidt_matrix

logger = structlog.get_logger(__name__)

State = Union[PureState, DensityMatrix]


def _density(state: State) -> DensityMatrix:
    return density_from_pure(state) if isinstance(state, PureState) else state


def _check_cut(state: State, cut: Bipartition) -> None:
    if cut.size != len(state.dims):
        raise InvalidPartitionError(
            f"Cut {cut.label()} covers {cut.size} subsystems, state has {len(state.dims)}"
        )


def _check_grouping(state: State, grouping: Grouping) -> None:
    if grouping.size != len(state.dims):
        raise InvalidPartitionError(
            f"Grouping {grouping.label()} covers {grouping.size} subsystems, "
            f"state has {len(state.dims)}"
        )


def negativity(state: State, cut: Bipartition) -> float:
    """(‖ρ^T_left‖₁ - 1)/2, with eigenvalues within the zero cutoff counted as zero."""
    _check_cut(state, cut)
    rho = _density(state)
    pt = tensor.partial_transpose(rho.matrix, rho.dims, sorted(cut.left))
    return tensor.hermitian_eigenvalues(pt).negative_part()


def log_negativity(state: State, cut: Bipartition) -> float:
    """log₂(2N + 1)."""
    return float(np.log2(2 * negativity(state, cut) + 1))


def schmidt_negativity(psi: PureState, cut: Bipartition) -> float:
    """Negativity of a pure state from its Schmidt coefficients: ((Σ√λ)² - 1)/2."""
    _check_cut(psi, cut)
    singular = np.linalg.svd(schmidt_matrix(psi, cut), compute_uv=False)
    return max(0.0, float((np.sum(singular) ** 2 - 1) / 2))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-Σ λ log₂ λ over eigenvalues above the entropy cutoff."""
    eigenvalues = tensor.hermitian_eigenvalues(rho.matrix).eigenvalues
    positive = eigenvalues[eigenvalues > ENTROPY_CUTOFF]
    return max(0.0, float(-np.sum(positive * np.log2(positive))))


def linear_entropy(rho: DensityMatrix) -> float:
    """1 - tr ρ²."""
    return max(0.0, 1.0 - rho.purity)


def entropy_of_cut(state: State, cut: Bipartition, measure: MeasureKind) -> float:
    """Entropy of the reduced state on `cut.left` for a globally pure state."""
    _check_cut(state, cut)
    reduced = reduced_state(state, sorted(cut.left))
    if measure is MeasureKind.VON_NEUMANN_ENTROPY_OF_CUT:
        return von_neumann_entropy(reduced)
    if measure is MeasureKind.LINEAR_ENTROPY_OF_CUT:
        return linear_entropy(reduced)
    raise ValueError(f"{measure.value} is not an entropy measure")


def _quantifier(measure: MeasureKind) -> Callable[[State, Bipartition], float]:
    if measure is MeasureKind.NEGATIVITY:
        return negativity
    if measure is MeasureKind.LOG_NEGATIVITY:
        return log_negativity
    return lambda state, cut: entropy_of_cut(state, cut, measure)


def cut_values(state: State, grouping: Grouping, measure: MeasureKind) -> Dict[str, float]:
    """E_AC:B, E_AB:C and E_A:CB of one state."""
    _check_grouping(state, grouping)
    quantify = _quantifier(measure)
    return {
        "e_in": quantify(state, grouping.cut_ac_b()),
        "e_com": quantify(state, grouping.cut_ab_c()),
        "e_fin": quantify(state, grouping.cut_a_bc()),
    }


def subadditivity_residual(psi: PureState, grouping: Grouping) -> float:
    """S_B + S_C - S_BC with von Neumann entropies of the marginals."""
    _check_grouping(psi, grouping)
    s_b = von_neumann_entropy(reduced_state(psi, sorted(grouping.b)))
    s_c = von_neumann_entropy(reduced_state(psi, sorted(grouping.c)))
    s_bc = von_neumann_entropy(reduced_state(psi, sorted(grouping.b | grouping.c)))
    return s_b + s_c - s_bc


def lemma1_residual(psi: PureState, grouping: Grouping) -> float:
    """N_AC:B + N_AB:C - √(2/(d_A(d_A-1))) N_A:CB, with d_A the Schmidt rank of A.

    Returns +inf when d_A = 1, where the bound is vacuous.
    """
    _check_grouping(psi, grouping)
    rank = schmidt(psi, grouping.cut_a_bc()).rank
    if rank == 1:
        return math.inf
    values = cut_values(psi, grouping, MeasureKind.NEGATIVITY)
    factor = math.sqrt(2 / (rank * (rank - 1)))
    return values["e_in"] + values["e_com"] - factor * values["e_fin"]


def theorem1_residual(psi: PureState, grouping: Grouping) -> float:
    """N_AC:B + N_AB:C - N_A:CB; negative means an excessive negativity gain."""
    values = cut_values(psi, grouping, MeasureKind.NEGATIVITY)
    return values["e_in"] + values["e_com"] - values["e_fin"]


def theorem2_residual(psi: PureState, grouping: Grouping) -> float:
    """Same as theorem1_residual with logarithmic negativity."""
    values = cut_values(psi, grouping, MeasureKind.LOG_NEGATIVITY)
    return values["e_in"] + values["e_com"] - values["e_fin"]


def protocol_record(state: State, grouping: Grouping,
                    measure: MeasureKind = MeasureKind.NEGATIVITY) -> ProtocolRecord:
    """Classify the protocol in which C travels from Alice's lab to Bob's."""
    if measure.requires_pure_state and isinstance(state, DensityMatrix):
        if not state.is_pure():
            raise MixedStateError(
                f"{measure.value} needs a globally pure state (purity {state.purity:.6g})"
            )
    values = cut_values(state, grouping, measure)
    record = ProtocolRecord.from_values(values["e_in"], values["e_com"], values["e_fin"], measure)
    logger.debug(
        "protocol_record",
        grouping=grouping.label(),
        measure=measure.value,
        classification=record.classification.value,
    )
    return record
