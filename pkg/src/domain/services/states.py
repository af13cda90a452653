"""Constructors for the states used by the distribution protocols."""

from functools import lru_cache
from typing import Sequence, Union

import numpy as np
import structlog

from ..exceptions import DimensionMismatchError, InvalidStateError, ParameterRangeError
from ..models.partition import Bipartition, Dims
from ..models.state import DensityMatrix, PureState, SchmidtDecomposition
from ..models.tolerances import ZERO_CUTOFF
from . import tensor

logger = structlog.get_logger(__name__)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)

# Sign of each basis ket of the five-qubit AME state; every amplitude is ±1/4
# and every two-qubit marginal is I/4.
AME5_TERMS = (
    ("00000", +1), ("10010", +1), ("01001", +1), ("10100", +1),
    ("01010", +1), ("11011", -1), ("00110", -1), ("11000", -1),
    ("11101", +1), ("00011", +1), ("11110", -1), ("01111", +1),
    ("10001", +1), ("01100", -1), ("10111", -1), ("00101", +1),
)


def check_unit_interval(name: str, value: float) -> float:
    """Return value as float, or raise ParameterRangeError outside [0, 1]."""
    value = float(value)
    if not 0.0 <= value <= 1.0 or np.isnan(value):
        raise ParameterRangeError(f"{name} must lie in [0, 1], got {value}")
    return value


def pure_from_amplitudes(dims: Union[Dims, Sequence[int]], amplitudes: Sequence[complex]) -> PureState:
    """Normalize a nonzero amplitude vector into a PureState."""
    dims = Dims.of(dims)
    vector = np.asarray(amplitudes, dtype=np.complex128)
    if vector.ndim != 1 or vector.shape[0] != dims.total:
        raise DimensionMismatchError(
            f"Got {vector.size} amplitudes for dims {dims} (expected {dims.total})"
        )
    norm = float(np.linalg.norm(vector))
    if norm <= ZERO_CUTOFF:
        raise InvalidStateError("Cannot normalize the zero vector")
    return PureState(dims, vector / norm)


def basis_state(dims: Union[Dims, Sequence[int]], digits: Sequence[int]) -> PureState:
    """Computational basis ket |digits> (big-endian)."""
    dims = Dims.of(dims)
    if len(digits) != len(dims):
        raise DimensionMismatchError(f"Need {len(dims)} digits, got {len(digits)}")
    vector = np.zeros(dims.total, dtype=np.complex128)
    vector[np.ravel_multi_index(tuple(digits), tuple(dims))] = 1.0
    return PureState(dims, vector)


def product_pure(*states: PureState) -> PureState:
    """Tensor product of pure states, left to right."""
    amplitudes = states[0].amplitudes
    dims = list(states[0].dims)
    for state in states[1:]:
        amplitudes = np.kron(amplitudes, state.amplitudes)
        dims.extend(state.dims)
    return PureState(Dims.of(dims), amplitudes)


def product_density(*states: DensityMatrix) -> DensityMatrix:
    """Tensor product of density matrices, left to right."""
    dims = [d for state in states for d in state.dims]
    return DensityMatrix(Dims.of(dims), tensor.kron_all([s.matrix for s in states]))


def density_from_pure(psi: PureState) -> DensityMatrix:
    """|ψ><ψ|."""
    return DensityMatrix(psi.dims, np.outer(psi.amplitudes, psi.amplitudes.conj()))


def bell_phi_plus() -> PureState:
    """(|00> + |11>)/√2."""
    return pure_from_amplitudes([2, 2], [1, 0, 0, 1])


def ghz(qubits: int = 3) -> PureState:
    """(|0...0> + |1...1>)/√2."""
    dims = Dims.of([2] * qubits)
    vector = np.zeros(dims.total, dtype=np.complex128)
    vector[0] = vector[-1] = 1.0
    return pure_from_amplitudes(dims, vector)


def werner(p: float) -> DensityMatrix:
    """p|φ+><φ+| + (1-p) I/4 on two qubits."""
    p = check_unit_interval("p", p)
    phi = density_from_pure(bell_phi_plus()).matrix
    return DensityMatrix(Dims.of([2, 2]), p * phi + (1 - p) * np.eye(4) / 4)


def werner_negativity(p: float) -> float:
    """Closed-form negativity of werner(p): max(0, (3p - 1)/4)."""
    p = check_unit_interval("p", p)
    return max(0.0, (3 * p - 1) / 4)


def ancilla_alpha(s: float) -> DensityMatrix:
    """(I + s σx)/2: |+><+| at s=1, maximally mixed at s=0."""
    s = check_unit_interval("s", s)
    return DensityMatrix(Dims.of([2]), (IDENTITY_2 + s * SIGMA_X) / 2)


@lru_cache(maxsize=None)
def ame5() -> PureState:
    """Five-qubit absolutely maximally entangled state."""
    dims = Dims.of([2] * 5)
    vector = np.zeros(dims.total, dtype=np.complex128)
    for ket, sign in AME5_TERMS:
        vector[int(ket, 2)] = sign / 4
    return PureState(dims, vector)


def theorem1_counterexample() -> PureState:
    """(|200> + |001> + |110>)/√3 on [3, 2, 2]: excessive under negativity."""
    dims = Dims.of([3, 2, 2])
    vector = np.zeros(dims.total, dtype=np.complex128)
    for digits in ((2, 0, 0), (0, 0, 1), (1, 1, 0)):
        vector[np.ravel_multi_index(digits, tuple(dims))] = 1.0
    return pure_from_amplitudes(dims, vector)


def theorem2_counterexample() -> PureState:
    """(10|000> + |110> + |201> + |311>)/√103 on [4, 2, 2]: excessive under log-negativity."""
    dims = Dims.of([4, 2, 2])
    vector = np.zeros(dims.total, dtype=np.complex128)
    for digits, weight in (((0, 0, 0), 10), ((1, 1, 0), 1), ((2, 0, 1), 1), ((3, 1, 1), 1)):
        vector[np.ravel_multi_index(digits, tuple(dims))] = weight
    return pure_from_amplitudes(dims, vector)


def schmidt_matrix(psi: PureState, left: Bipartition) -> np.ndarray:
    """Amplitudes reshaped to a (d_left, d_right) matrix."""
    if left.size != len(psi.dims):
        raise DimensionMismatchError(
            f"Bipartition over {left.size} subsystems applied to dims {psi.dims}"
        )
    left_idx = sorted(left.left)
    right_idx = sorted(left.right)
    amplitudes = psi.amplitudes.reshape(tuple(psi.dims))
    amplitudes = amplitudes.transpose(left_idx + right_idx)
    return amplitudes.reshape(psi.dims.dim_of(left_idx), psi.dims.dim_of(right_idx))


def schmidt(psi: PureState, left: Bipartition) -> SchmidtDecomposition:
    """Squared Schmidt coefficients across `left`, filtered at the zero cutoff."""
    singular = np.linalg.svd(schmidt_matrix(psi, left), compute_uv=False)
    weights = singular ** 2
    return SchmidtDecomposition(tuple(float(w) for w in weights if w > ZERO_CUTOFF))


def reduced_state(state: Union[PureState, DensityMatrix], keep: Sequence[int]) -> DensityMatrix:
    """Marginal on the kept subsystems (original relative order)."""
    if isinstance(state, PureState):
        state = density_from_pure(state)
    kept = sorted(keep)
    return DensityMatrix(state.dims.subset(kept), tensor.partial_trace(state.matrix, state.dims, kept))


def haar_random_pure(dims: Union[Dims, Sequence[int]], seed: int) -> PureState:
    """Haar-distributed pure state from normalized complex Gaussian amplitudes."""
    dims = Dims.of(dims)
    rng = np.random.default_rng(seed)
    vector = rng.standard_normal(dims.total) + 1j * rng.standard_normal(dims.total)
    return PureState(dims, vector / np.linalg.norm(vector))
