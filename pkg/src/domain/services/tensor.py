"""Dense multipartite linear algebra on complex matrices.

Operators act on the tensor product of `dims` with subsystem 0 as the most
significant factor. Every function is pure and returns new arrays.
"""

from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from ..exceptions import DimensionMismatchError, InvalidPartitionError, NonHermitianError
from ..models.partition import Dims
from ..models.state import ComplexMatrix, DensityMatrix, HermitianSpectrum
from ..models.tolerances import EPS_HERM

MatrixLike = Union[np.ndarray, DensityMatrix]


def as_matrix(value: MatrixLike) -> np.ndarray:
    """Underlying complex array of a matrix or density matrix."""
    if isinstance(value, DensityMatrix):
        return value.matrix
    return np.asarray(value, dtype=np.complex128)


def _check_square(matrix: np.ndarray, dims: Dims) -> None:
    if matrix.ndim != 2 or matrix.shape != (dims.total, dims.total):
        raise DimensionMismatchError(
            f"Operator of shape {matrix.shape} does not match dims {dims} "
            f"(expected {dims.total}x{dims.total})"
        )


def _check_indices(indices: Iterable[int], dims: Dims) -> List[int]:
    checked = []
    for index in indices:
        dims.check_index(index)
        checked.append(int(index))
    if len(set(checked)) != len(checked):
        raise InvalidPartitionError(f"Repeated subsystem index in {checked}")
    return checked


def kron(a: MatrixLike, b: MatrixLike) -> ComplexMatrix:
    """Kronecker product a ⊗ b."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(operators: Sequence[MatrixLike]) -> ComplexMatrix:
    """Left-to-right Kronecker product of a nonempty sequence."""
    result = as_matrix(operators[0])
    for op in operators[1:]:
        result = np.kron(result, as_matrix(op))
    return result


def partial_trace(rho: MatrixLike, dims: Union[Dims, Sequence[int]],
                  keep: Iterable[int]) -> ComplexMatrix:
    """Trace out every subsystem not in `keep`.

    The kept subsystems stay in their original relative order.
    """
    dims = Dims.of(dims)
    matrix = as_matrix(rho)
    _check_square(matrix, dims)
    kept = sorted(_check_indices(keep, dims))
    if not kept:
        raise InvalidPartitionError("partial_trace needs at least one kept subsystem")

    n = len(dims)
    traced = [i for i in range(n) if i not in kept]
    d_keep = dims.dim_of(kept)
    d_trace = dims.dim_of(traced)

    tensor = matrix.reshape(tuple(dims) * 2)
    order = kept + traced + [n + i for i in kept] + [n + i for i in traced]
    tensor = tensor.transpose(order).reshape(d_keep, d_trace, d_keep, d_trace)
    return np.einsum("ijkj->ik", tensor)


def partial_transpose(rho: MatrixLike, dims: Union[Dims, Sequence[int]],
                      transposed: Iterable[int]) -> ComplexMatrix:
    """Transpose only the tensor factors listed in `transposed`."""
    dims = Dims.of(dims)
    matrix = as_matrix(rho)
    _check_square(matrix, dims)
    targets = _check_indices(transposed, dims)

    n = len(dims)
    axes = list(range(2 * n))
    for i in targets:
        axes[i], axes[n + i] = axes[n + i], axes[i]
    tensor = matrix.reshape(tuple(dims) * 2).transpose(axes)
    return tensor.reshape(dims.total, dims.total)


def is_hermitian(matrix: MatrixLike, tol: float = EPS_HERM) -> bool:
    m = as_matrix(matrix)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and \
        bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def hermitian_eigenvalues(matrix: MatrixLike) -> HermitianSpectrum:
    """Full real spectrum of a Hermitian matrix, descending."""
    m = as_matrix(matrix)
    if not is_hermitian(m):
        raise NonHermitianError(
            f"Matrix of shape {m.shape} is not Hermitian within {EPS_HERM:g}"
        )
    return HermitianSpectrum(np.linalg.eigvalsh((m + m.conj().T) / 2))


def trace_norm(matrix: MatrixLike) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(matrix).eigenvalues)))


def permute_subsystems(rho: MatrixLike, dims: Union[Dims, Sequence[int]],
                       perm: Sequence[int]) -> Tuple[ComplexMatrix, Dims]:
    """Reorder tensor factors: new factor k is old factor perm[k]."""
    dims = Dims.of(dims)
    matrix = as_matrix(rho)
    _check_square(matrix, dims)
    n = len(dims)
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        raise InvalidPartitionError(f"{perm} is not a permutation of 0..{n - 1}")

    tensor = matrix.reshape(tuple(dims) * 2)
    tensor = tensor.transpose(perm + [n + p for p in perm])
    new_dims = dims.subset(perm)
    return tensor.reshape(dims.total, dims.total), new_dims


def embed_operator(op: MatrixLike, targets: Sequence[int],
                   dims: Union[Dims, Sequence[int]]) -> ComplexMatrix:
    """Operator acting as `op` on `targets` (in the given order) and identity elsewhere."""
    dims = Dims.of(dims)
    op = as_matrix(op)
    targets = _check_indices(targets, dims)
    if not targets:
        raise InvalidPartitionError("Local operator needs at least one target")
    d_target = dims.dim_of(targets)
    if op.shape != (d_target, d_target):
        raise DimensionMismatchError(
            f"Operator of shape {op.shape} cannot act on subsystems {targets} "
            f"of total dimension {d_target}"
        )

    rest = [i for i in range(len(dims)) if i not in targets]
    order = targets + rest
    full = np.kron(op, np.eye(dims.dim_of(rest), dtype=np.complex128))
    if order == list(range(len(dims))):
        return full
    matrix, _ = permute_subsystems(full, dims.subset(order), list(np.argsort(order)))
    return matrix


def apply_local(rho: MatrixLike, op: MatrixLike, targets: Sequence[int],
                dims: Union[Dims, Sequence[int]]) -> ComplexMatrix:
    """U ρ U† with U = op on `targets` and identity elsewhere."""
    dims = Dims.of(dims)
    matrix = as_matrix(rho)
    _check_square(matrix, dims)
    u = embed_operator(op, targets, dims)
    return u @ matrix @ u.conj().T


def apply_kraus(rho: MatrixLike, kraus_ops: Sequence[MatrixLike], targets: Sequence[int],
                dims: Union[Dims, Sequence[int]]) -> ComplexMatrix:
    """Σ_k K_k ρ K_k† with every K_k embedded on `targets`."""
    dims = Dims.of(dims)
    matrix = as_matrix(rho)
    _check_square(matrix, dims)
    out = np.zeros_like(matrix)
    for op in kraus_ops:
        k = embed_operator(op, targets, dims)
        out += k @ matrix @ k.conj().T
    return out
