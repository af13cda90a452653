"""Quantum state value types.

States are immutable: the underlying arrays are copied on construction and
marked read-only.
"""

from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np
import numpy.typing as npt

from ..exceptions import DimensionMismatchError, InvalidStateError
from .partition import Dims
from .tolerances import ZERO_CUTOFF
from .validation import StateValidator

ComplexMatrix = npt.NDArray[np.complex128]


def _frozen(array: Any, dtype: Any = np.complex128) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class HermitianSpectrum:
    """Real eigenvalues of a Hermitian matrix in descending order."""

    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        values = np.sort(np.asarray(self.eigenvalues, dtype=float))[::-1]
        object.__setattr__(self, "eigenvalues", _frozen(values, float))

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def min(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def max(self) -> float:
        return float(self.eigenvalues[0])

    def negative_part(self) -> float:
        """Sum of |λ| over eigenvalues below -ZERO_CUTOFF."""
        neg = self.eigenvalues[self.eigenvalues < -ZERO_CUTOFF]
        return float(np.sum(np.abs(neg)))


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector over a multipartite layout."""

    dims: Dims
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", Dims.of(self.dims))
        amplitudes = _frozen(self.amplitudes)
        errors = StateValidator.validate_amplitudes(amplitudes, self.dims.total)
        if errors:
            if amplitudes.ndim != 1 or amplitudes.shape[0] != self.dims.total:
                raise DimensionMismatchError(errors[0])
            raise InvalidStateError("; ".join(errors))
        object.__setattr__(self, "amplitudes", amplitudes)

    def overlap(self, other: "PureState") -> complex:
        """Inner product <self|other>."""
        if other.dims != self.dims:
            raise DimensionMismatchError(f"Cannot overlap {self.dims} with {other.dims}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def to_dict(self) -> Dict[str, Any]:
        """JSON-friendly representation {"dims", "re", "im"}."""
        return {
            "dims": list(self.dims.dims),
            "re": [float(x) for x in self.amplitudes.real],
            "im": [float(x) for x in self.amplitudes.imag],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PureState":
        amplitudes = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
        return cls(Dims.of(data["dims"]), amplitudes)

    def __repr__(self) -> str:
        return f"PureState(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator with its layout."""

    dims: Dims
    matrix: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", Dims.of(self.dims))
        matrix = _frozen(self.matrix)
        errors = StateValidator.validate_density_matrix(matrix, self.dims.total)
        if errors:
            if matrix.shape != (self.dims.total, self.dims.total):
                raise DimensionMismatchError(errors[0])
            raise InvalidStateError("; ".join(errors))
        object.__setattr__(self, "matrix", matrix)

    @property
    def purity(self) -> float:
        """tr(rho^2)."""
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def is_pure(self, tol: float = 1e-9) -> bool:
        return self.purity >= 1.0 - tol

    def allclose(self, other: "DensityMatrix", atol: float = 1e-12) -> bool:
        """Entrywise equality within atol."""
        return self.dims == other.dims and bool(np.allclose(self.matrix, other.matrix, atol=atol, rtol=0))

    def to_dict(self) -> Dict[str, Any]:
        """JSON-friendly representation with row-major flattened entries."""
        flat = self.matrix.reshape(-1)
        return {
            "dims": list(self.dims.dims),
            "re": [float(x) for x in flat.real],
            "im": [float(x) for x in flat.imag],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DensityMatrix":
        dims = Dims.of(data["dims"])
        flat = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
        return cls(dims, flat.reshape(dims.total, dims.total))

    def __repr__(self) -> str:
        return f"DensityMatrix(dims={self.dims}, purity={self.purity:.6g})"


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Squared Schmidt coefficients (eigenvalues of a reduced state), descending."""

    coefficients: Tuple[float, ...]

    def __post_init__(self) -> None:
        coefficients = tuple(sorted((float(c) for c in self.coefficients), reverse=True))
        object.__setattr__(self, "coefficients", coefficients)
        if not coefficients:
            raise InvalidStateError("Schmidt decomposition needs at least one coefficient")
        if abs(sum(coefficients) - 1.0) > 1e-9:
            raise InvalidStateError(f"Schmidt coefficients sum to {sum(coefficients):.12g}")

    @property
    def rank(self) -> int:
        return sum(1 for c in self.coefficients if c > ZERO_CUTOFF)
