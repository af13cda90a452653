"""Invariant checks for the entdist domain values.

Validators return lists of human-readable violations (empty when valid) so
callers can either raise or report them.
"""

from typing import TYPE_CHECKING, Dict, List, Sequence

import numpy as np

from .tolerances import (
    EPS_CLS,
    EPS_COMPLETENESS,
    EPS_HERM,
    EPS_NORM,
    EPS_PSD,
)

if TYPE_CHECKING:
    from .record import ProtocolRecord


class StateValidator:
    """Validates raw amplitude vectors and density matrices."""

    @classmethod
    def validate_amplitudes(cls, amplitudes: np.ndarray, total_dim: int) -> List[str]:
        """Check shape and unit norm of a pure-state vector.

        Args:
            amplitudes: Complex amplitude vector
            total_dim: Expected Hilbert-space dimension

        Returns:
            List of validation error messages (empty if valid)
        """
        errors = []

        if amplitudes.ndim != 1 or amplitudes.shape[0] != total_dim:
            errors.append(
                f"Amplitude vector has shape {amplitudes.shape}, expected ({total_dim},)"
            )
            return errors

        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > EPS_NORM:
            errors.append(f"State norm {norm:.12g} differs from 1")

        return errors

    @classmethod
    def validate_density_matrix(cls, matrix: np.ndarray, total_dim: int) -> List[str]:
        """Check shape, Hermiticity, unit trace and positivity.

        Args:
            matrix: Candidate density matrix
            total_dim: Expected Hilbert-space dimension

        Returns:
            List of validation error messages (empty if valid)
        """
        errors = []

        if matrix.shape != (total_dim, total_dim):
            errors.append(f"Matrix has shape {matrix.shape}, expected ({total_dim}, {total_dim})")
            return errors

        asymmetry = float(np.max(np.abs(matrix - matrix.conj().T)))
        if asymmetry > EPS_HERM:
            errors.append(f"Matrix is not Hermitian (deviation {asymmetry:.3g})")
            return errors

        trace = complex(np.trace(matrix))
        if abs(trace - 1.0) > EPS_NORM:
            errors.append(f"Trace {trace.real:.12g} differs from 1")

        smallest = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)[0])
        if smallest < -EPS_PSD:
            errors.append(f"Matrix has negative eigenvalue {smallest:.3g}")

        return errors


class ChannelValidator:
    """Validates Kraus operator lists."""

    @classmethod
    def validate_kraus(cls, kraus_ops: Sequence[np.ndarray]) -> List[str]:
        """Check that operators are square, equal-sized and complete.

        Args:
            kraus_ops: Kraus operators of a channel

        Returns:
            List of validation error messages (empty if valid)
        """
        errors = []

        if not kraus_ops:
            return ["Channel needs at least one Kraus operator"]

        dim = kraus_ops[0].shape[0]
        for k, op in enumerate(kraus_ops):
            if op.shape != (dim, dim):
                errors.append(f"Kraus operator {k} has shape {op.shape}, expected ({dim}, {dim})")
        if errors:
            return errors

        completeness = sum(op.conj().T @ op for op in kraus_ops)
        residual = float(np.max(np.abs(completeness - np.eye(dim))))
        if residual > EPS_COMPLETENESS:
            errors.append(f"Kraus operators are not complete (residual {residual:.3g})")

        return errors


class RecordValidator:
    """Validates protocol records against their classification invariants."""

    @classmethod
    def validate_record(cls, record: "ProtocolRecord") -> List[str]:
        """Check the gain identity and the classification rule.

        Args:
            record: Record to validate

        Returns:
            List of validation error messages (empty if valid)
        """
        from .record import Classification

        errors = []

        if abs(record.delta_e - (record.e_fin - record.e_in)) > 1e-12:
            errors.append("delta_e does not equal e_fin - e_in")

        if record.delta_e <= EPS_CLS:
            expected = Classification.NO_GAIN
        elif record.delta_e > record.e_com + EPS_CLS:
            expected = Classification.EXCESSIVE
        else:
            expected = Classification.NON_EXCESSIVE
        if record.classification != expected:
            errors.append(
                f"Classification {record.classification.value} should be {expected.value}"
            )

        for name in ("e_in", "e_com", "e_fin"):
            if getattr(record, name) < 0:
                errors.append(f"{name} is negative")

        return errors

    @classmethod
    def validate_batch(cls, records: Sequence["ProtocolRecord"]) -> Dict[int, List[str]]:
        """Validate a batch of records.

        Args:
            records: Records to validate

        Returns:
            Dictionary mapping record positions to validation errors
        """
        results = {}

        for index, record in enumerate(records):
            errors = cls.validate_record(record)
            if errors:
                results[index] = errors

        return results
