"""Repository port interface.

Defines the contract for persisting violation witnesses, independent of the
storage implementation.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from ..domain.exceptions import RepositoryError
from ..domain.services.search import ResidualKind, Witness


class WitnessRepository(ABC):
    """Port interface for witness persistence."""

    @staticmethod
    def witness_id(witness: Witness) -> str:
        """Stable identifier: residual kind, d_A, seed and trial index."""
        d_a = witness.state.dims[0]
        return f"{witness.residual_kind.value}_da{d_a}_seed{witness.seed}_{witness.trial:05d}"

    @abstractmethod
    def save(self, witness: Witness) -> str:
        """Save a witness.

        Returns:
            Identifier of the stored witness

        Raises:
            RepositoryError: If the save fails
        """

    @abstractmethod
    def save_batch(self, witnesses: List[Witness]) -> List[str]:
        """Save several witnesses; returns their identifiers."""

    @abstractmethod
    def find_by_id(self, witness_id: str) -> Optional[Witness]:
        """Witness with this identifier, or None."""

    @abstractmethod
    def find_all(self, residual_kind: Optional[ResidualKind] = None) -> List[Witness]:
        """All stored witnesses, optionally of one residual kind, ordered by identifier."""

    @abstractmethod
    def exists(self, witness_id: str) -> bool:
        """Whether a witness with this identifier is stored."""

    @abstractmethod
    def delete(self, witness_id: str) -> bool:
        """Delete a witness; False if it was not stored."""

    @abstractmethod
    def count(self) -> int:
        """Number of stored witnesses."""

    @abstractmethod
    def get_statistics(self) -> Dict[str, Any]:
        """Counts per residual kind and storage details."""


class DuplicateWitnessError(RepositoryError):
    """Raised when a witness with the same identifier already exists."""
