"""Exceptions raised by the entdist domain."""

from typing import Optional


class EntDistError(Exception):
    """Base class for all entdist errors."""

    def __init__(self, message: str, error_type: Optional[str] = None):
        super().__init__(message)
        self.error_type = error_type


class DimensionMismatchError(EntDistError):
    """Raised when operand shapes disagree with the declared subsystem layout."""

    def __init__(self, message: str = "Dimension mismatch"):
        super().__init__(message, "dimension")


class InvalidPartitionError(EntDistError):
    """Raised for bad subsystem indices, cuts, groupings or permutations."""

    def __init__(self, message: str = "Invalid partition"):
        super().__init__(message, "partition")


class NonHermitianError(EntDistError):
    """Raised when a Hermitian operator was required."""

    def __init__(self, message: str = "Operator is not Hermitian"):
        super().__init__(message, "hermiticity")


class ParameterRangeError(EntDistError):
    """Raised when a model parameter lies outside its allowed interval."""

    def __init__(self, message: str = "Parameter out of range"):
        super().__init__(message, "parameter")


class InvalidStateError(EntDistError):
    """Raised when a vector or matrix is not a valid quantum state."""

    def __init__(self, message: str = "Invalid quantum state"):
        super().__init__(message, "state")


class InvalidChannelError(EntDistError):
    """Raised for malformed Kraus channels or unsupported channel requests."""

    def __init__(self, message: str = "Invalid channel"):
        super().__init__(message, "channel")


class MixedStateError(EntDistError):
    """Raised when an entropy-of-cut measure is requested on a mixed state."""

    def __init__(self, message: str = "Entropy measures require a pure state"):
        super().__init__(message, "mixed_state")


class UnknownScenarioError(EntDistError):
    """Raised when a sweep or CLI names a scenario that does not exist."""

    def __init__(self, message: str = "Unknown scenario"):
        super().__init__(message, "scenario")


class GridMismatchError(EntDistError):
    """Raised when sweep axes do not match the scenario parameters."""

    def __init__(self, message: str = "Sweep grid does not match scenario"):
        super().__init__(message, "grid")


class ExportError(EntDistError):
    """Raised when results cannot be written."""

    def __init__(self, message: str = "Export failed"):
        super().__init__(message, "export")


class RepositoryError(EntDistError):
    """Raised when witness storage fails."""

    def __init__(self, message: str = "Repository operation failed"):
        super().__init__(message, "repository")
