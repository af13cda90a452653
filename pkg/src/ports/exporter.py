"""Exporter port interface.

Defines the contract for writing sweep results and protocol records in
formats consumed by analysis pipelines.
"""

from abc import ABC, abstractmethod
from typing import IO, Any, Dict, List, Optional, Sequence

import structlog

from ..domain.exceptions import ExportError
from ..domain.models import ProtocolRecord, SweepResult


class Exporter(ABC):
    """Port interface for result export."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """Initialize exporter with configuration.

        Args:
            config: Exporter-specific configuration
        """
        self.config = config or {}
        self.logger = structlog.get_logger(self.__class__.__name__)

    @property
    @abstractmethod
    def name(self) -> str:
        """Unique name for this exporter."""

    @property
    @abstractmethod
    def format(self) -> str:
        """Format this exporter produces (csv, json, gp)."""

    def validate_output(self, output: IO[str]) -> bool:
        """Validate that the output is writable.

        Raises:
            ExporterValidationError: If the stream cannot be written
        """
        try:
            if hasattr(output, "writable") and not output.writable():
                raise ExporterValidationError("Output stream is not writable")
            output.write("")
            return True
        except ExporterValidationError:
            raise
        except Exception as e:
            raise ExporterValidationError(f"Invalid output stream: {e}") from e

    def get_file_extension(self) -> str:
        """Recommended file extension (without dot)."""
        return self.format

    def get_mime_type(self) -> str:
        mime_types = {
            "csv": "text/csv",
            "json": "application/json",
            "gp": "text/x-gnuplot",
        }
        return mime_types.get(self.format, "application/octet-stream")


class SweepExporter(Exporter):
    """Exporter of whole parameter sweeps."""

    @abstractmethod
    def export(self, result: SweepResult, output: IO[str],
               metadata: Optional[Dict[str, Any]] = None) -> None:
        """Write a sweep result to the output stream.

        Args:
            result: Evaluated sweep
            output: Output stream to write to
            metadata: Optional metadata (e.g. data file name for scripts)

        Raises:
            ExportError: If export fails
        """


class TabularExporter(SweepExporter):
    """Base class for tabular sweep formats."""

    @abstractmethod
    def get_columns(self) -> List[str]:
        """Column names in output order."""


class RecordExporter(Exporter):
    """Exporter of individual protocol records."""

    @abstractmethod
    def export(self, records: Sequence[ProtocolRecord], output: IO[str],
               metadata: Optional[Dict[str, Any]] = None) -> None:
        """Write protocol records to the output stream.

        Raises:
            ExportError: If export fails
        """


class ExporterValidationError(ExportError):
    """Raised when export validation fails."""


class ExporterFormatError(ExportError):
    """Raised when a format-specific error occurs."""
