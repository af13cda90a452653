"""CSV exporter for parameter sweeps.

Writes one row per grid point with the header
scenario,axis1,axis2,e_in,e_com,e_fin,delta_e,classification.
"""

import csv
from typing import IO, Any, Dict, Iterator, List, Optional

from ...domain.models import SweepResult
from ...domain.models.sweep import SWEEP_CSV_HEADER, SweepPoint
from ...ports.exporter import ExporterFormatError, TabularExporter


class SweepCSVExporter(TabularExporter):
    """Comma-separated sweep export with LF line endings."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """Initialize CSV exporter.

        Args:
            config: Exporter configuration including:
                - include_headers: Include header row (default: True)
                - flush_every: Flush the stream every N rows (default: 1000)
        """
        super().__init__(config)
        self.include_headers = self.config.get("include_headers", True)
        self.flush_every = self.config.get("flush_every", 1000)

    @property
    def name(self) -> str:
        return "sweep-csv-exporter"

    @property
    def format(self) -> str:
        return "csv"

    def get_columns(self) -> List[str]:
        return list(SWEEP_CSV_HEADER)

    def export(self, result: SweepResult, output: IO[str],
               metadata: Optional[Dict[str, Any]] = None) -> None:
        """Export every grid point of `result` in grid order."""
        self.export_streaming(iter(result), output)

    def export_streaming(self, points: Iterator[SweepPoint], output: IO[str]) -> int:
        """Write points as they arrive; returns the number of rows."""
        self.validate_output(output)

        try:
            writer = csv.writer(output, lineterminator="\n")
            if self.include_headers:
                writer.writerow(self.get_columns())

            count = 0
            for point in points:
                writer.writerow(point.to_csv_row())
                count += 1
                if count % self.flush_every == 0:
                    output.flush()

            self.logger.info("sweep_exported", format="csv", rows=count)
            return count

        except (csv.Error, OSError) as e:
            self.logger.error("sweep_export_failed", format="csv", error=str(e))
            raise ExporterFormatError(f"Failed to export sweep to CSV: {e}") from e
