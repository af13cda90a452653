"""Gnuplot script exporter: plots a sweep CSV written next to it."""

from typing import IO, Any, Dict, List, Optional

from ...domain.models import SweepResult
from ...ports.exporter import ExporterValidationError, SweepExporter

# Column numbers in the sweep CSV (1-based, as gnuplot counts).
_AXIS1, _AXIS2, _E_COM, _DELTA_E = 2, 3, 5, 7


class GnuplotExporter(SweepExporter):
    """Emits a script that draws gain and communicated entanglement.

    `metadata["data_file"]` names the CSV the script reads.
    """

    @property
    def name(self) -> str:
        return "gnuplot-exporter"

    @property
    def format(self) -> str:
        return "gp"

    def export(self, result: SweepResult, output: IO[str],
               metadata: Optional[Dict[str, Any]] = None) -> None:
        self.validate_output(output)
        metadata = metadata or {}
        data_file = metadata.get("data_file")
        if not data_file:
            raise ExporterValidationError("Gnuplot export needs metadata['data_file']")

        title = metadata.get("title", result.points[0].scenario if result.points else "sweep")
        names = result.grid.axis_names
        lines: List[str] = [
            f"# {title}",
            "set datafile separator ','",
            f"set title '{title}'",
            f"set xlabel '{names[0]}'",
        ]
        if len(names) == 1:
            lines += [
                "set ylabel 'entanglement'",
                f"plot '{data_file}' every ::1 using {_AXIS1}:{_DELTA_E} with lines title 'delta_e', \\",
                f"     '' every ::1 using {_AXIS1}:{_E_COM} with lines title 'e_com'",
            ]
        else:
            lines += [
                f"set ylabel '{names[1]}'",
                "set zlabel 'entanglement'",
                "set hidden3d",
                f"splot '{data_file}' every ::1 using {_AXIS1}:{_AXIS2}:{_DELTA_E} with points title 'delta_e', \\",
                f"      '' every ::1 using {_AXIS1}:{_AXIS2}:{_E_COM} with points title 'e_com'",
            ]
        lines.append("pause -1")
        output.write("\n".join(lines) + "\n")
        self.logger.debug("gnuplot_script_exported", data_file=data_file)
