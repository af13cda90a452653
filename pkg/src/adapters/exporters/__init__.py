"""Exporter adapters for entdist."""

from .csv_exporter import SweepCSVExporter
from .gnuplot_exporter import GnuplotExporter
from .json_exporter import RecordJSONExporter, record_to_dict

__all__ = ['GnuplotExporter', 'RecordJSONExporter', 'SweepCSVExporter', 'record_to_dict']
