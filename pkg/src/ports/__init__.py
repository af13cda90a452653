"""Port interfaces for entdist."""

from .exporter import Exporter, RecordExporter, SweepExporter, TabularExporter
from .repository import WitnessRepository

__all__ = [
    'Exporter',
    'RecordExporter',
    'SweepExporter',
    'TabularExporter',
    'WitnessRepository',
]
