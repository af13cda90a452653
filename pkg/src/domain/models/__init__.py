"""Domain models for entdist."""

from .channel import ChoiMatrix, KrausChannel
from .partition import Bipartition, Dims, Grouping
from .record import Classification, MeasureKind, ProtocolRecord, Regime, classify
from .state import DensityMatrix, HermitianSpectrum, PureState, SchmidtDecomposition
from .sweep import Axis, SweepGrid, SweepPoint, SweepResult

__all__ = [
    'Axis',
    'Bipartition',
    'ChoiMatrix',
    'Classification',
    'DensityMatrix',
    'Dims',
    'Grouping',
    'HermitianSpectrum',
    'KrausChannel',
    'MeasureKind',
    'ProtocolRecord',
    'PureState',
    'Regime',
    'SchmidtDecomposition',
    'SweepGrid',
    'SweepPoint',
    'SweepResult',
    'classify',
]
