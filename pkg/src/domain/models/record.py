"""Protocol records: the quantities that classify one distribution run."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List

from dataclasses_json import dataclass_json

from .tolerances import EPS_CLS, ZERO_CUTOFF


class MeasureKind(Enum):
    """Entanglement quantifier used for a record."""

    NEGATIVITY = "Negativity"
    LOG_NEGATIVITY = "LogNegativity"
    VON_NEUMANN_ENTROPY_OF_CUT = "VonNeumannEntropyOfCut"
    LINEAR_ENTROPY_OF_CUT = "LinearEntropyOfCut"

    @property
    def requires_pure_state(self) -> bool:
        return self in (MeasureKind.VON_NEUMANN_ENTROPY_OF_CUT, MeasureKind.LINEAR_ENTROPY_OF_CUT)

    @classmethod
    def parse(cls, text: str) -> "MeasureKind":
        aliases = {
            "negativity": cls.NEGATIVITY,
            "log_negativity": cls.LOG_NEGATIVITY,
            "lognegativity": cls.LOG_NEGATIVITY,
            "von_neumann": cls.VON_NEUMANN_ENTROPY_OF_CUT,
            "vonneumannentropyofcut": cls.VON_NEUMANN_ENTROPY_OF_CUT,
            "linear_entropy": cls.LINEAR_ENTROPY_OF_CUT,
            "linearentropyofcut": cls.LINEAR_ENTROPY_OF_CUT,
        }
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise ValueError(f"Unknown measure: {text}") from None


class Classification(Enum):
    """Excessive / non-excessive taxonomy of a protocol."""

    EXCESSIVE = "Excessive"
    NON_EXCESSIVE = "NonExcessive"
    NO_GAIN = "NoGain"


class Regime(Enum):
    """Which of the initial and communicated entanglements vanish."""

    NONE = "E_in=0,E_com=0"
    COMMUNICATED_ONLY = "E_in=0,E_com>0"
    INITIAL_ONLY = "E_in>0,E_com=0"
    BOTH = "E_in>0,E_com>0"


def classify(delta_e: float, e_com: float) -> Classification:
    """Classify a gain against the communicated entanglement.

    NoGain is decided first; a gain is excessive only when it beats the
    communicated entanglement by more than EPS_CLS.
    """
    if delta_e <= EPS_CLS:
        return Classification.NO_GAIN
    if delta_e > e_com + EPS_CLS:
        return Classification.EXCESSIVE
    return Classification.NON_EXCESSIVE


CSV_FIELDS: List[str] = ["measure", "e_in", "e_com", "e_fin", "delta_e", "classification"]


def format_float(value: float) -> str:
    """Nine significant digits, no negative zero."""
    if value == 0:
        value = 0.0
    return format(value, ".9g")


@dataclass_json
@dataclass(frozen=True)
class ProtocolRecord:
    """E_in = E_AC:B, E_com = E_AB:C, E_fin = E_A:CB and the derived gain."""

    e_in: float
    e_com: float
    e_fin: float
    delta_e: float
    measure: MeasureKind
    classification: Classification

    @classmethod
    def from_values(cls, e_in: float, e_com: float, e_fin: float,
                    measure: MeasureKind) -> "ProtocolRecord":
        e_in, e_com, e_fin = float(e_in), float(e_com), float(e_fin)
        delta_e = e_fin - e_in
        return cls(e_in, e_com, e_fin, delta_e, measure, classify(delta_e, e_com))

    @property
    def is_excessive(self) -> bool:
        return self.classification is Classification.EXCESSIVE

    @property
    def excess(self) -> float:
        """delta_e - e_com; positive for excessive protocols."""
        return self.delta_e - self.e_com

    @property
    def regime(self) -> Regime:
        initial = self.e_in > ZERO_CUTOFF
        communicated = self.e_com > ZERO_CUTOFF
        if initial and communicated:
            return Regime.BOTH
        if initial:
            return Regime.INITIAL_ONLY
        if communicated:
            return Regime.COMMUNICATED_ONLY
        return Regime.NONE

    def swapped(self) -> "ProtocolRecord":
        """Record of the same state with B and C exchanged."""
        return ProtocolRecord.from_values(self.e_com, self.e_in, self.e_fin, self.measure)

    def to_csv_row(self) -> List[str]:
        """Row in the order measure,e_in,e_com,e_fin,delta_e,classification."""
        return [
            self.measure.value,
            format_float(self.e_in),
            format_float(self.e_com),
            format_float(self.e_fin),
            format_float(self.delta_e),
            self.classification.value,
        ]

    def summary(self) -> Dict[str, Any]:
        """CSV fields plus the entanglement regime."""
        row = dict(zip(CSV_FIELDS, self.to_csv_row()))
        row["regime"] = self.regime.value
        return row
