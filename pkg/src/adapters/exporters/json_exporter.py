"""JSON exporter for protocol records."""

import json
from typing import IO, Any, Dict, List, Optional, Sequence

from ...domain.models import ProtocolRecord
from ...ports.exporter import ExporterFormatError, RecordExporter


def record_to_dict(record: ProtocolRecord) -> Dict[str, Any]:
    """CSV fields as JSON values, plus the entanglement regime."""
    data = record.to_dict(encode_json=True)
    data["regime"] = record.regime.value
    return data


class RecordJSONExporter(RecordExporter):
    """Writes one record as an object, several as an array."""

    @property
    def name(self) -> str:
        return "record-json-exporter"

    @property
    def format(self) -> str:
        return "json"

    def export(self, records: Sequence[ProtocolRecord], output: IO[str],
               metadata: Optional[Dict[str, Any]] = None) -> None:
        self.validate_output(output)
        items: List[Dict[str, Any]] = [record_to_dict(r) for r in records]
        payload: Any = items[0] if len(items) == 1 else items
        if metadata:
            payload = {"metadata": metadata, "records": items}
        try:
            json.dump(payload, output, indent=self.config.get("indent", 2), sort_keys=True)
            output.write("\n")
        except (TypeError, ValueError) as e:
            raise ExporterFormatError(f"Failed to encode records as JSON: {e}") from e
        self.logger.debug("records_exported", format="json", records=len(items))
