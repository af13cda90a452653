"""File-based witness repository.

Stores each witness as one JSON file named after its identifier, optionally
gzip-compressed. Writes go through a temporary file and an atomic rename.
"""

import gzip
import json
import shutil
from collections import Counter
from pathlib import Path
from threading import Lock
from typing import Any, Dict, List, Optional

import structlog

from ...domain.exceptions import RepositoryError
from ...domain.services.search import ResidualKind, Witness
from ...ports.repository import DuplicateWitnessError, WitnessRepository


class FileWitnessRepository(WitnessRepository):
    """File system implementation of WitnessRepository."""

    def __init__(self, base_path: str, compress: bool = False, overwrite: bool = True):
        """Initialize file-based repository.

        Args:
            base_path: Directory holding the witness files
            compress: Whether to compress files with gzip
            overwrite: Replace an existing witness with the same identifier
        """
        self.base_path = Path(base_path)
        self.compress = compress
        self.overwrite = overwrite
        self.extension = ".json.gz" if compress else ".json"
        self.logger = structlog.get_logger(self.__class__.__name__)
        self._lock = Lock()

        self.base_path.mkdir(parents=True, exist_ok=True)

    def _path(self, witness_id: str) -> Path:
        return self.base_path / f"{witness_id}{self.extension}"

    def _read_json(self, path: Path) -> Dict[str, Any]:
        if self.compress:
            with gzip.open(path, "rt", encoding="utf-8") as f:
                return json.load(f)
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)

    def _write_json(self, path: Path, data: Dict[str, Any]) -> None:
        temp_path = path.with_name(path.name + ".tmp")
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
        if self.compress:
            # mtime=0 keeps the archive bytes reproducible.
            with open(temp_path, "wb") as raw:
                with gzip.GzipFile(fileobj=raw, mode="wb", mtime=0) as f:
                    f.write(text.encode("utf-8"))
        else:
            with open(temp_path, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
        shutil.move(str(temp_path), str(path))

    def save(self, witness: Witness) -> str:
        witness_id = self.witness_id(witness)
        path = self._path(witness_id)
        with self._lock:
            if path.exists() and not self.overwrite:
                raise DuplicateWitnessError(f"Witness {witness_id} already exists")
            try:
                self._write_json(path, witness.to_dict())
            except OSError as e:
                self.logger.error("witness_save_failed", witness_id=witness_id, error=str(e))
                raise RepositoryError(f"Failed to save witness {witness_id}: {e}") from e
        self.logger.debug("witness_saved", witness_id=witness_id, path=str(path))
        return witness_id

    def save_batch(self, witnesses: List[Witness]) -> List[str]:
        saved = []
        errors = []
        for witness in witnesses:
            try:
                saved.append(self.save(witness))
            except DuplicateWitnessError:
                self.logger.warning("witness_duplicate_skipped", witness_id=self.witness_id(witness))
            except RepositoryError as e:
                errors.append(str(e))
        if errors and not saved:
            raise RepositoryError(f"Batch save failed: {'; '.join(errors)}")
        return saved

    def find_by_id(self, witness_id: str) -> Optional[Witness]:
        path = self._path(witness_id)
        if not path.exists():
            return None
        try:
            return Witness.from_dict(self._read_json(path))
        except (OSError, ValueError, KeyError) as e:
            raise RepositoryError(f"Failed to read witness {witness_id}: {e}") from e

    def _ids(self) -> List[str]:
        return sorted(p.name[: -len(self.extension)] for p in self.base_path.glob(f"*{self.extension}"))

    def find_all(self, residual_kind: Optional[ResidualKind] = None) -> List[Witness]:
        prefix = f"{residual_kind.value}_" if residual_kind else ""
        witnesses = []
        for witness_id in self._ids():
            if witness_id.startswith(prefix):
                witness = self.find_by_id(witness_id)
                if witness is not None:
                    witnesses.append(witness)
        return witnesses

    def exists(self, witness_id: str) -> bool:
        return self._path(witness_id).exists()

    def delete(self, witness_id: str) -> bool:
        path = self._path(witness_id)
        with self._lock:
            if not path.exists():
                return False
            path.unlink()
        self.logger.info("witness_deleted", witness_id=witness_id)
        return True

    def count(self) -> int:
        return len(self._ids())

    def get_statistics(self) -> Dict[str, Any]:
        ids = self._ids()
        by_kind = Counter(witness_id.split("_", 1)[0] for witness_id in ids)
        return {
            "total_witnesses": len(ids),
            "by_residual": dict(sorted(by_kind.items())),
            "storage": {
                "path": str(self.base_path),
                "compressed": self.compress,
            },
        }
