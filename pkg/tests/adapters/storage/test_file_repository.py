"""Tests for the file-based witness repository."""

import gzip
import json

import numpy as np
import pytest

from src.adapters.storage import FileWitnessRepository
from src.domain.services.search import ResidualKind, Witness, trial_seed
from src.domain.services.states import haar_random_pure
from src.ports.repository import DuplicateWitnessError


def make_witness(trial, kind=ResidualKind.THEOREM1, seed=7):
    derived = trial_seed(seed, trial)
    return Witness(kind, trial, seed, derived, -0.01 * (trial + 1), haar_random_pure([3, 2, 2], derived))


@pytest.fixture
def repository(tmp_path):
    return FileWitnessRepository(str(tmp_path / "witnesses"))


class TestFileWitnessRepository:
    """Test cases for FileWitnessRepository."""

    def test_creates_directory(self, tmp_path):
        """Test the base directory is created on demand."""
        FileWitnessRepository(str(tmp_path / "a" / "b"))

        assert (tmp_path / "a" / "b").is_dir()

    def test_witness_id(self):
        """Test identifiers name the residual, d_A, seed and trial."""
        assert FileWitnessRepository.witness_id(make_witness(42)) == "theorem1_da3_seed7_00042"

    def test_save_and_find(self, repository):
        """Test a saved witness reads back unchanged."""
        witness = make_witness(3)
        witness_id = repository.save(witness)
        found = repository.find_by_id(witness_id)

        assert found.trial == 3
        assert found.residual == witness.residual
        assert np.allclose(found.state.amplitudes, witness.state.amplitudes)
        assert repository.exists(witness_id)

    def test_file_is_plain_json(self, repository):
        """Test the stored file is sorted JSON with LF endings."""
        witness_id = repository.save(make_witness(1))
        text = (repository.base_path / f"{witness_id}.json").read_text(encoding="utf-8")

        assert json.loads(text)["trial"] == 1
        assert "\r" not in text
        assert not list(repository.base_path.glob("*.tmp"))

    def test_compressed(self, tmp_path):
        """Test gzip storage reads back and is byte-for-byte reproducible."""
        first = FileWitnessRepository(str(tmp_path / "one"), compress=True)
        second = FileWitnessRepository(str(tmp_path / "two"), compress=True)
        witness_id = first.save(make_witness(5))
        second.save(make_witness(5))

        path = first.base_path / f"{witness_id}.json.gz"
        with gzip.open(path, "rt", encoding="utf-8") as f:
            assert json.load(f)["trial"] == 5
        assert path.read_bytes() == (second.base_path / path.name).read_bytes()
        assert first.find_by_id(witness_id).trial == 5

    def test_missing(self, repository):
        """Test unknown identifiers give None and False."""
        assert repository.find_by_id("theorem1_da3_seed7_99999") is None
        assert repository.delete("theorem1_da3_seed7_99999") is False

    def test_duplicate_without_overwrite(self, tmp_path):
        """Test overwrite=False refuses an existing identifier."""
        repository = FileWitnessRepository(str(tmp_path), overwrite=False)
        repository.save(make_witness(2))

        with pytest.raises(DuplicateWitnessError, match="already exists"):
            repository.save(make_witness(2))

    def test_batch_skips_duplicates(self, tmp_path):
        """Test save_batch skips duplicates instead of failing."""
        repository = FileWitnessRepository(str(tmp_path), overwrite=False)
        saved = repository.save_batch([make_witness(1), make_witness(1), make_witness(2)])

        assert saved == ["theorem1_da3_seed7_00001", "theorem1_da3_seed7_00002"]

    def test_find_all_by_kind(self, repository):
        """Test find_all filters by residual kind and sorts by identifier."""
        repository.save_batch([
            make_witness(4), make_witness(2), make_witness(3, ResidualKind.THEOREM2),
        ])

        assert [w.trial for w in repository.find_all()] == [2, 4, 3]
        assert [w.trial for w in repository.find_all(ResidualKind.THEOREM1)] == [2, 4]
        assert repository.find_all(ResidualKind.THEOREM2)[0].residual_kind is ResidualKind.THEOREM2

    def test_count_delete_and_statistics(self, repository):
        """Test counting, deletion and per-kind statistics."""
        ids = repository.save_batch([make_witness(1), make_witness(2, ResidualKind.THEOREM2)])

        assert repository.count() == 2
        assert repository.get_statistics()["by_residual"] == {"theorem1": 1, "theorem2": 1}
        assert repository.delete(ids[0]) is True
        assert repository.count() == 1
        assert repository.get_statistics()["storage"]["compressed"] is False
