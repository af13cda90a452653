"""Storage adapters for entdist."""

from .file_repository import FileWitnessRepository

__all__ = ['FileWitnessRepository']
