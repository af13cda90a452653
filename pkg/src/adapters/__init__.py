"""Adapters implementing the export and storage ports."""
