"""CLI commands package."""

from . import figure, protocol, search, table1, verify

__all__ = ['figure', 'protocol', 'search', 'table1', 'verify']
