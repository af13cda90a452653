"""entdist command-line interface."""

from .main import main, cli

__all__ = ['main', 'cli']
