"""Test package for entdist."""
