"""Numerical services: tensor algebra, states, measures, channels and protocols."""
