"""Flips of shift spaces: conjugacy invariants and constructions."""

__version__ = "0.1.0"
