"""Auslander-Reiten computations and mutation of Auslander generators over prime fields."""

__version__ = "0.1.0"
