"""Witt vectors over finite fields and their characteristic-one analogue."""

__version__ = "0.1.0"
