"""Decide whether a presentation defines a skew polynomial algebra with a PBW basis."""

__version__ = "0.1.0"
