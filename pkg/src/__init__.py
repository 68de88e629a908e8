"""GDLZ: Game Description Logic with Integers."""

__version__ = "0.1.0"
