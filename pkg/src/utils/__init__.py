"""Utility modules."""

from .config import settings
from .logging import configure_logging
from .errors import (
    GdlzError,
    GdlzSyntaxError,
    IntegerOverflowError,
    ConformanceError,
    UsageError,
    ModelError,
    PathError,
    IllegalActionError,
    TerminalReachedError,
    EvaluationError,
    TranslationError,
    IncompletePathError,
    BoundsViolationError,
    UnboundedFormulaError,
)

__all__ = [
    "settings",
    "configure_logging",
    "GdlzError",
    "GdlzSyntaxError",
    "IntegerOverflowError",
    "ConformanceError",
    "UsageError",
    "ModelError",
    "PathError",
    "IllegalActionError",
    "TerminalReachedError",
    "EvaluationError",
    "TranslationError",
    "IncompletePathError",
    "BoundsViolationError",
    "UnboundedFormulaError",
]
