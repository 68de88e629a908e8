"""Succinctness reports: atom counts of descriptions and their translations."""

from .succinctness import (
    BoundsContext,
    PathContext,
    SuccinctnessReport,
    count_description,
    grounded_size,
    growth_table,
    render_report,
    report_table,
    same_game,
    succinctness_report,
)

__all__ = [
    "BoundsContext",
    "PathContext",
    "SuccinctnessReport",
    "count_description",
    "grounded_size",
    "growth_table",
    "render_report",
    "report_table",
    "same_game",
    "succinctness_report",
]
