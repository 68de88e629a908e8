"""Term valuation, satisfaction along paths and global truth."""

from .terms import eval_term
from .checker import (
    EvalContext,
    PathEvaluator,
    Verdict,
    check_does_functional,
    check_does_legal,
    does_atom,
    first_failing_stage,
    holds,
    holds_globally_on_path,
    is_globally_true,
    is_model_of,
    legal_atom,
    naive_holds,
)

__all__ = [
    "eval_term",
    "EvalContext",
    "PathEvaluator",
    "Verdict",
    "check_does_functional",
    "check_does_legal",
    "does_atom",
    "first_failing_stage",
    "holds",
    "holds_globally_on_path",
    "is_globally_true",
    "is_model_of",
    "legal_atom",
    "naive_holds",
]
