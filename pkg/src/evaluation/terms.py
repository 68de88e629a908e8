"""Numerical term valuation."""

from typing import Mapping, Sequence

from src.models.st_model import State, STModel
from src.models.terms import Add, IntLit, Max, Min, NumTerm, Sub, Var
from src.utils.errors import EvaluationError


def eval_term_values(term: NumTerm, index: Mapping[str, int], values: Sequence[int]) -> int:
    """Value of ``term`` when variable ``x`` has value ``values[index[x]]``."""
    if isinstance(term, IntLit):
        return term.value
    if isinstance(term, Var):
        try:
            return values[index[term.name]]
        except KeyError:
            raise EvaluationError(f"undeclared variable {term.name}") from None
    left = eval_term_values(term.left, index, values)
    right = eval_term_values(term.right, index, values)
    if isinstance(term, Add):
        return left + right
    if isinstance(term, Sub):
        return left - right
    if isinstance(term, Min):
        return min(left, right)
    if isinstance(term, Max):
        return max(left, right)
    raise EvaluationError(f"unknown term {term!r}")


def var_index(model: STModel) -> dict[str, int]:
    return {name: i for i, name in enumerate(model.signature.vars)}


def eval_term(model: STModel, w: State, term: NumTerm) -> int:
    """Value of ``term`` at state ``w``.

    Raises:
        EvaluationError: the term uses a variable the signature does not declare.
    """
    return eval_term_values(term, var_index(model), model.num_val(w))
