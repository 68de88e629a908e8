"""Canonical concrete syntax for terms and formulas.

The output is the unique text that :func:`src.logic.parser.parse_formula`
maps back to the same tree: parentheses are emitted exactly where the
operator precedence would otherwise regroup a subtree.
"""

from src.models.formula import (
    And,
    Bottom,
    Chain,
    Comparison,
    Does,
    Formula,
    Iff,
    Implies,
    Initial,
    Legal,
    Next,
    Not,
    Or,
    Prop,
    Terminal,
    Top,
    Vals,
    Wins,
)
from src.models.terms import BinaryTerm, IntLit, NumTerm, Var

# Binding strength, loosest first.
IFF, IMPLIES, OR, AND, NOT, ATOM = range(1, 7)


def print_term(term: NumTerm) -> str:
    if isinstance(term, IntLit):
        return str(term.value)
    if isinstance(term, Var):
        return term.name
    if isinstance(term, BinaryTerm):
        return f"{term.keyword}({print_term(term.left)},{print_term(term.right)})"
    raise TypeError(f"not a numerical term: {term!r}")


def print_numlist(items: tuple[NumTerm, ...]) -> str:
    return ",".join(print_term(t) for t in items)


def _level(formula: Formula) -> int:
    if isinstance(formula, Iff):
        return IFF
    if isinstance(formula, Implies):
        return IMPLIES
    if isinstance(formula, Or):
        return OR
    if isinstance(formula, And):
        return AND
    if isinstance(formula, Not):
        return NOT
    return ATOM


def _wrap(formula: Formula, minimum: int) -> str:
    text = print_formula(formula)
    return f"({text})" if _level(formula) < minimum else text


def _action(action: str, agent: str, args: tuple[NumTerm, ...]) -> str:
    return f"{action}^{agent}({print_numlist(args)})"


def print_formula(formula: Formula) -> str:
    """Render ``formula`` in canonical concrete syntax."""
    if isinstance(formula, Prop):
        return formula.key
    if isinstance(formula, Initial):
        return "initial"
    if isinstance(formula, Terminal):
        return "terminal"
    if isinstance(formula, Top):
        return "true"
    if isinstance(formula, Bottom):
        return "false"
    if isinstance(formula, Wins):
        return f"wins({formula.agent})"
    if isinstance(formula, Legal):
        return f"legal({_action(formula.action, formula.agent, formula.args)})"
    if isinstance(formula, Does):
        return f"does({_action(formula.action, formula.agent, formula.args)})"
    if isinstance(formula, Vals):
        return f"vals({print_numlist(formula.items)})"
    if isinstance(formula, Comparison):
        return f"{print_term(formula.left)} {formula.symbol} {print_term(formula.right)}"
    if isinstance(formula, Chain):
        parts = [print_term(formula.terms[0])]
        for op, term in zip(formula.ops, formula.terms[1:]):
            parts.append(f"{op} {print_term(term)}")
        return " ".join(parts)
    if isinstance(formula, Next):
        return f"next({print_formula(formula.operand)})"
    if isinstance(formula, Not):
        return f"not {_wrap(formula.operand, NOT)}"
    if isinstance(formula, And):
        return f"{_wrap(formula.left, AND)} and {_wrap(formula.right, AND + 1)}"
    if isinstance(formula, Or):
        return f"{_wrap(formula.left, OR)} or {_wrap(formula.right, OR + 1)}"
    if isinstance(formula, Implies):
        return f"{_wrap(formula.left, IMPLIES + 1)} implies {_wrap(formula.right, IMPLIES)}"
    if isinstance(formula, Iff):
        return f"{_wrap(formula.left, IFF)} iff {_wrap(formula.right, IFF + 1)}"
    raise TypeError(f"not a formula: {formula!r}")
