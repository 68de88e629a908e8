"""Structural operations on formulas: desugaring, subformulas, counting and
builders for generated descriptions.

Walks are iterative so that long connective chains read from rule files do
not run into the interpreter recursion limit.
"""

from typing import Callable, Iterable

from src.models.formula import (
    COMPARISONS,
    CORE_COMPARISONS,
    And,
    Bottom,
    Chain,
    Comparison,
    Does,
    Eq,
    Formula,
    Ge,
    Gt,
    Iff,
    Implies,
    Initial,
    Le,
    Legal,
    Lt,
    Ne,
    Next,
    Not,
    Or,
    Prop,
    Terminal,
    Top,
    Vals,
    Wins,
    formula_terms,
    is_atomic,
    iter_formula,
)
from src.models.terms import term_vars

CORE_ATOMS = (Prop, Initial, Terminal, Wins, Legal, Does, Vals, Gt, Lt, Eq)
CORE_CONNECTIVES = (Not, And, Next)

Rewrite = Callable[[Formula, tuple[Formula, ...]], Formula]


def rebuild(formula: Formula, rewrite: Rewrite) -> Formula:
    """Post-order rebuild: ``rewrite(node, new_children)`` is called once per
    node occurrence, children first."""
    results: list[Formula] = []
    stack: list[tuple[Formula, bool]] = [(formula, False)]
    while stack:
        node, expanded = stack.pop()
        children = node.children()
        if expanded:
            new_children = tuple(results[len(results) - len(children) :]) if children else ()
            if children:
                del results[len(results) - len(children) :]
            results.append(rewrite(node, new_children))
            continue
        stack.append((node, True))
        for child in reversed(children):
            stack.append((child, False))
    return results[0]


def with_children(node: Formula, children: tuple[Formula, ...]) -> Formula:
    """Same connective over new children; atoms are returned unchanged."""
    if not children:
        return node
    if all(new is old for new, old in zip(children, node.children())):
        return node
    if isinstance(node, (Not, Next)):
        return type(node)(children[0])
    return type(node)(children[0], children[1])


# Builders


def big_and(formulas: Iterable[Formula]) -> Formula:
    """Balanced conjunction; ``true`` for no conjuncts."""
    return _balanced(list(formulas), And, Top())


def big_or(formulas: Iterable[Formula]) -> Formula:
    """Balanced disjunction; ``false`` for no disjuncts."""
    return _balanced(list(formulas), Or, Bottom())


def _balanced(items: list[Formula], cls: type, empty: Formula) -> Formula:
    if not items:
        return empty
    while len(items) > 1:
        paired = [cls(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def implies(premise: Formula, conclusion: Formula) -> Formula:
    return Implies(premise, conclusion)


def iff(left: Formula, right: Formula) -> Formula:
    return Iff(left, right)


def core_or(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def core_implies(premise: Formula, conclusion: Formula) -> Formula:
    return Not(And(premise, Not(conclusion)))


def core_top() -> Formula:
    return Not(core_bottom())


def core_bottom() -> Formula:
    return And(Initial(), Not(Initial()))


# Desugaring


def _desugar_comparison(node: Comparison) -> Formula:
    z1, z2 = node.left, node.right
    if isinstance(node, Le):
        return core_or(Lt(z1, z2), Eq(z1, z2))
    if isinstance(node, Ge):
        return core_or(Gt(z1, z2), Eq(z1, z2))
    if isinstance(node, Ne):
        return core_or(Gt(z1, z2), Lt(z1, z2))
    return node


def _desugar_node(node: Formula, children: tuple[Formula, ...]) -> Formula:
    if isinstance(node, Or):
        return core_or(*children)
    if isinstance(node, Implies):
        return core_implies(*children)
    if isinstance(node, Iff):
        left, right = children
        return And(core_implies(left, right), core_implies(right, left))
    if isinstance(node, Top):
        return core_top()
    if isinstance(node, Bottom):
        return core_bottom()
    if isinstance(node, Comparison):
        return _desugar_comparison(node)
    if isinstance(node, Chain):
        pairs = [
            _desugar_comparison(
                COMPARISONS[op](node.terms[i], node.terms[i + 1])
            )
            for i, op in enumerate(node.ops)
        ]
        return _balanced(pairs, And, core_top())
    return with_children(node, children)


def desugar(formula: Formula) -> Formula:
    """Rewrite into the core language: connectives not/and/next and the
    comparisons ``<``, ``>``, ``=``."""
    if is_core(formula):
        return formula
    return rebuild(formula, _desugar_node)


# Queries


def is_core(formula: Formula) -> bool:
    for node in iter_formula(formula):
        if isinstance(node, CORE_CONNECTIVES):
            continue
        if isinstance(node, Comparison):
            if type(node) not in CORE_COMPARISONS.values():
                return False
            continue
        if not isinstance(node, CORE_ATOMS):
            return False
    return True


def is_gdl(formula: Formula) -> bool:
    """Core formula without numerical atoms or parameterised actions."""
    if not is_core(formula):
        return False
    for node in iter_formula(formula):
        if isinstance(node, (Vals, Comparison)):
            return False
        if isinstance(node, (Legal, Does)) and node.args:
            return False
    return True


def subformulas(formula: Formula) -> set[Formula]:
    """Closure under not/next operands and both conjuncts, deduplicated."""
    return set(iter_formula(formula))


def ordered_subformulas(formula: Formula) -> list[Formula]:
    """Distinct subformulas, every child before its parent."""
    seen: set[int] = set()
    order: list[Formula] = []
    stack: list[tuple[Formula, bool]] = [(formula, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in seen:
            continue
        if expanded:
            seen.add(id(node))
            order.append(node)
            continue
        stack.append((node, True))
        for child in reversed(node.children()):
            if id(child) not in seen:
                stack.append((child, False))
    return order


def count_atoms(formula: Formula) -> int:
    """Atomic occurrences, counted with multiplicity."""
    return sum(1 for node in iter_formula(formula) if is_atomic(node))


def node_count(formula: Formula) -> int:
    return sum(1 for _ in iter_formula(formula))


def formula_vars(formula: Formula) -> list[str]:
    """Distinct variable names in first-occurrence order."""
    names: dict[str, None] = {}
    for term in formula_terms(formula):
        for name in term_vars(term):
            names.setdefault(name, None)
    return list(names)


def atoms(formula: Formula) -> list[Formula]:
    return [node for node in iter_formula(formula) if is_atomic(node)]
