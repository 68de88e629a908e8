"""Signature conformance: every name a formula uses must be declared."""

from typing import Iterable

from src.models.formula import Does, Formula, Legal, Prop, RuleSet, Vals, Wins, formula_terms, iter_formula
from src.models.game import GameSignature
from src.models.terms import term_vars
from src.utils.errors import ConformanceError


def check_conformance(formula: Formula, signature: GameSignature) -> list[str]:
    """Problems found in ``formula`` against ``signature``; empty iff it conforms."""
    problems: dict[str, None] = {}

    def report(message: str) -> None:
        problems.setdefault(message, None)

    agents = set(signature.agents)
    for node in iter_formula(formula):
        if isinstance(node, Prop):
            if node.key not in signature.props:
                report(f"undeclared proposition {node.key}")
        elif isinstance(node, Wins):
            if node.agent not in agents:
                report(f"undeclared agent {node.agent}")
        elif isinstance(node, (Legal, Does)):
            if node.agent not in agents:
                report(f"undeclared agent {node.agent}")
                continue
            schema = signature.action_schema(node.agent, node.action)
            if schema is None:
                report(f"undeclared action {node.action} for agent {node.agent}")
            elif schema.arity is not None and schema.arity != len(node.args):
                report(
                    f"action {node.action}^{node.agent} takes {schema.arity} "
                    f"parameters, got {len(node.args)}"
                )
        elif isinstance(node, Vals):
            if len(node.items) != len(signature.vars):
                report(
                    f"vals has {len(node.items)} items but the game has "
                    f"{len(signature.vars)} variables"
                )
    declared = set(signature.vars)
    for term in formula_terms(formula):
        for name in term_vars(term):
            if name not in declared:
                report(f"undeclared variable {name}")
    return list(problems)


def ensure_conformance(formula: Formula, signature: GameSignature) -> None:
    problems = check_conformance(formula, signature)
    if problems:
        raise ConformanceError(problems)


def check_rules_conformance(rules: RuleSet | Iterable[Formula], signature: GameSignature) -> list[str]:
    """Conformance problems of every rule, prefixed with the 1-based rule index."""
    formulas = rules.rules if isinstance(rules, RuleSet) else tuple(rules)
    return [
        f"rule {index}: {problem}"
        for index, rule in enumerate(formulas, start=1)
        for problem in check_conformance(rule, signature)
    ]
