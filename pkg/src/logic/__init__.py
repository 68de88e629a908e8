"""Formula core: parsing, printing, desugaring and conformance."""

from .parser import parse_formula, parse_term
from .printer import print_formula, print_term
from .transform import (
    big_and,
    big_or,
    count_atoms,
    desugar,
    formula_vars,
    iff,
    implies,
    is_core,
    is_gdl,
    node_count,
    subformulas,
)
from .conformance import check_conformance, check_rules_conformance, ensure_conformance
from .rules import dump_rules, load_rules, parse_rules, save_rules

__all__ = [
    "parse_formula",
    "parse_term",
    "print_formula",
    "print_term",
    "big_and",
    "big_or",
    "count_atoms",
    "desugar",
    "formula_vars",
    "iff",
    "implies",
    "is_core",
    "is_gdl",
    "node_count",
    "subformulas",
    "check_conformance",
    "check_rules_conformance",
    "ensure_conformance",
    "dump_rules",
    "load_rules",
    "parse_rules",
    "save_rules",
]
