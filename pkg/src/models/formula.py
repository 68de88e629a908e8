"""Formula AST for GDLZ (and its GDL fragment) plus rule sets.

Core constructors follow the language grammar exactly; the extended
constructors (``Or``, ``Implies``, ``Iff``, ``Top``, ``Bottom``, ``Le``,
``Ge``, ``Ne``, ``Chain``) are accepted by the parser and removed by
:func:`src.logic.transform.desugar`.
"""

from dataclasses import dataclass
from typing import Iterator, Union

from pydantic import BaseModel, ConfigDict, Field

from .terms import NumList, NumTerm

PropArg = Union[str, int]


class Formula:
    """Base class for formulas."""

    __slots__ = ()

    def __str__(self) -> str:
        from src.logic.printer import print_formula

        return print_formula(self)

    def children(self) -> tuple["Formula", ...]:
        return ()


# Atoms


@dataclass(frozen=True, slots=True, repr=False)
class Prop(Formula):
    """Proposition ``name`` or ``name(arg, ...)``.

    Arguments are identifiers or integers so that ``turn(Player1)``,
    ``heap_1(5)`` and ``smaller(0,1)`` are all propositions.
    """

    name: str
    args: tuple[PropArg, ...] = ()

    @property
    def key(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"

    def __repr__(self) -> str:
        return f"Prop({self.key!r})"


@dataclass(frozen=True, slots=True)
class Initial(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Terminal(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Wins(Formula):
    agent: str


@dataclass(frozen=True, slots=True)
class Legal(Formula):
    agent: str
    action: str
    args: NumList = ()


@dataclass(frozen=True, slots=True)
class Does(Formula):
    agent: str
    action: str
    args: NumList = ()


@dataclass(frozen=True, slots=True)
class Comparison(Formula):
    left: NumTerm
    right: NumTerm

    symbol = ""


@dataclass(frozen=True, slots=True)
class Gt(Comparison):
    symbol = ">"


@dataclass(frozen=True, slots=True)
class Lt(Comparison):
    symbol = "<"


@dataclass(frozen=True, slots=True)
class Eq(Comparison):
    symbol = "="


@dataclass(frozen=True, slots=True)
class Vals(Formula):
    items: NumList = ()


# Connectives


@dataclass(frozen=True, slots=True)
class Not(Formula):
    operand: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.operand,)


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Next(Formula):
    operand: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.operand,)


# Extended syntax


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Le(Comparison):
    symbol = "<="


@dataclass(frozen=True, slots=True)
class Ge(Comparison):
    symbol = ">="


@dataclass(frozen=True, slots=True)
class Ne(Comparison):
    symbol = "!="


@dataclass(frozen=True, slots=True)
class Chain(Formula):
    """Chained comparison ``z0 op1 z1 op2 z2 ...`` with at least two operators."""

    terms: tuple[NumTerm, ...]
    ops: tuple[str, ...]


CORE_COMPARISONS: dict[str, type[Comparison]] = {cls.symbol: cls for cls in (Gt, Lt, Eq)}
COMPARISONS: dict[str, type[Comparison]] = {
    cls.symbol: cls for cls in (Gt, Lt, Eq, Le, Ge, Ne)
}
CONNECTIVES = (Not, And, Next, Or, Implies, Iff)


def is_atomic(formula: Formula) -> bool:
    """Atomic iff the root is not a connective."""
    return not isinstance(formula, CONNECTIVES)


def iter_formula(formula: Formula) -> Iterator[Formula]:
    """Pre-order walk over every node occurrence."""
    stack = [formula]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def formula_terms(formula: Formula) -> Iterator[NumTerm]:
    """Maximal numerical terms of every atom, left to right."""
    for node in iter_formula(formula):
        if isinstance(node, (Legal, Does)):
            yield from node.args
        elif isinstance(node, Vals):
            yield from node.items
        elif isinstance(node, Comparison):
            yield node.left
            yield node.right
        elif isinstance(node, Chain):
            yield from node.terms


class RuleSet(BaseModel):
    """Named, ordered set of rules (a game description Σ)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = Field(default="rules", description="Description name")
    rules: tuple[Formula, ...] = Field(default=(), description="Rules in file order")

    def replace(self, index: int, rule: Formula) -> "RuleSet":
        """Copy with the rule at ``index`` swapped out."""
        rules = list(self.rules)
        rules[index] = rule
        return RuleSet(name=self.name, rules=tuple(rules))
