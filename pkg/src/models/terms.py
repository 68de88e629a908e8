"""Numerical term AST.

Terms are immutable, hashable and compare structurally. ``str(term)`` gives
the canonical concrete syntax.
"""

from dataclasses import dataclass
from typing import Iterator


class NumTerm:
    """Base class for numerical terms."""

    __slots__ = ()

    def __str__(self) -> str:
        from src.logic.printer import print_term

        return print_term(self)


@dataclass(frozen=True, slots=True, repr=False)
class IntLit(NumTerm):
    value: int

    def __repr__(self) -> str:
        return f"IntLit({self.value})"


@dataclass(frozen=True, slots=True, repr=False)
class Var(NumTerm):
    name: str

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True, slots=True)
class BinaryTerm(NumTerm):
    """Binary term constructor; subclasses name the operation."""

    left: NumTerm
    right: NumTerm

    keyword = ""


@dataclass(frozen=True, slots=True)
class Add(BinaryTerm):
    keyword = "add"


@dataclass(frozen=True, slots=True)
class Sub(BinaryTerm):
    keyword = "sub"


@dataclass(frozen=True, slots=True)
class Min(BinaryTerm):
    keyword = "min"


@dataclass(frozen=True, slots=True)
class Max(BinaryTerm):
    keyword = "max"


TERM_CONSTRUCTORS: dict[str, type[BinaryTerm]] = {
    cls.keyword: cls for cls in (Add, Sub, Min, Max)
}

NumList = tuple[NumTerm, ...]


def iter_term(term: NumTerm) -> Iterator[NumTerm]:
    """Pre-order walk over a term."""
    stack = [term]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, BinaryTerm):
            stack.append(node.right)
            stack.append(node.left)


def term_vars(term: NumTerm) -> list[str]:
    """Variable names in left-to-right order, with repetitions."""
    return [node.name for node in iter_term(term) if isinstance(node, Var)]


def is_ground(term: NumTerm) -> bool:
    return not any(isinstance(node, Var) for node in iter_term(term))
