"""Concrete-syntax parser for GDLZ formulas, built with pyparsing.

Precedence, tightest first: ``not``, ``and``, ``or``, ``implies`` (right
associative), ``iff``. Comparisons, ``next(...)`` and the keyword atoms bind
tighter than every connective.
"""

from functools import lru_cache

import pyparsing as pp

from src.models.formula import (
    COMPARISONS,
    And,
    Bottom,
    Chain,
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
from src.models.terms import TERM_CONSTRUCTORS, IntLit, NumTerm, Var
from src.utils.errors import GdlzSyntaxError, IntegerOverflowError

pp.ParserElement.enable_packrat()

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

RESERVED = frozenset(
    {
        "initial", "terminal", "wins", "legal", "does", "not", "and", "or",
        "implies", "iff", "next", "vals", "true", "false", "add", "sub", "min", "max",
    }
)


def _to_int(s: str, loc: int, tokens: pp.ParseResults) -> int:
    value = int(tokens[0])
    if not INT64_MIN <= value <= INT64_MAX:
        raise IntegerOverflowError(
            f"integer literal {tokens[0]} does not fit in 64 bits",
            line=pp.lineno(loc, s),
            column=pp.col(loc, s),
            text=s,
        )
    return value


def _fold_left(cls: type, operands: list[Formula]) -> Formula:
    result = operands[0]
    for operand in operands[1:]:
        result = cls(result, operand)
    return result


def _fold_right(cls: type, operands: list[Formula]) -> Formula:
    result = operands[-1]
    for operand in reversed(operands[:-1]):
        result = cls(operand, result)
    return result


def _binary(cls: type, right_assoc: bool = False):
    def action(tokens: pp.ParseResults) -> Formula:
        operands = list(tokens[0][0::2])
        return _fold_right(cls, operands) if right_assoc else _fold_left(cls, operands)

    return action


def _negation(tokens: pp.ParseResults) -> Formula:
    items = list(tokens[0])
    result = items[-1]
    for _ in items[:-1]:
        result = Not(result)
    return result


def _comparison(tokens: pp.ParseResults) -> Formula:
    items = list(tokens[0])
    terms = tuple(items[0::2])
    ops = tuple(items[1::2])
    if len(ops) == 1:
        return COMPARISONS[ops[0]](terms[0], terms[1])
    return Chain(terms, ops)


@lru_cache(maxsize=1)
def _grammar() -> tuple[pp.ParserElement, pp.ParserElement]:
    LPAR, RPAR, COMMA, CARET = map(pp.Suppress, "(),^")

    ident = pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*").set_name("identifier")
    ident = ident.copy().add_condition(lambda t: t[0] not in RESERVED)
    integer = pp.Regex(r"-?\d+").set_name("integer").set_parse_action(_to_int)

    term = pp.Forward().set_name("term")
    term_op = pp.MatchFirst(pp.Keyword(k) for k in ("add", "sub", "min", "max"))
    compound = (term_op + LPAR + term + COMMA + term + RPAR).set_parse_action(
        lambda t: TERM_CONSTRUCTORS[t[0]](t[1], t[2])
    )
    term <<= (
        integer.copy().add_parse_action(lambda t: IntLit(t[0]))
        | compound
        | ident.copy().add_parse_action(lambda t: Var(t[0]))
    )
    numlist = pp.Group(pp.Optional(pp.DelimitedList(term)))

    formula = pp.Forward().set_name("formula")

    action = ident + CARET + ident + pp.Optional(LPAR + numlist + RPAR)

    def _action_atom(cls: type):
        return lambda t: cls(t[2], t[1], tuple(t[3]) if len(t) > 3 else ())

    legal = (pp.Keyword("legal") + LPAR + action + RPAR).set_parse_action(_action_atom(Legal))
    does = (pp.Keyword("does") + LPAR + action + RPAR).set_parse_action(_action_atom(Does))
    wins = (pp.Keyword("wins") + LPAR + ident + RPAR).set_parse_action(lambda t: Wins(t[1]))
    vals = (pp.Keyword("vals") + LPAR + numlist + RPAR).set_parse_action(
        lambda t: Vals(tuple(t[1]))
    )
    nxt = (pp.Keyword("next") + LPAR + formula + RPAR).set_parse_action(lambda t: Next(t[1]))
    keyword_atoms = (
        pp.Keyword("initial").set_parse_action(lambda: Initial())
        | pp.Keyword("terminal").set_parse_action(lambda: Terminal())
        | pp.Keyword("true").set_parse_action(lambda: Top())
        | pp.Keyword("false").set_parse_action(lambda: Bottom())
    )

    cmp_op = pp.one_of("<= >= != < > =")
    comparison = pp.Group(term + pp.OneOrMore(cmp_op + term)).set_parse_action(_comparison)

    prop_arg = integer | ident
    prop = (ident + pp.Optional(LPAR + pp.DelimitedList(prop_arg) + RPAR)).set_parse_action(
        lambda t: Prop(t[0], tuple(t[1:]))
    )

    atom = (keyword_atoms | wins | legal | does | vals | nxt | comparison | prop).set_name("atom")

    formula <<= pp.infix_notation(
        atom,
        [
            (pp.Keyword("not"), 1, pp.OpAssoc.RIGHT, _negation),
            (pp.Keyword("and"), 2, pp.OpAssoc.LEFT, _binary(And)),
            (pp.Keyword("or"), 2, pp.OpAssoc.LEFT, _binary(Or)),
            (pp.Keyword("implies"), 2, pp.OpAssoc.RIGHT, _binary(Implies, right_assoc=True)),
            (pp.Keyword("iff"), 2, pp.OpAssoc.LEFT, _binary(Iff)),
        ],
    )
    return formula + pp.StringEnd(), term + pp.StringEnd()


def _syntax_error(text: str, exc: pp.ParseBaseException) -> GdlzSyntaxError:
    message = exc.msg
    expected = message[len("Expected ") :] if message.startswith("Expected ") else ""
    return GdlzSyntaxError(
        message, line=exc.lineno, column=exc.col, expected=expected, text=text
    )


def parse_formula(text: str) -> Formula:
    """Parse one formula from its concrete syntax.

    Raises:
        GdlzSyntaxError: with line, column and the expected token description.
    """
    parser, _ = _grammar()
    try:
        return parser.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise _syntax_error(text, exc) from None


def parse_term(text: str) -> NumTerm:
    """Parse one numerical term."""
    _, parser = _grammar()
    try:
        return parser.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise _syntax_error(text, exc) from None
