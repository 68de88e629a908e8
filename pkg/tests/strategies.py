"""Formula, term and path generators shared by the test modules.

The ``random.Random`` generators are seeded by the caller so that corpus sizes
and outcomes are reproducible; the hypothesis strategies cover the same
vocabulary for the property suites.
"""

import random
from dataclasses import dataclass
from typing import Sequence

import hypothesis.strategies as st

from src.games import build_path, joint_actions
from src.models.formula import (
    And,
    Bottom,
    Chain,
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
)
from src.models.game import GroundAction, JointAction
from src.models.path import Path
from src.models.st_model import STModel
from src.models.terms import Add, IntLit, Max, Min, NumTerm, Sub, Var

P1 = "Player1"
P2 = "Player2"


def reduce(agent: str, heap: int, sticks: int) -> GroundAction:
    return GroundAction.of("reduce", agent, heap, sticks)


def noop(agent: str) -> GroundAction:
    return GroundAction.of("noop", agent)


SAMPLE_JOINTS = [
    JointAction.of(reduce(P1, 1, 5), noop(P2)),
    JointAction.of(noop(P1), reduce(P2, 2, 2)),
    JointAction.of(reduce(P1, 2, 1), noop(P2)),
]

SAMPLE_PATH_TEXT = (
    "# <5,3> -> <0,3> -> <0,1> -> <0,0>\n"
    "reduce^Player1(1,5);noop^Player2()\n"
    "noop^Player1();reduce^Player2(2,2)\n"
    "reduce^Player1(2,1);noop^Player2()\n"
)

SUGAR_COMPARISONS = (Le, Ge, Ne)
CORE_COMPARISONS = (Gt, Lt, Eq)

# Term styles
FREE = "free"
IN_RANGE = "in_range"
BOUNDED = "bounded"


@dataclass
class Vocabulary:
    """Names a generated formula may use."""

    agents: tuple[str, ...]
    actions: dict[str, tuple[tuple[str, int], ...]]
    props: tuple[str, ...]
    vars: tuple[str, ...] = ()
    numeric: bool = True

    @classmethod
    def from_model(cls, model: STModel, numeric: bool = True) -> "Vocabulary":
        signature = model.signature
        return cls(
            agents=signature.agents,
            actions={
                agent: tuple((s.name, s.arity or 0) for s in signature.actions[agent])
                for agent in signature.agents
            },
            props=tuple(sorted(signature.props)),
            vars=signature.vars,
            numeric=numeric,
        )


def nim_vocabulary(k: int = 2) -> Vocabulary:
    return Vocabulary(
        agents=(P1, P2),
        actions={P1: (("reduce", 2), ("noop", 0)), P2: (("reduce", 2), ("noop", 0))},
        props=(f"turn({P1})", f"turn({P2})"),
        vars=tuple(f"heap_{i}" for i in range(1, k + 1)),
    )


def _prop(key: str) -> Prop:
    if "(" not in key:
        return Prop(key)
    name, rest = key.split("(", 1)
    args = tuple(int(a) if a.lstrip("-").isdigit() else a for a in rest[:-1].split(","))
    return Prop(name, args)


@dataclass
class FormulaGenerator:
    """Random formulas over a vocabulary.

    ``terms`` selects the numerical terms: ``free`` uses every constructor and
    literals in ``[lo - 3, hi + 3]``; ``in_range`` keeps every value inside
    ``[lo, hi]`` by using literals from the range, variables and min/max only;
    ``bounded`` uses bare variables or variable-free terms inside the range.
    With ``positive_legal`` a legal atom only appears under an even number of
    negations and never under ``iff``.
    """

    rng: random.Random
    vocabulary: Vocabulary
    terms: str = FREE
    lo: int = 0
    hi: int = 5
    sugar: bool = True
    positive_legal: bool = False
    chains: bool = True

    # Terms

    def literal(self) -> IntLit:
        if self.terms == FREE:
            return IntLit(self.rng.randint(self.lo - 3, self.hi + 3))
        return IntLit(self.rng.randint(self.lo, self.hi))

    def term(self, depth: int = 2) -> NumTerm:
        if self.terms == BOUNDED:
            if self.vocabulary.vars and self.rng.random() < 0.5:
                return Var(self.rng.choice(self.vocabulary.vars))
            return self._ground_term(depth)
        leaf = depth <= 0 or self.rng.random() < 0.45
        if leaf:
            if self.vocabulary.vars and self.rng.random() < 0.5:
                return Var(self.rng.choice(self.vocabulary.vars))
            return self.literal()
        constructors = (Add, Sub, Min, Max) if self.terms == FREE else (Min, Max)
        cls = self.rng.choice(constructors)
        return cls(self.term(depth - 1), self.term(depth - 1))

    def _ground_term(self, depth: int) -> NumTerm:
        if depth <= 0 or self.rng.random() < 0.6:
            return self.literal()
        cls = self.rng.choice((Min, Max))
        return cls(self._ground_term(depth - 1), self._ground_term(depth - 1))

    # Atoms

    def _action(self, cls: type, agent: str) -> Formula:
        name, arity = self.rng.choice(self.vocabulary.actions[agent])
        args = tuple(self.term() for _ in range(arity)) if self.vocabulary.numeric else ()
        return cls(agent, name, args)

    def atom(self, polarity: int) -> Formula:
        choices = ["prop", "initial", "terminal", "wins", "does"]
        if polarity > 0 or not self.positive_legal:
            choices.append("legal")
        if self.vocabulary.numeric:
            choices += ["vals", "cmp", "cmp"]
        kind = self.rng.choice(choices)
        agent = self.rng.choice(self.vocabulary.agents)
        if kind == "prop" and self.vocabulary.props:
            return _prop(self.rng.choice(self.vocabulary.props))
        if kind == "initial":
            return Initial()
        if kind == "terminal":
            return Terminal()
        if kind == "wins":
            return Wins(agent)
        if kind == "legal":
            return self._action(Legal, agent)
        if kind == "does":
            return self._action(Does, agent)
        if kind == "vals":
            return Vals(tuple(self.term() for _ in self.vocabulary.vars))
        if kind == "cmp":
            if self.sugar and self.chains and self.rng.random() < 0.1:
                ops = tuple(self.rng.choice(("<", ">", "=", "<=", ">=", "!=")) for _ in range(2))
                return Chain(tuple(self.term() for _ in range(3)), ops)
            pool = CORE_COMPARISONS + (SUGAR_COMPARISONS if self.sugar else ())
            return self.rng.choice(pool)(self.term(), self.term())
        return Terminal()

    # Formulas

    def formula(self, depth: int = 4, polarity: int = 1) -> Formula:
        if depth <= 0 or self.rng.random() < 0.25:
            return self.atom(polarity)
        kinds = ["not", "and", "and", "next"]
        if self.sugar:
            kinds += ["or", "implies", "iff", "const"]
        kind = self.rng.choice(kinds)
        if kind == "not":
            return Not(self.formula(depth - 1, -polarity))
        if kind == "and":
            return And(self.formula(depth - 1, polarity), self.formula(depth - 1, polarity))
        if kind == "next":
            return Next(self.formula(depth - 1, polarity))
        if kind == "or":
            return Or(self.formula(depth - 1, polarity), self.formula(depth - 1, polarity))
        if kind == "implies":
            return Implies(self.formula(depth - 1, -polarity), self.formula(depth - 1, polarity))
        if kind == "iff":
            return Iff(self.formula(depth - 1, 0), self.formula(depth - 1, 0))
        return self.rng.choice((Top(), Bottom()))

    def corpus(self, size: int, depth: int = 4) -> list[Formula]:
        return [self.formula(depth) for _ in range(size)]


def random_path(rng: random.Random, model: STModel, max_steps: int = 64) -> Path:
    """Random walk over joint actions of legal components; complete unless it
    runs out of steps."""
    w = model.initial
    joints: list[JointAction] = []
    while not model.is_terminal(w) and len(joints) < max_steps:
        joint = rng.choice(joint_actions(model, w))
        joints.append(joint)
        w = model.update(w, joint)
    return build_path(model, joints)


def random_prefix(rng: random.Random, path: Path) -> Path:
    """A prefix of ``path`` (possibly the whole path)."""
    n = rng.randint(0, path.length)
    return Path(model=path.model, states=path.states[: n + 1], joints=path.joints[:n])


# Hypothesis strategies


def terms(variables: Sequence[str] = ("heap_1", "heap_2"), lo: int = -3, hi: int = 8):
    leaves = st.one_of(st.integers(lo, hi).map(IntLit), st.sampled_from(tuple(variables)).map(Var))
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.builds(Add, inner, inner),
            st.builds(Sub, inner, inner),
            st.builds(Min, inner, inner),
            st.builds(Max, inner, inner),
        ),
        max_leaves=4,
    )


def _numeric_atoms(agents: Sequence[str], term_strategy) -> st.SearchStrategy:
    agent = st.sampled_from(tuple(agents))
    pair = st.tuples(term_strategy, term_strategy)
    return st.one_of(
        st.builds(lambda r, args: Legal(r, "reduce", args), agent, pair),
        st.builds(lambda r: Legal(r, "noop"), agent),
        st.builds(lambda r, args: Does(r, "reduce", args), agent, pair),
        st.builds(lambda r: Does(r, "noop"), agent),
        st.builds(Vals, pair),
        *(st.builds(cls, term_strategy, term_strategy) for cls in CORE_COMPARISONS),
        *(st.builds(cls, term_strategy, term_strategy) for cls in SUGAR_COMPARISONS),
    )


def formulas(
    variables: Sequence[str] = ("heap_1", "heap_2"),
    agents: Sequence[str] = (P1, P2),
    lo: int = -3,
    hi: int = 8,
    sugar: bool = True,
    max_leaves: int = 12,
):
    """Nim-vocabulary formulas; ``sugar`` adds the extended connectives."""
    term_strategy = terms(variables, lo, hi)
    agent = st.sampled_from(tuple(agents))
    plain = st.one_of(
        st.just(Initial()),
        st.just(Terminal()),
        st.builds(Wins, agent),
        st.builds(lambda r: Prop("turn", (r,)), agent),
    )
    atoms = st.one_of(plain, _numeric_atoms(agents, term_strategy))
    if sugar:
        atoms = st.one_of(
            atoms,
            st.just(Top()),
            st.just(Bottom()),
            st.builds(
                Chain,
                st.tuples(term_strategy, term_strategy, term_strategy),
                st.tuples(st.sampled_from(("<", "<=", "=")), st.sampled_from((">", ">=", "!="))),
            ),
        )

    def extend(inner):
        core = [st.builds(Not, inner), st.builds(And, inner, inner), st.builds(Next, inner)]
        if sugar:
            core += [
                st.builds(Or, inner, inner),
                st.builds(Implies, inner, inner),
                st.builds(Iff, inner, inner),
            ]
        return st.one_of(*core)

    return st.recursive(atoms, extend, max_leaves=max_leaves)
