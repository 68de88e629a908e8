"""The ⟨γ1..γk⟩-Nim family: signature, intensional model and rule set.

Two players alternate removing sticks from one of ``k`` heaps; the player
without the turn when every heap is empty wins. The model keeps the finite
fragment with ``heap_i`` in ``[0, γ_i]`` and one of the two turn
configurations, which is closed under the update function.
"""

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from loguru import logger

from src.logic.transform import big_and
from src.models.formula import (
    And,
    Chain,
    Does,
    Formula,
    Iff,
    Implies,
    Initial,
    Legal,
    Next,
    Not,
    Prop,
    RuleSet,
    Terminal,
    Vals,
    Wins,
)
from src.models.game import ActionSchema, GameSignature, GroundAction, JointAction
from src.models.st_model import STModel
from src.models.terms import IntLit, Sub, Var
from src.utils.errors import ModelError

PLAYERS = ("Player1", "Player2")
REDUCE = "reduce"
NOOP = "noop"


@dataclass(frozen=True, slots=True)
class NimState:
    turn: str
    heaps: tuple[int, ...]

    def __str__(self) -> str:
        return "_".join((self.turn, *map(str, self.heaps)))


def turn(agent: str) -> Prop:
    return Prop("turn", (agent,))


def heap_var(index: int) -> str:
    return f"heap_{index}"


def nim_signature(k: int) -> GameSignature:
    schemas = (ActionSchema(name=REDUCE, arity=2), ActionSchema(name=NOOP, arity=0))
    return GameSignature(
        agents=PLAYERS,
        actions={agent: schemas for agent in PLAYERS},
        props=frozenset(turn(agent).key for agent in PLAYERS),
        vars=tuple(heap_var(i) for i in range(1, k + 1)),
    )


class NimModel(STModel):
    """Intensional ST-model of ⟨γ1..γk⟩-Nim."""

    def __init__(self, gammas: Sequence[int]) -> None:
        self.gammas = tuple(gammas)
        self.signature = nim_signature(len(self.gammas))

    def __repr__(self) -> str:
        return f"NimModel({list(self.gammas)})"

    @property
    def initial(self) -> NimState:
        return NimState(PLAYERS[0], self.gammas)

    @property
    def is_finite(self) -> bool:
        return True

    def states(self) -> list[NimState]:
        ranges = [range(g + 1) for g in self.gammas]
        return [NimState(agent, heaps) for agent in PLAYERS for heaps in product(*ranges)]

    def action_space(self) -> dict[str, frozenset[GroundAction]]:
        return {
            agent: frozenset(
                [GroundAction.of(NOOP, agent)]
                + [
                    GroundAction.of(REDUCE, agent, m, s)
                    for m, gamma in enumerate(self.gammas, start=1)
                    for s in range(1, gamma + 1)
                ]
            )
            for agent in PLAYERS
        }

    def has_state(self, w) -> bool:
        return (
            isinstance(w, NimState)
            and w.turn in PLAYERS
            and len(w.heaps) == len(self.gammas)
            and all(0 <= x <= g for x, g in zip(w.heaps, self.gammas))
        )

    def state_id(self, w: NimState) -> str:
        return str(w)

    def is_terminal(self, w: NimState) -> bool:
        self.require_state(w)
        return not any(w.heaps)

    def legal_actions(self, w: NimState) -> frozenset[GroundAction]:
        self.require_state(w)
        other = self.signature.opponent(w.turn)
        reduces = [
            GroundAction.of(REDUCE, w.turn, m, s)
            for m, x in enumerate(w.heaps, start=1)
            for s in range(1, x + 1)
        ]
        return frozenset(reduces + [GroundAction.of(NOOP, other)])

    def is_legal(self, w: NimState, action: GroundAction) -> bool:
        self.require_state(w)
        if action.name == NOOP:
            return action.agent != w.turn and not action.args
        if action.name != REDUCE or action.agent != w.turn or len(action.args) != 2:
            return False
        m, s = action.args
        return 1 <= m <= len(w.heaps) and 1 <= s <= w.heaps[m - 1]

    def update(self, w: NimState, d: JointAction) -> NimState:
        self.require_state(w)
        reduce = _reduce_move(d)
        if reduce is None:
            return w
        heaps = list(w.heaps)
        m, s = reduce.args
        if 1 <= m <= len(heaps) and 1 <= s <= heaps[m - 1]:
            heaps[m - 1] -= s
        return NimState(self.signature.opponent(w.turn), tuple(heaps))

    def is_goal(self, agent: str, w: NimState) -> bool:
        self.require_state(w)
        return not any(w.heaps) and w.turn != agent

    def prop_val(self, w: NimState) -> frozenset[str]:
        self.require_state(w)
        return frozenset({turn(w.turn).key})

    def num_val(self, w: NimState) -> tuple[int, ...]:
        self.require_state(w)
        return w.heaps


def _reduce_move(d: JointAction) -> GroundAction | None:
    """The reduce of a (reduce, noop) joint action, if ``d`` has that shape."""
    if len(d.actions) != 2:
        return None
    first, second = d.actions
    if first.name == REDUCE and len(first.args) == 2 and second.name == NOOP:
        return first
    if second.name == REDUCE and len(second.args) == 2 and first.name == NOOP:
        return second
    return None


# Rules


def nim_rules(gammas: Sequence[int]) -> RuleSet:
    """The eight Nim rules, one formula each, with the big conjunctions expanded."""
    gammas = tuple(gammas)
    k = len(gammas)
    signature = nim_signature(k)
    zeros = Vals(tuple(IntLit(0) for _ in gammas))
    heap_ranges = [range(g + 1) for g in gammas]

    def vals(heaps: Sequence[int]) -> Vals:
        return Vals(tuple(IntLit(h) for h in heaps))

    def reduce_atoms(cls: type, agent: str):
        return [
            (m, s, cls(agent, REDUCE, (IntLit(m), IntLit(s))))
            for m, gamma in enumerate(gammas, start=1)
            for s in range(1, gamma + 1)
        ]

    initial_rule = Iff(
        Initial(), big_and([turn(PLAYERS[0]), Not(turn(PLAYERS[1])), vals(gammas)])
    )
    wins_rule = big_and(
        Iff(
            Wins(agent),
            big_and([Not(turn(agent)), turn(signature.opponent(agent)), zeros]),
        )
        for agent in PLAYERS
    )
    terminal_rule = Iff(Terminal(), zeros)
    reduce_legality = big_and(
        Iff(
            legal,
            And(
                Chain((IntLit(1), IntLit(s), Var(heap_var(m))), ("<=", "<=")),
                turn(agent),
            ),
        )
        for agent in PLAYERS
        for m, s, legal in reduce_atoms(Legal, agent)
    )
    noop_legality = big_and(
        Iff(Legal(agent, NOOP), Not(turn(agent))) for agent in PLAYERS
    )
    frame = big_and(
        Implies(And(Terminal(), vals(heaps)), Next(vals(heaps)))
        for heaps in product(*heap_ranges)
    )
    effects: list[Formula] = []
    for heaps in product(*heap_ranges):
        for agent in PLAYERS:
            for m, s, does in reduce_atoms(Does, agent):
                after = list(IntLit(h) for h in heaps)
                after[m - 1] = Sub(IntLit(heaps[m - 1]), IntLit(s))
                effects.append(
                    Implies(
                        big_and([Not(Terminal()), vals(heaps), does]),
                        Next(Vals(tuple(after))),
                    )
                )
    turn_taking = big_and(
        Implies(turn(agent), Next(And(Not(turn(agent)), turn(signature.opponent(agent)))))
        for agent in PLAYERS
    )
    name = "nim_" + "_".join(map(str, gammas))
    return RuleSet(
        name=name,
        rules=(
            initial_rule,
            wins_rule,
            terminal_rule,
            reduce_legality,
            noop_legality,
            frame,
            big_and(effects),
            turn_taking,
        ),
    )


def make_nim(gammas: Sequence[int]) -> tuple[GameSignature, NimModel, RuleSet]:
    """Signature, model and rule set of ⟨γ1..γk⟩-Nim.

    Raises:
        ModelError: no heaps, or a heap size below 1.
    """
    gammas = tuple(int(g) for g in gammas)
    if not gammas:
        raise ModelError("Nim needs at least one heap")
    if any(g < 1 for g in gammas):
        raise ModelError(f"heap sizes must be at least 1, got {list(gammas)}")
    logger.info(f"Building Nim {list(gammas)}")
    model = NimModel(gammas)
    return model.signature, model, nim_rules(gammas)
