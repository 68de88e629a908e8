"""State-transition models.

:class:`STModel` is the intensional interface every algorithm works against.
:class:`ExtensionalModel` is the finite table-backed implementation used for
file-loaded and translated models; generators such as Nim implement the
interface directly.
"""

import copy
from abc import ABC, abstractmethod
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from src.utils.errors import ModelError

from .game import GameSignature, GroundAction, JointAction

State = Hashable


class STModel(ABC):
    """ST-model over a game signature."""

    signature: GameSignature

    @property
    @abstractmethod
    def initial(self) -> State:
        """The initial state."""

    @abstractmethod
    def has_state(self, w: State) -> bool:
        """True iff ``w`` is a state handle of this model."""

    @abstractmethod
    def is_terminal(self, w: State) -> bool: ...

    @abstractmethod
    def legal_actions(self, w: State) -> frozenset[GroundAction]: ...

    @abstractmethod
    def update(self, w: State, d: JointAction) -> State: ...

    @abstractmethod
    def is_goal(self, agent: str, w: State) -> bool: ...

    @abstractmethod
    def prop_val(self, w: State) -> frozenset[str]: ...

    @abstractmethod
    def num_val(self, w: State) -> tuple[int, ...]: ...

    @property
    def is_finite(self) -> bool:
        """Whether :meth:`states` and :meth:`action_space` enumerate finitely."""
        return False

    def states(self) -> Sequence[State]:
        raise ModelError(f"{type(self).__name__} does not enumerate its states")

    def action_space(self) -> dict[str, frozenset[GroundAction]]:
        """Per-agent action sets A^r."""
        raise ModelError(f"{type(self).__name__} does not enumerate its actions")

    def is_legal(self, w: State, action: GroundAction) -> bool:
        return action in self.legal_actions(w)

    def with_actions(self, actions: Iterable[GroundAction]) -> "STModel":
        """Copy that also declares ``actions``, none of them legal anywhere."""
        raise ModelError(f"{type(self).__name__} cannot declare further actions")

    def state_id(self, w: State) -> str:
        return str(w)

    def require_state(self, w: State) -> None:
        if not self.has_state(w):
            raise ModelError(f"unknown state {w!r}")


class ExtensionalModel(STModel):
    """Finite ST-model given by explicit tables.

    Construction performs no checks so that malformed tables can be reported by
    ``validate_model``.
    """

    def __init__(
        self,
        signature: GameSignature,
        valuations: Mapping[State, tuple[Iterable[str], Iterable[int]]],
        initial: State,
        terminal: Iterable[State] = (),
        goals: Optional[Mapping[str, Iterable[State]]] = None,
        legal: Optional[Mapping[State, Iterable[GroundAction]]] = None,
        updates: Optional[Mapping[tuple[State, JointAction], State]] = None,
        actions: Optional[Mapping[str, Iterable[GroundAction]]] = None,
    ) -> None:
        self.signature = signature
        self._states = list(valuations)
        self._props = {w: frozenset(p) for w, (p, _) in valuations.items()}
        self._vals = {w: tuple(v) for w, (_, v) in valuations.items()}
        self._initial = initial
        self._terminal = frozenset(terminal)
        self._goals = {agent: frozenset(ws) for agent, ws in (goals or {}).items()}
        self._legal = {w: frozenset(acts) for w, acts in (legal or {}).items()}
        self._updates = dict(updates or {})
        self._actions = self._collect_actions(actions)

    def _collect_actions(
        self, declared: Optional[Mapping[str, Iterable[GroundAction]]]
    ) -> dict[str, frozenset[GroundAction]]:
        space: dict[str, set[GroundAction]] = {agent: set() for agent in self.signature.agents}
        for agent, acts in (declared or {}).items():
            space.setdefault(agent, set()).update(acts)
        for acts in self._legal.values():
            for action in acts:
                space.setdefault(action.agent, set()).add(action)
        for _, joint in self._updates:
            for action in joint.actions:
                space.setdefault(action.agent, set()).add(action)
        return {agent: frozenset(acts) for agent, acts in space.items()}

    @property
    def initial(self) -> State:
        return self._initial

    @property
    def is_finite(self) -> bool:
        return True

    def states(self) -> Sequence[State]:
        return tuple(self._states)

    def action_space(self) -> dict[str, frozenset[GroundAction]]:
        return dict(self._actions)

    def has_state(self, w: State) -> bool:
        return w in self._props

    def is_terminal(self, w: State) -> bool:
        return w in self._terminal

    def terminal_states(self) -> frozenset[State]:
        return self._terminal

    def goal_states(self, agent: str) -> frozenset[State]:
        return self._goals.get(agent, frozenset())

    def legal_pairs(self) -> dict[State, frozenset[GroundAction]]:
        return dict(self._legal)

    def update_table(self) -> dict[tuple[State, JointAction], State]:
        return dict(self._updates)

    def legal_actions(self, w: State) -> frozenset[GroundAction]:
        self.require_state(w)
        return self._legal.get(w, frozenset())

    def update(self, w: State, d: JointAction) -> State:
        self.require_state(w)
        try:
            return self._updates[(w, d)]
        except KeyError:
            raise ModelError(f"update undefined for state {w!r} and joint action {d}") from None

    def is_goal(self, agent: str, w: State) -> bool:
        return w in self._goals.get(agent, frozenset())

    def prop_val(self, w: State) -> frozenset[str]:
        self.require_state(w)
        return self._props[w]

    def num_val(self, w: State) -> tuple[int, ...]:
        self.require_state(w)
        return self._vals[w]

    def with_actions(self, actions: Iterable[GroundAction]) -> "ExtensionalModel":
        actions = list(actions)
        model = copy.copy(self)
        model.signature = self.signature.with_actions(actions)
        space = {agent: set(acts) for agent, acts in self._actions.items()}
        for action in actions:
            space.setdefault(action.agent, set()).add(action)
        model._actions = {agent: frozenset(acts) for agent, acts in space.items()}
        return model

    @classmethod
    def from_model(cls, model: STModel) -> "ExtensionalModel":
        """Materialise a finite model: states, legality and the update over
        every joint action of legal components."""
        from src.games.paths import joint_actions

        states = model.states()
        valuations = {w: (model.prop_val(w), model.num_val(w)) for w in states}
        updates = {}
        for w in states:
            for joint in joint_actions(model, w):
                updates[(w, joint)] = model.update(w, joint)
        return cls(
            signature=model.signature,
            valuations=valuations,
            initial=model.initial,
            terminal=[w for w in states if model.is_terminal(w)],
            goals={r: [w for w in states if model.is_goal(r, w)] for r in model.signature.agents},
            legal={w: model.legal_actions(w) for w in states},
            updates=updates,
            actions=model.action_space(),
        )
