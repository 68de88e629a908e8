"""GDL models seen as GDLZ models with an empty numerical layer."""

from typing import Sequence

from loguru import logger

from src.models.game import GroundAction, JointAction
from src.models.st_model import State, STModel


class EmbeddedModel(STModel):
    """Delegates to a GDL model; no variables and the empty value tuple in
    every state."""

    def __init__(self, model: STModel) -> None:
        self.model = model
        self.signature = model.signature.without_vars()

    def __repr__(self) -> str:
        return f"EmbeddedModel({self.model!r})"

    @property
    def initial(self) -> State:
        return self.model.initial

    @property
    def is_finite(self) -> bool:
        return self.model.is_finite

    def states(self) -> Sequence[State]:
        return self.model.states()

    def action_space(self) -> dict[str, frozenset[GroundAction]]:
        return self.model.action_space()

    def has_state(self, w: State) -> bool:
        return self.model.has_state(w)

    def state_id(self, w: State) -> str:
        return self.model.state_id(w)

    def is_terminal(self, w: State) -> bool:
        return self.model.is_terminal(w)

    def legal_actions(self, w: State) -> frozenset[GroundAction]:
        return self.model.legal_actions(w)

    def is_legal(self, w: State, action: GroundAction) -> bool:
        return self.model.is_legal(w, action)

    def update(self, w: State, d: JointAction) -> State:
        return self.model.update(w, d)

    def is_goal(self, agent: str, w: State) -> bool:
        return self.model.is_goal(agent, w)

    def prop_val(self, w: State) -> frozenset[str]:
        return self.model.prop_val(w)

    def num_val(self, w: State) -> tuple[int, ...]:
        self.model.require_state(w)
        return ()


def embed_gdl(model: STModel) -> EmbeddedModel:
    if model.signature.vars:
        logger.warning(
            f"Embedding drops the numerical variables {', '.join(model.signature.vars)}"
        )
    return EmbeddedModel(model)
