"""Paths through an ST-model."""

from dataclasses import dataclass, field
from typing import Optional

from .game import GroundAction, JointAction
from .st_model import State, STModel


@dataclass(frozen=True)
class Path:
    """Finite sequence w0 -d1-> w1 ... -de-> we.

    ``theta(j)`` is the joint action taken at stage ``j`` (the one leaving
    ``states[j]``) and is undefined at the final stage.
    """

    model: STModel = field(compare=False, repr=False)
    states: tuple[State, ...]
    joints: tuple[JointAction, ...] = ()

    @property
    def length(self) -> int:
        return len(self.joints)

    @property
    def final(self) -> State:
        return self.states[-1]

    @property
    def is_complete(self) -> bool:
        return self.model.is_terminal(self.final)

    def state(self, j: int) -> State:
        return self.states[j]

    def theta(self, j: int) -> Optional[JointAction]:
        if 0 <= j < self.length:
            return self.joints[j]
        return None

    def theta_r(self, j: int, agent: str) -> Optional[GroundAction]:
        joint = self.theta(j)
        return joint.for_agent(agent) if joint is not None else None

    def stages(self) -> range:
        return range(self.length + 1)
