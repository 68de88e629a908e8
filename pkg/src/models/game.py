"""Game signatures, ground actions and joint actions."""

from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ActionSchema(BaseModel):
    """Action name with its parameter count (``None`` accepts any arity)."""

    model_config = ConfigDict(frozen=True)

    name: str
    arity: Optional[int] = Field(default=0, ge=0)

    def __str__(self) -> str:
        return f"{self.name}/{'*' if self.arity is None else self.arity}"


class GameSignature(BaseModel):
    """Static vocabulary of a game: agents, actions, propositions, variables."""

    model_config = ConfigDict(frozen=True)

    agents: tuple[str, ...] = Field(..., description="Agents N, in joint-action order")
    actions: dict[str, tuple[ActionSchema, ...]] = Field(
        ..., description="Action schemas A^r per agent"
    )
    props: frozenset[str] = Field(default=frozenset(), description="Proposition keys")
    vars: tuple[str, ...] = Field(default=(), description="Numerical variables X, ordered")

    @model_validator(mode="after")
    def check_vocabulary(self) -> "GameSignature":
        if not self.agents:
            raise ValueError("a game signature needs at least one agent")
        if len(set(self.agents)) != len(self.agents):
            raise ValueError("agent names must be distinct")
        for agent in self.agents:
            if not self.actions.get(agent):
                raise ValueError(f"agent {agent} has no actions")
        unknown = set(self.actions) - set(self.agents)
        if unknown:
            raise ValueError(f"actions declared for unknown agents: {sorted(unknown)}")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variable names must be distinct")
        return self

    def action_schema(self, agent: str, name: str) -> Optional[ActionSchema]:
        for schema in self.actions.get(agent, ()):
            if schema.name == name:
                return schema
        return None

    def var_index(self, name: str) -> int:
        return self.vars.index(name)

    def opponent(self, agent: str) -> str:
        """The unique other agent of a two-agent game."""
        if len(self.agents) != 2 or agent not in self.agents:
            raise ValueError("opponent is only defined for agents of two-agent games")
        return self.agents[1] if agent == self.agents[0] else self.agents[0]

    def with_actions(self, actions: Iterable["GroundAction"]) -> "GameSignature":
        """Signature that also declares ``actions``, each with the arity of its
        arguments. Names already declared for the agent are left alone."""
        schemas = {agent: list(self.actions.get(agent, ())) for agent in self.agents}
        for action in actions:
            declared = schemas.setdefault(action.agent, [])
            if all(schema.name != action.name for schema in declared):
                declared.append(ActionSchema(name=action.name, arity=len(action.args)))
        return GameSignature(
            agents=self.agents,
            actions={agent: tuple(s) for agent, s in schemas.items()},
            props=self.props,
            vars=self.vars,
        )

    def without_vars(self) -> "GameSignature":
        return self.model_copy(update={"vars": ()})


class GroundAction(BaseModel):
    """Action ``name^agent(args)`` with evaluated parameters."""

    model_config = ConfigDict(frozen=True)

    agent: str
    name: str
    args: tuple[int, ...] = ()

    @classmethod
    def of(cls, name: str, agent: str, *args: int) -> "GroundAction":
        return cls(agent=agent, name=name, args=tuple(args))

    def sort_key(self) -> tuple[str, str, tuple[int, ...]]:
        return (self.agent, self.name, self.args)

    def __str__(self) -> str:
        return f"{self.name}^{self.agent}({','.join(str(a) for a in self.args)})"


class JointAction(BaseModel):
    """One ground action per agent, in signature agent order."""

    model_config = ConfigDict(frozen=True)

    actions: tuple[GroundAction, ...]

    @classmethod
    def of(cls, *actions: GroundAction) -> "JointAction":
        return cls(actions=tuple(actions))

    def for_agent(self, agent: str) -> GroundAction:
        for action in self.actions:
            if action.agent == agent:
                return action
        raise KeyError(agent)

    def agents(self) -> tuple[str, ...]:
        return tuple(a.agent for a in self.actions)

    def __str__(self) -> str:
        return ";".join(str(a) for a in self.actions)
