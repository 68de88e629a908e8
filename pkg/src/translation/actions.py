"""Flat GDL action names, integer bounds and order propositions."""

import re
from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.formula import Prop
from src.models.game import GroundAction, JointAction
from src.utils.errors import TranslationError

FLAT_NAME = re.compile(r"^(.+?)__(.+?)__((?:m?\d+(?:_m?\d+)*)?)$")


class PathBounds(BaseModel):
    """Smallest and largest integer occurring on a path."""

    model_config = ConfigDict(frozen=True)

    min: int = Field(..., description="Smallest integer on the path")
    max: int = Field(..., description="Largest integer on the path")

    @model_validator(mode="after")
    def check_order(self) -> "PathBounds":
        if self.min > self.max:
            raise ValueError("path bounds need min <= max")
        return self

    @property
    def lo(self) -> int:
        return self.min

    @property
    def hi(self) -> int:
        return self.max


class TranslationBounds(BaseModel):
    """Integer range ``[zmin, zmax]`` for the complete translation."""

    model_config = ConfigDict(frozen=True)

    zmin: int
    zmax: int

    @model_validator(mode="after")
    def check_order(self) -> "TranslationBounds":
        if self.zmin > self.zmax:
            raise ValueError("translation bounds need zmin <= zmax")
        return self

    @property
    def lo(self) -> int:
        return self.zmin

    @property
    def hi(self) -> int:
        return self.zmax

    @property
    def mu(self) -> int:
        return self.zmax - self.zmin

    def values(self) -> range:
        return range(self.zmin, self.zmax + 1)

    def contains(self, value: int) -> bool:
        return self.zmin <= value <= self.zmax


def _int_token(value: int) -> str:
    return f"m{-value}" if value < 0 else str(value)


def flatten_action(action: GroundAction) -> str:
    """``name__agent__z1_z2``; negative integers get an ``m`` prefix."""
    return f"{action.name}__{action.agent}__{'_'.join(_int_token(a) for a in action.args)}"


def unflatten_action(name: str) -> GroundAction:
    """Inverse of :func:`flatten_action` for names without ``__`` inside."""
    match = FLAT_NAME.match(name)
    if not match:
        raise TranslationError(f"{name!r} is not a flattened action name")
    action, agent, args = match.groups()
    values = tuple(
        -int(token[1:]) if token.startswith("m") else int(token)
        for token in args.split("_")
        if token
    )
    return GroundAction(agent=agent, name=action, args=values)


def flat_ground_action(action: GroundAction) -> GroundAction:
    """The parameterless GDL action standing for ``action``."""
    return GroundAction(agent=action.agent, name=flatten_action(action))


def flat_joint(joint: JointAction) -> JointAction:
    return JointAction(actions=tuple(flat_ground_action(a) for a in joint.actions))


def build_action_map(actions: Iterable[GroundAction]) -> dict[GroundAction, str]:
    """Flat names for ``actions``, sorted; a name collision is an error."""
    mapping: dict[GroundAction, str] = {}
    owners: dict[str, GroundAction] = {}
    for action in sorted(set(actions), key=GroundAction.sort_key):
        flat = flatten_action(action)
        other = owners.get(flat)
        if other is not None:
            raise TranslationError(f"actions {other} and {action} share the flat name {flat}")
        owners[flat] = action
        mapping[action] = flat
    return mapping


def smaller(a: int, b: int) -> Prop:
    return Prop("smaller", (a, b))


def bigger(a: int, b: int) -> Prop:
    return Prop("bigger", (a, b))


def equal(a: int, b: int) -> Prop:
    return Prop("equal", (a, b))


def value_prop(var: str, value: int) -> Prop:
    """``x(q)``: variable ``x`` has value ``q``."""
    return Prop(var, (value,))


def order_props(lo: int, hi: int) -> frozenset[str]:
    """Keys of the order propositions over ``[lo, hi]``."""
    props: set[str] = set()
    values = range(lo, hi + 1)
    for z in values:
        props.add(equal(z, z).key)
        if z < hi:
            props.add(Prop("succ", (z, z + 1)).key)
            props.add(Prop("prec", (z + 1, z)).key)
    for z1 in values:
        for z2 in values:
            if z1 < z2:
                props.add(smaller(z1, z2).key)
            elif z1 > z2:
                props.add(bigger(z1, z2).key)
    return frozenset(props)


ORDER_NAMES = ("smaller", "bigger", "equal", "succ", "prec")


def order_vocabulary(lo: int, hi: int) -> frozenset[str]:
    """Every order proposition over ``[lo, hi]``, true or not.

    Signatures declare these; valuations hold only :func:`order_props`.
    """
    values = range(lo, hi + 1)
    return frozenset(
        Prop(name, (z1, z2)).key for name in ORDER_NAMES for z1 in values for z2 in values
    )


def value_props(variables: Iterable[str], lo: int, hi: int) -> frozenset[str]:
    return frozenset(value_prop(x, q).key for x in variables for q in range(lo, hi + 1))


def bounds_span(bounds: Optional[PathBounds | TranslationBounds]) -> int:
    return 0 if bounds is None else bounds.hi - bounds.lo + 1
