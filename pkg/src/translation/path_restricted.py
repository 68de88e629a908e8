"""Translation of a GDLZ model, one of its complete paths and formulas along
that path into GDL.

The translated model only knows the states and actions of the path. Numerical
values become propositions ``x(q)`` and comparisons become order propositions
over the path's integer range.
"""

import operator
from typing import Optional

from loguru import logger

from src.evaluation.terms import eval_term_values, var_index
from src.logic.transform import big_and, core_top, desugar
from src.models.formula import (
    And,
    Bottom,
    Does,
    Eq,
    Formula,
    Gt,
    Initial,
    Legal,
    Lt,
    Next,
    Not,
    Prop,
    Terminal,
    Top,
    Vals,
    Wins,
)
from src.models.game import ActionSchema, GameSignature, GroundAction
from src.models.path import Path
from src.models.st_model import ExtensionalModel, STModel
from src.utils.errors import IncompletePathError, TranslationError

from .actions import (
    PathBounds,
    bigger,
    build_action_map,
    equal,
    flat_ground_action,
    flat_joint,
    flatten_action,
    order_props,
    order_vocabulary,
    smaller,
    value_prop,
    value_props,
)
from .artifacts import GdlArtifacts

LEGAL_ELSE = "legal_else"
LAST_NEXT = "last_next"
DECIDED = "decided"

_ORDER = {
    Gt: (bigger, operator.gt),
    Lt: (smaller, operator.lt),
    Eq: (equal, operator.eq),
}


def path_bounds(path: Path) -> Optional[PathBounds]:
    """Smallest and largest integer among the path's valuations and action
    parameters; ``None`` when the path carries no integers at all."""
    numbers = [v for w in path.states for v in path.model.num_val(w)]
    numbers += [z for joint in path.joints for a in joint.actions for z in a.args]
    if not numbers:
        return None
    return PathBounds(min=min(numbers), max=max(numbers))


def actions_of_path(path: Path) -> frozenset[GroundAction]:
    return frozenset(a for joint in path.joints for a in joint.actions)


def tautology(bounds: Optional[PathBounds]) -> Formula:
    """An always-true GDL formula: ``equal(lo,lo)`` or, without bounds, the
    core form of ``true``."""
    if bounds is None:
        return core_top()
    return equal(bounds.min, bounds.min)


def _translated_signature(
    model: STModel, flats: dict[str, set[str]], props: frozenset[str]
) -> GameSignature:
    actions = {}
    for agent in model.signature.agents:
        names = sorted(flats.get(agent, ()))
        if not names:
            names = [
                flatten_action(GroundAction(agent=agent, name=schema.name))
                for schema in model.signature.actions[agent]
            ]
        actions[agent] = tuple(ActionSchema(name=name, arity=0) for name in names)
    return GameSignature(agents=model.signature.agents, actions=actions, props=props)


def translate_model_path(model: STModel, path: Path) -> GdlArtifacts:
    """GDL model restricted to ``path``, together with the translated path.

    Raises:
        IncompletePathError: ``path`` does not end in a terminal state.
    """
    if not path.is_complete:
        raise IncompletePathError("the path-restricted translation needs a complete path")
    logger.info(f"Translating model along a path of length {path.length}")
    bounds = path_bounds(path)
    pz = order_props(bounds.min, bounds.max) if bounds else frozenset()
    variables = model.signature.vars
    performed = actions_of_path(path)
    action_map = build_action_map(performed)

    vocabulary = set(performed)
    if model.is_finite:
        for acts in model.action_space().values():
            vocabulary.update(acts)
    flats: dict[str, set[str]] = {}
    for action in vocabulary:
        flats.setdefault(action.agent, set()).add(flatten_action(action))

    valuations = {}
    for w in path.states:
        numbers = {value_prop(x, q).key for x, q in zip(variables, model.num_val(w))}
        valuations[w] = (model.prop_val(w) | pz | numbers, ())
    legal: dict = {}
    updates = {}
    for j, joint in enumerate(path.joints):
        w = path.states[j]
        legal.setdefault(w, set()).update(flat_ground_action(a) for a in joint.actions)
        updates[(w, flat_joint(joint))] = path.states[j + 1]
    final = path.final
    props = model.signature.props
    if bounds:
        props |= order_vocabulary(bounds.min, bounds.max)
        props |= value_props(variables, bounds.min, bounds.max)
    signature = _translated_signature(model, flats, props)
    translated = ExtensionalModel(
        signature=signature,
        valuations=valuations,
        initial=path.states[0],
        terminal=[final],
        goals={r: [final] for r in model.signature.agents if model.is_goal(r, final)},
        legal=legal,
        updates=updates,
        actions={
            agent: [GroundAction(agent=agent, name=s.name) for s in schemas]
            for agent, schemas in signature.actions.items()
        },
    )
    artifacts = GdlArtifacts(
        mode="path",
        model=translated,
        action_map=action_map,
        order_props=pz,
        bounds=bounds,
        source_vars=variables,
    )
    return artifacts.with_path(translate_path(path, artifacts))


def translate_path(path: Path, artifacts: GdlArtifacts) -> Path:
    """Same states, every joint action replaced by its flat counterpart."""
    return Path(
        model=artifacts.model,
        states=path.states,
        joints=tuple(flat_joint(joint) for joint in path.joints),
    )


class PathFormulaTranslator:
    """Formula translation along one path.

    ``fired`` records the special clauses used so far: ``legal_else`` when a
    legal atom's action was not the one performed, ``last_next`` when a
    ``next`` was translated at the final stage, ``decided`` when a comparison
    or ``vals`` had a value outside the path bounds and became a constant.
    """

    def __init__(self, model: STModel, path: Path, bounds: Optional[PathBounds] = None) -> None:
        self.model = model
        self.path = path
        self.bounds = bounds if bounds is not None else path_bounds(path)
        self.fired: set[str] = set()
        self._index = var_index(model)

    def translate(self, formula: Formula, stage: int) -> Formula:
        if not 0 <= stage <= self.path.length:
            raise TranslationError(f"stage {stage} is outside the path (length {self.path.length})")
        return self._translate(desugar(formula), stage)

    def _ground(self, node: Legal | Does, values: tuple[int, ...]) -> GroundAction:
        return GroundAction(
            agent=node.agent,
            name=node.action,
            args=tuple(eval_term_values(z, self._index, values) for z in node.args),
        )

    def _in_bounds(self, *numbers: int) -> bool:
        return self.bounds is not None and all(
            self.bounds.min <= z <= self.bounds.max for z in numbers
        )

    def _decided(self, value: bool) -> Formula:
        """Constant for an atom whose values have no order propositions."""
        self.fired.add(DECIDED)
        return tautology(self.bounds) if value else Not(tautology(self.bounds))

    def _translate(self, node: Formula, j: int) -> Formula:
        if isinstance(node, (Prop, Initial, Terminal, Wins)):
            return node
        if isinstance(node, Not):
            return Not(self._translate(node.operand, j))
        if isinstance(node, And):
            return And(self._translate(node.left, j), self._translate(node.right, j))
        if isinstance(node, Next):
            if j >= self.path.length:
                self.fired.add(LAST_NEXT)
                return tautology(self.bounds)
            return Next(self._translate(node.operand, j + 1))
        values = tuple(self.model.num_val(self.path.states[j]))
        if isinstance(node, Does):
            action = self._ground(node, values)
            return Does(action.agent, flatten_action(action))
        if isinstance(node, Legal):
            action = self._ground(node, values)
            atom = Legal(action.agent, flatten_action(action))
            if self.path.theta_r(j, action.agent) == action:
                return atom
            self.fired.add(LEGAL_ELSE)
            return Not(atom)
        if isinstance(node, Vals):
            if not node.items:
                return tautology(self.bounds)
            items = tuple(eval_term_values(z, self._index, values) for z in node.items)
            if not self._in_bounds(*items):
                return self._decided(items == values)
            return big_and(
                value_prop(x, q) for x, q in zip(self.model.signature.vars, items)
            )
        if isinstance(node, (Gt, Lt, Eq)):
            left = eval_term_values(node.left, self._index, values)
            right = eval_term_values(node.right, self._index, values)
            prop, compare = _ORDER[type(node)]
            if not self._in_bounds(left, right):
                return self._decided(compare(left, right))
            return prop(left, right)
        if isinstance(node, (Top, Bottom)):
            return self._translate(desugar(node), j)
        raise TranslationError(f"cannot translate {node!r}")


def translate_formula_path(formula: Formula, path: Path, stage: int) -> Formula:
    """GDL formula for ``formula`` at ``stage`` of ``path``."""
    return PathFormulaTranslator(path.model, path).translate(formula, stage)
