"""Bounded complete translation of finite GDLZ models and bounded formulas.

A model is finite for bounds ``[zmin, zmax]`` when its states and actions
enumerate, every action parameter lies in the bounds and so does every
variable value. Such a model translates as a whole: states, terminal and goal
states stay as they are, every action is flattened and every valuation gains
the order propositions and the ``x(q)`` value propositions.

Formulas translate in two steps. :func:`remove_var` grounds every bare
variable argument against the bounds, then the variable-free result has its
terms folded and its numerical atoms replaced by propositions.
"""

from typing import Iterable, Optional, Sequence

from loguru import logger

from src.evaluation.terms import eval_term_values
from src.logic.printer import print_term
from src.logic.transform import big_and, big_or, desugar, rebuild, with_children
from src.models.formula import (
    And,
    Chain,
    Comparison,
    Does,
    Eq,
    Formula,
    Gt,
    Legal,
    Lt,
    Prop,
    Vals,
    formula_terms,
)
from src.models.game import ActionSchema, GameSignature, GroundAction, JointAction
from src.models.path import Path
from src.models.st_model import State, STModel
from src.models.terms import IntLit, NumTerm, Var, is_ground
from src.utils.errors import (
    BoundsViolationError,
    EvaluationError,
    ModelError,
    TranslationError,
    UnboundedFormulaError,
)

from .actions import (
    TranslationBounds,
    bigger,
    build_action_map,
    equal,
    flat_ground_action,
    order_props,
    order_vocabulary,
    smaller,
    value_prop,
    value_props,
)
from .artifacts import GdlArtifacts
from .path_restricted import translate_path

PARAMS = "i"
ENUMERABLE = "ii"
VALUATIONS = "iii"


def finite_model_violations(model: STModel, bounds: TranslationBounds) -> list[tuple[str, str]]:
    """``(condition, detail)`` for each violated finiteness condition.

    ``i``: an action parameter is out of bounds. ``ii``: a legal action is
    missing from the enumerated action space. ``iii``: a variable value is out
    of bounds.

    Raises:
        TranslationError: the model does not enumerate its states and actions.
    """
    if not model.is_finite:
        raise TranslationError(f"{type(model).__name__} does not enumerate its states and actions")
    try:
        states = model.states()
        space = model.action_space()
    except ModelError as exc:
        raise TranslationError(str(exc)) from None

    violations: list[tuple[str, str]] = []
    actions = sorted({a for acts in space.values() for a in acts}, key=GroundAction.sort_key)
    for action in actions:
        outside = [z for z in action.args if not bounds.contains(z)]
        if outside:
            violations.append((PARAMS, f"action {action} has parameter {outside[0]} outside [{bounds.lo}, {bounds.hi}]"))
            break
    known = set(actions)
    for w in states:
        missing = sorted(model.legal_actions(w) - known, key=GroundAction.sort_key)
        if missing:
            violations.append((ENUMERABLE, f"legal action {missing[0]} at {model.state_id(w)} is not in the action space"))
            break
    for w in states:
        values = model.num_val(w)
        outside = [v for v in values if not bounds.contains(v)]
        if outside:
            violations.append((VALUATIONS, f"state {model.state_id(w)} has value {outside[0]} outside [{bounds.lo}, {bounds.hi}]"))
            break
    return violations


def is_finite_model(model: STModel, bounds: TranslationBounds) -> bool:
    return not finite_model_violations(model, bounds)


class FlattenedModel(STModel):
    """GDL view of a finite GDLZ model: same states, flat actions, numerical
    values carried by propositions.

    ``extra`` declares further flat actions; they are never legal.
    """

    def __init__(
        self,
        source: STModel,
        bounds: TranslationBounds,
        action_map: dict[GroundAction, str],
        extra: Iterable[GroundAction] = (),
    ) -> None:
        self.source = source
        self.bounds = bounds
        self.action_map = action_map
        self.extra = frozenset(extra)
        self._inverse = {flat: action for action, flat in action_map.items()}
        self._order = order_props(bounds.lo, bounds.hi)
        variables = source.signature.vars
        flats: dict[str, list[str]] = {agent: [] for agent in source.signature.agents}
        for action, flat in action_map.items():
            flats[action.agent].append(flat)
        self.signature = GameSignature(
            agents=source.signature.agents,
            actions={
                agent: tuple(ActionSchema(name=name, arity=0) for name in sorted(names))
                for agent, names in flats.items()
            },
            props=source.signature.props
            | order_vocabulary(bounds.lo, bounds.hi)
            | value_props(variables, bounds.lo, bounds.hi),
        ).with_actions(sorted(self.extra, key=GroundAction.sort_key))

    def __repr__(self) -> str:
        return f"FlattenedModel({self.source!r}, [{self.bounds.lo}, {self.bounds.hi}])"

    def with_actions(self, actions: Iterable[GroundAction]) -> "FlattenedModel":
        return FlattenedModel(self.source, self.bounds, self.action_map, self.extra | set(actions))

    def _source_action(self, action: GroundAction) -> Optional[GroundAction]:
        if action.args:
            return None
        source = self._inverse.get(action.name)
        if source is None or source.agent != action.agent:
            return None
        return source

    @property
    def initial(self) -> State:
        return self.source.initial

    @property
    def is_finite(self) -> bool:
        return True

    def states(self) -> Sequence[State]:
        return self.source.states()

    def action_space(self) -> dict[str, frozenset[GroundAction]]:
        return {
            agent: frozenset(GroundAction(agent=agent, name=s.name) for s in schemas)
            for agent, schemas in self.signature.actions.items()
        }

    def has_state(self, w: State) -> bool:
        return self.source.has_state(w)

    def state_id(self, w: State) -> str:
        return self.source.state_id(w)

    def is_terminal(self, w: State) -> bool:
        return self.source.is_terminal(w)

    def legal_actions(self, w: State) -> frozenset[GroundAction]:
        return frozenset(flat_ground_action(a) for a in self.source.legal_actions(w))

    def is_legal(self, w: State, action: GroundAction) -> bool:
        source = self._source_action(action)
        return source is not None and self.source.is_legal(w, source)

    def update(self, w: State, d: JointAction) -> State:
        actions = []
        for action in d.actions:
            source = self._source_action(action)
            if source is None:
                raise ModelError(f"unknown flat action {action}")
            actions.append(source)
        return self.source.update(w, JointAction(actions=tuple(actions)))

    def is_goal(self, agent: str, w: State) -> bool:
        return self.source.is_goal(agent, w)

    def prop_val(self, w: State) -> frozenset[str]:
        numbers = frozenset(
            value_prop(x, q).key
            for x, q in zip(self.source.signature.vars, self.source.num_val(w))
        )
        return self.source.prop_val(w) | self._order | numbers

    def num_val(self, w: State) -> tuple[int, ...]:
        self.source.require_state(w)
        return ()


def translate_model_complete(model: STModel, bounds: TranslationBounds) -> GdlArtifacts:
    """GDL translation of a whole finite model.

    Raises:
        BoundsViolationError: the model is not finite for ``bounds``.
    """
    violations = finite_model_violations(model, bounds)
    if violations:
        condition, detail = violations[0]
        raise BoundsViolationError(condition, detail)
    logger.info(f"Translating model completely over [{bounds.lo}, {bounds.hi}]")
    space = model.action_space()
    action_map = build_action_map(a for acts in space.values() for a in acts)
    logger.debug(f"{len(action_map)} flat actions")
    return GdlArtifacts(
        mode="complete",
        model=FlattenedModel(model, bounds, action_map),
        action_map=action_map,
        order_props=order_props(bounds.lo, bounds.hi),
        bounds=bounds,
        source_vars=model.signature.vars,
    )


def translate_path_complete(path: Path, artifacts: GdlArtifacts) -> Path:
    return translate_path(path, artifacts)


def eval_simple_term(term: NumTerm) -> int:
    """Value of a variable-free term.

    Raises:
        UnboundedFormulaError: the term contains a variable.
    """
    try:
        return eval_term_values(term, {}, ())
    except EvaluationError:
        raise UnboundedFormulaError(print_term(term), "contains a variable") from None


# Grounding


def _atom_terms(atom: Formula) -> tuple[NumTerm, ...]:
    if isinstance(atom, (Legal, Does)):
        return atom.args
    if isinstance(atom, Vals):
        return atom.items
    if isinstance(atom, Comparison):
        return (atom.left, atom.right)
    if isinstance(atom, Chain):
        return atom.terms
    return ()


def _with_terms(atom: Formula, terms: tuple[NumTerm, ...]) -> Formula:
    if isinstance(atom, (Legal, Does)):
        return type(atom)(atom.agent, atom.action, terms)
    if isinstance(atom, Vals):
        return Vals(terms)
    if isinstance(atom, Comparison):
        return type(atom)(terms[0], terms[1])
    if isinstance(atom, Chain):
        return Chain(terms, atom.ops)
    return atom


def _ground_atom(atom: Formula, variables: frozenset[str], bounds: TranslationBounds) -> Formula:
    terms = _atom_terms(atom)
    for position, term in enumerate(terms):
        if isinstance(term, Var):
            if term.name not in variables:
                raise UnboundedFormulaError(term.name, "undeclared variable")
            disjuncts = []
            for q in bounds.values():
                grounded = terms[:position] + (IntLit(q),) + terms[position + 1 :]
                disjuncts.append(
                    And(_ground_atom(_with_terms(atom, grounded), variables, bounds), value_prop(term.name, q))
                )
            return big_or(disjuncts)
        if not is_ground(term):
            raise UnboundedFormulaError(print_term(term), "variable nested inside a compound term")
    return atom


def remove_var(
    formula: Formula,
    variables: Sequence[str],
    bounds: TranslationBounds,
    desugared: bool = False,
) -> Formula:
    """Replace every bare variable argument ``x`` of an atom by the
    disjunction over ``q`` in the bounds of the atom with ``q`` for ``x``,
    conjoined with ``x(q)``.

    Disjunctions stay as ``or`` unless ``desugared`` is set.

    Raises:
        UnboundedFormulaError: a variable is nested inside a compound term or
            is not one of ``variables``.
    """
    names = frozenset(variables)

    def rewrite(node: Formula, children: tuple[Formula, ...]) -> Formula:
        if children:
            return with_children(node, children)
        return _ground_atom(node, names, bounds)

    result = rebuild(formula, rewrite)
    return desugar(result) if desugared else result


def unbounded_term(
    formula: Formula, variables: Sequence[str], bounds: TranslationBounds
) -> Optional[tuple[str, str]]:
    """The first numerical term that keeps ``formula`` from being bounded, with
    the reason, or ``None``."""
    names = frozenset(variables)
    for term in formula_terms(formula):
        if isinstance(term, Var):
            if term.name not in names:
                return term.name, "undeclared variable"
            continue
        if not is_ground(term):
            return print_term(term), "variable nested inside a compound term"
        value = eval_simple_term(term)
        if not bounds.contains(value):
            return print_term(term), f"value {value} outside [{bounds.lo}, {bounds.hi}]"
    return None


def is_bounded_formula(formula: Formula, variables: Sequence[str], bounds: TranslationBounds) -> bool:
    return unbounded_term(formula, variables, bounds) is None


def _flatten_atom(atom: Formula, variables: Sequence[str], bounds: TranslationBounds) -> Formula:
    if isinstance(atom, (Legal, Does)):
        action = GroundAction(
            agent=atom.agent,
            name=atom.action,
            args=tuple(eval_simple_term(z) for z in atom.args),
        )
        return type(atom)(atom.agent, flat_ground_action(action).name)
    if isinstance(atom, Vals):
        if not atom.items:
            return equal(bounds.lo, bounds.lo)
        return big_and(
            value_prop(x, eval_simple_term(z)) for x, z in zip(variables, atom.items)
        )
    if isinstance(atom, Comparison):
        left, right = eval_simple_term(atom.left), eval_simple_term(atom.right)
        if isinstance(atom, Gt):
            return bigger(left, right)
        if isinstance(atom, Lt):
            return smaller(left, right)
        if isinstance(atom, Eq):
            return equal(left, right)
    if isinstance(atom, Prop) or not _atom_terms(atom):
        return atom
    raise TranslationError(f"cannot translate {atom!r}")


def translate_formula_complete(
    formula: Formula,
    variables: Sequence[str],
    bounds: TranslationBounds,
    desugared: bool = True,
) -> Formula:
    """GDL formula for a bounded formula: ground the variables, fold the terms
    and turn numerical atoms into propositions.

    With ``desugared=False`` the ``or`` introduced by grounding is kept.

    Raises:
        UnboundedFormulaError: ``formula`` is not bounded.
    """
    problem = unbounded_term(formula, variables, bounds)
    if problem is not None:
        raise UnboundedFormulaError(*problem)
    grounded = remove_var(formula, variables, bounds)
    if desugared:
        grounded = desugar(grounded)

    def rewrite(node: Formula, children: tuple[Formula, ...]) -> Formula:
        if children:
            return with_children(node, children)
        if isinstance(node, (Chain, Comparison)) and type(node) not in (Gt, Lt, Eq):
            return rebuild(desugar(node), rewrite)
        return _flatten_atom(node, variables, bounds)

    return rebuild(grounded, rewrite)
