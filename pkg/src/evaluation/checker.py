"""Satisfaction of formulas along paths and global truth in a model.

:func:`holds` is the register-table model checker: the distinct subformulas
are evaluated bottom-up at one stage, each into its own register, and a
``next`` node evaluates its operand at the following stage. :func:`naive_holds`
is a plain recursive evaluator kept as an oracle.
"""

from dataclasses import dataclass, field
from typing import Literal, Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, InstanceOf

from src.games.paths import enumerate_complete_paths
from src.logic.conformance import check_rules_conformance, ensure_conformance
from src.logic.printer import print_formula
from src.logic.transform import desugar, ordered_subformulas
from src.models.formula import (
    And,
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
    RuleSet,
    Terminal,
    Vals,
    Wins,
)
from src.models.game import GroundAction
from src.models.path import Path
from src.models.st_model import STModel
from src.models.terms import IntLit
from src.utils.errors import ConformanceError, EvaluationError

from .terms import eval_term_values, var_index


@dataclass(frozen=True)
class EvalContext:
    """A model, a path of that model and a stage ``0 <= stage <= len(path)``."""

    model: STModel
    path: Path
    stage: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.stage <= self.path.length:
            raise EvaluationError(
                f"stage {self.stage} is outside the path (length {self.path.length})"
            )

    def at(self, stage: int) -> "EvalContext":
        return EvalContext(self.model, self.path, stage)


def does_atom(action: GroundAction) -> Does:
    return Does(action.agent, action.name, tuple(IntLit(a) for a in action.args))


def legal_atom(action: GroundAction) -> Legal:
    return Legal(action.agent, action.name, tuple(IntLit(a) for a in action.args))


@dataclass
class _Stage:
    props: frozenset[str]
    values: tuple[int, ...]
    registers: dict[int, bool] = field(default_factory=dict)


class PathEvaluator:
    """Register tables for one (model, path) pair, shared across stages and
    formulas so that repeated subformulas are evaluated once per stage."""

    def __init__(self, model: STModel, path: Path) -> None:
        self.model = model
        self.path = path
        self._index = var_index(model)
        self._stages: dict[int, _Stage] = {}
        self._orders: dict[int, list[Formula]] = {}
        # Keeps every evaluated formula alive so register ids stay unique.
        self._roots: list[Formula] = []

    def _stage(self, j: int) -> _Stage:
        stage = self._stages.get(j)
        if stage is None:
            w = self.path.states[j]
            stage = _Stage(self.model.prop_val(w), tuple(self.model.num_val(w)))
            self._stages[j] = stage
        return stage

    def _order(self, formula: Formula) -> list[Formula]:
        order = self._orders.get(id(formula))
        if order is None:
            order = ordered_subformulas(formula)
            self._orders[id(formula)] = order
            self._roots.append(formula)
        return order

    def _ground(self, agent: str, name: str, args, values) -> GroundAction:
        return GroundAction(
            agent=agent,
            name=name,
            args=tuple(eval_term_values(z, self._index, values) for z in args),
        )

    def _atom(self, node: Formula, j: int, stage: _Stage) -> bool:
        w = self.path.states[j]
        if isinstance(node, Prop):
            return node.key in stage.props
        if isinstance(node, Initial):
            return w == self.model.initial
        if isinstance(node, Terminal):
            return self.model.is_terminal(w)
        if isinstance(node, Wins):
            return self.model.is_goal(node.agent, w)
        if isinstance(node, Legal):
            return self.model.is_legal(w, self._ground(node.agent, node.action, node.args, stage.values))
        if isinstance(node, Does):
            taken = self.path.theta_r(j, node.agent)
            if taken is None:
                return False
            return taken == self._ground(node.agent, node.action, node.args, stage.values)
        if isinstance(node, Vals):
            return (
                tuple(eval_term_values(z, self._index, stage.values) for z in node.items)
                == stage.values
            )
        left = eval_term_values(node.left, self._index, stage.values)
        right = eval_term_values(node.right, self._index, stage.values)
        if isinstance(node, Gt):
            return left > right
        if isinstance(node, Lt):
            return left < right
        if isinstance(node, Eq):
            return left == right
        raise EvaluationError(f"not a core formula: {print_formula(node)}")

    def evaluate(self, formula: Formula, j: int) -> bool:
        """Truth of a core formula at stage ``j``."""
        stage = self._stage(j)
        registers = stage.registers
        if id(formula) in registers:
            return registers[id(formula)]
        for node in self._order(formula):
            key = id(node)
            if key in registers:
                continue
            if isinstance(node, Not):
                value = not registers[id(node.operand)]
            elif isinstance(node, And):
                value = registers[id(node.left)] and registers[id(node.right)]
            elif isinstance(node, Next):
                value = j >= self.path.length or self.evaluate(node.operand, j + 1)
            else:
                value = self._atom(node, j, stage)
            registers[key] = value
        return registers[id(formula)]


def _prepare(model: STModel, formula: Formula, check: bool) -> Formula:
    core = desugar(formula)
    if check:
        ensure_conformance(core, model.signature)
    return core


def holds(ctx: EvalContext, formula: Formula, check: bool = True) -> bool:
    """Whether ``formula`` is true at ``ctx.stage`` of ``ctx.path``.

    Extended connectives are desugared first. ``next`` is true at the last
    stage and ``does`` is false there.

    Raises:
        ConformanceError: the formula does not conform to the model's signature.
    """
    core = _prepare(ctx.model, formula, check)
    return PathEvaluator(ctx.model, ctx.path).evaluate(core, ctx.stage)


def naive_holds(ctx: EvalContext, formula: Formula, check: bool = True) -> bool:
    """Recursive-descent evaluation without register tables."""
    core = _prepare(ctx.model, formula, check)
    evaluator = PathEvaluator(ctx.model, ctx.path)

    def sat(node: Formula, j: int) -> bool:
        if isinstance(node, Not):
            return not sat(node.operand, j)
        if isinstance(node, And):
            return sat(node.left, j) and sat(node.right, j)
        if isinstance(node, Next):
            return j >= ctx.path.length or sat(node.operand, j + 1)
        return evaluator._atom(node, j, evaluator._stage(j))

    return sat(core, ctx.stage)


def first_failing_stage(model: STModel, path: Path, formula: Formula, check: bool = True) -> Optional[int]:
    """The first stage where ``formula`` is false, or ``None``."""
    core = _prepare(model, formula, check)
    evaluator = PathEvaluator(model, path)
    for j in path.stages():
        if not evaluator.evaluate(core, j):
            return j
    return None


def _require_complete(path: Path) -> None:
    if not path.is_complete:
        raise EvaluationError("global truth along a path needs a complete path")


def holds_globally_on_path(model: STModel, path: Path, formula: Formula) -> bool:
    """True iff ``formula`` holds at every stage ``0..len(path)``.

    Raises:
        EvaluationError: the path is not complete.
    """
    _require_complete(path)
    return first_failing_stage(model, path, formula) is None


class Verdict(BaseModel):
    """Outcome of a global-truth check over the complete paths of a model."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: Literal["holds", "fails", "inconclusive"]
    paths_checked: int = Field(default=0, description="Complete paths examined")
    rule_index: Optional[int] = Field(default=None, description="1-based index of the failing rule")
    rule: Optional[str] = Field(default=None, description="Failing rule, printed")
    stage: Optional[int] = Field(default=None, description="First stage where the rule is false")
    path: Optional[InstanceOf[Path]] = Field(default=None, description="Counterexample path")

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def summary(self) -> str:
        if self.status == "fails":
            return f"fails: rule {self.rule_index} is false at stage {self.stage}"
        if self.status == "inconclusive":
            return f"inconclusive: enumeration truncated after {self.paths_checked} complete paths"
        return f"holds on {self.paths_checked} complete paths"


def is_model_of(model: STModel, rules: RuleSet, max_depth: int, workers: int = 1) -> Verdict:
    """Check every rule on every complete path of length at most ``max_depth``.

    Raises:
        ConformanceError: a rule does not conform to the model's signature.
    """
    problems = check_rules_conformance(rules, model.signature)
    if problems:
        raise ConformanceError(problems)
    cores = [desugar(rule) for rule in rules.rules]
    enumeration = enumerate_complete_paths(model, max_depth, workers=workers)
    logger.info(f"Checking {len(cores)} rules on {len(enumeration)} complete paths")
    for count, path in enumerate(enumeration, start=1):
        evaluator = PathEvaluator(model, path)
        for j in path.stages():
            for index, core in enumerate(cores, start=1):
                if not evaluator.evaluate(core, j):
                    logger.debug(f"Rule {index} fails at stage {j}")
                    return Verdict(
                        status="fails",
                        paths_checked=count,
                        rule_index=index,
                        rule=print_formula(rules.rules[index - 1]),
                        stage=j,
                        path=path,
                    )
    status = "inconclusive" if enumeration.truncated else "holds"
    return Verdict(status=status, paths_checked=len(enumeration))


def is_globally_true(model: STModel, formula: Formula, max_depth: int) -> Verdict:
    """Global truth of one formula in ``model``."""
    return is_model_of(model, RuleSet(name="formula", rules=(formula,)), max_depth)


def check_does_functional(ctx: EvalContext, action: GroundAction) -> bool:
    """If ``action`` is done at this stage, no other action of its agent is."""
    evaluator = PathEvaluator(ctx.model, ctx.path)
    if not evaluator.evaluate(does_atom(action), ctx.stage):
        return True
    if ctx.model.is_finite:
        candidates = ctx.model.action_space().get(action.agent, frozenset())
    else:
        candidates = ctx.model.legal_actions(ctx.path.states[ctx.stage])
    return not any(
        evaluator.evaluate(does_atom(other), ctx.stage)
        for other in candidates
        if other.agent == action.agent and other != action
    )


def check_does_legal(ctx: EvalContext, action: GroundAction) -> bool:
    """A performed action is legal at its stage."""
    evaluator = PathEvaluator(ctx.model, ctx.path)
    return not evaluator.evaluate(does_atom(action), ctx.stage) or evaluator.evaluate(
        legal_atom(action), ctx.stage
    )
