"""Path construction, path enumeration and model validation."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from loguru import logger

from src.models.game import GroundAction, JointAction
from src.models.path import Path
from src.models.st_model import ExtensionalModel, State, STModel
from src.utils.errors import IllegalActionError, ModelError, PathError, TerminalReachedError


def legal_actions(model: STModel, w: State) -> frozenset[GroundAction]:
    model.require_state(w)
    return model.legal_actions(w)


def step(model: STModel, w: State, joint: JointAction) -> State:
    return model.update(w, joint)


def joint_actions(model: STModel, w: State) -> list[JointAction]:
    """Every joint action built from legal components, in sorted order."""
    legal = legal_actions(model, w)
    per_agent = [
        sorted((a for a in legal if a.agent == agent), key=GroundAction.sort_key)
        for agent in model.signature.agents
    ]
    return [JointAction(actions=combo) for combo in product(*per_agent)]


def _check_joint(model: STModel, w: State, joint: JointAction, stage: int) -> None:
    if joint.agents() != model.signature.agents:
        raise PathError(
            f"joint action {joint} at stage {stage} must list one action per agent "
            f"in the order {', '.join(model.signature.agents)}"
        )
    for action in joint.actions:
        if not model.is_legal(w, action):
            raise IllegalActionError(stage, action.agent, str(action))


def build_path(model: STModel, joints: Sequence[JointAction]) -> Path:
    """Fold the update function over ``joints`` from the initial state.

    Raises:
        IllegalActionError: an action is not legal at the stage it is taken.
        TerminalReachedError: the sequence continues past a terminal state.
    """
    w = model.initial
    states = [w]
    for stage, joint in enumerate(joints):
        if model.is_terminal(w):
            raise TerminalReachedError(stage)
        _check_joint(model, w, joint, stage)
        w = model.update(w, joint)
        states.append(w)
    return Path(model=model, states=tuple(states), joints=tuple(joints))


def validate_path(model: STModel, path: Path) -> list[str]:
    """Stage-by-stage path check; empty iff ``path`` is a path of ``model``."""
    problems: list[str] = []
    if len(path.states) != len(path.joints) + 1:
        return [f"{len(path.states)} states do not fit {len(path.joints)} joint actions"]
    if path.states[0] != model.initial:
        problems.append(f"stage 0 state {model.state_id(path.states[0])} is not the initial state")
    for stage, joint in enumerate(path.joints):
        w = path.states[stage]
        if not model.has_state(w):
            problems.append(f"stage {stage}: unknown state {w!r}")
            continue
        if model.is_terminal(w):
            problems.append(f"stage {stage}: state {model.state_id(w)} is terminal")
        if joint.agents() != model.signature.agents:
            problems.append(f"stage {stage}: joint action {joint} does not match the agents")
            continue
        for action in joint.actions:
            if not model.is_legal(w, action):
                problems.append(f"stage {stage}: action {action} is not legal")
        try:
            successor = model.update(w, joint)
        except ModelError as exc:
            problems.append(f"stage {stage}: {exc}")
            continue
        if successor != path.states[stage + 1]:
            problems.append(
                f"stage {stage + 1}: state {model.state_id(path.states[stage + 1])} "
                f"is not the update {model.state_id(successor)}"
            )
    return problems


@dataclass
class PathEnumeration:
    """Complete paths found by depth-first search, with the truncation flag."""

    paths: list[Path] = field(default_factory=list)
    truncated: bool = False

    def __iter__(self) -> Iterator[Path]:
        return iter(self.paths)

    def __len__(self) -> int:
        return len(self.paths)


def _search(
    model: STModel,
    states: tuple[State, ...],
    joints: tuple[JointAction, ...],
    max_depth: int,
) -> PathEnumeration:
    result = PathEnumeration()
    stack = [(states, joints)]
    while stack:
        states, joints = stack.pop()
        w = states[-1]
        if model.is_terminal(w):
            result.paths.append(Path(model=model, states=states, joints=joints))
            continue
        if len(joints) >= max_depth:
            result.truncated = True
            continue
        successors = [
            (states + (model.update(w, joint),), joints + (joint,))
            for joint in joint_actions(model, w)
        ]
        stack.extend(reversed(successors))
    return result


def _search_branch(args: tuple) -> PathEnumeration:
    return _search(*args)


def enumerate_complete_paths(
    model: STModel, max_depth: int, workers: int = 1
) -> PathEnumeration:
    """Every complete path of length at most ``max_depth``, each exactly once.

    Paths come out in depth-first order over sorted joint actions. With
    ``workers > 1`` the first-level branches are searched in separate
    processes and merged back in the same order.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    logger.info(f"Enumerating complete paths up to depth {max_depth}")
    w0 = model.initial
    if workers <= 1 or model.is_terminal(w0) or max_depth == 0:
        result = _search(model, (w0,), (), max_depth)
    else:
        branches = [
            (model, (w0, model.update(w0, joint)), (joint,), max_depth)
            for joint in joint_actions(model, w0)
        ]
        result = PathEnumeration()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_search_branch, branches):
                result.paths.extend(
                    Path(model=model, states=p.states, joints=p.joints) for p in part.paths
                )
                result.truncated = result.truncated or part.truncated
    if result.truncated:
        logger.warning(f"Path enumeration truncated at depth {max_depth}")
    logger.debug(f"{len(result.paths)} complete paths")
    return result


def validate_model(model: STModel) -> list[str]:
    """Well-formedness diagnostics; empty iff the model is valid."""
    problems: list[str] = []
    signature = model.signature
    try:
        states = list(model.states())
    except ModelError as exc:
        return [str(exc)]
    known = set(states)

    for w in states:
        vals = model.num_val(w)
        if len(vals) != len(signature.vars):
            problems.append(
                f"state {model.state_id(w)} has {len(vals)} values for {len(signature.vars)} variables"
            )
        undeclared = sorted(model.prop_val(w) - signature.props)
        if undeclared:
            problems.append(f"state {model.state_id(w)} has undeclared propositions {undeclared}")
    if model.initial not in known:
        problems.append(f"initial state {model.initial!r} is not a state")

    if isinstance(model, ExtensionalModel):
        problems.extend(_validate_tables(model, known))

    for w in states:
        if model.is_terminal(w):
            continue
        for action in model.legal_actions(w):
            schema = signature.action_schema(action.agent, action.name)
            if schema is None:
                problems.append(f"state {model.state_id(w)}: undeclared action {action}")
            elif schema.arity is not None and schema.arity != len(action.args):
                problems.append(f"state {model.state_id(w)}: action {action} has the wrong arity")
        for joint in joint_actions(model, w):
            try:
                successor = model.update(w, joint)
            except ModelError:
                problems.append(f"state {model.state_id(w)}: update undefined for {joint}")
                continue
            if successor not in known:
                problems.append(
                    f"state {model.state_id(w)}: update for {joint} leaves the state set"
                )
    return problems


def _validate_tables(model: ExtensionalModel, known: set[State]) -> list[str]:
    problems = []
    for w in sorted(model.terminal_states() - known, key=str):
        problems.append(f"terminal state {w!r} is not a state")
    for agent in model.signature.agents:
        for w in sorted(model.goal_states(agent) - known, key=str):
            problems.append(f"goal state {w!r} of {agent} is not a state")
    for w in model.legal_pairs():
        if w not in known:
            problems.append(f"legality given for unknown state {w!r}")
    for (w, joint), target in model.update_table().items():
        if w not in known:
            problems.append(f"update given for unknown state {w!r}")
        if target not in known:
            problems.append(f"update of {w!r} by {joint} leads to unknown state {target!r}")
    return problems
