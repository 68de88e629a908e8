"""Line-oriented model and path files.

Model file::

    AGENTS Player1 Player2
    ACTIONS Player1 reduce/2 noop/0
    VARS heap_1 heap_2
    PROPS turn(Player1) turn(Player2)
    STATE s0 props=turn(Player1) vals=5,3
    INITIAL s0
    TERMINAL s9
    GOAL Player1 s9
    LEGAL s0 reduce^Player1(1,5)
    UPDATE s0 (reduce^Player1(1,5);noop^Player2()) -> s1

Path file: one joint action per line, one action per agent separated by
``;``. Both formats ignore blank lines and ``#`` comments.
"""

import re
from collections import defaultdict
from pathlib import Path as FilePath
from typing import Iterable, Optional

from loguru import logger
from pydantic import ValidationError

from src.models.game import ActionSchema, GameSignature, GroundAction, JointAction
from src.models.path import Path
from src.models.st_model import ExtensionalModel, STModel
from src.utils.errors import GdlzSyntaxError, ModelError

from .paths import build_path

GROUND_ACTION = re.compile(
    r"^\s*([A-Za-z_][A-Za-z0-9_]*)\^([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$"
)
UPDATE_LINE = re.compile(r"^\((.*)\)\s*->\s*(\S+)$")
SCHEMA = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)/(\d+|\*)$")


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses; empty text gives no items."""
    items, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            items.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    tail = "".join(current).strip()
    if tail or items:
        items.append(tail)
    return items


def parse_ground_action(text: str) -> GroundAction:
    """Parse ``name^agent(args)``; the argument list may be omitted."""
    match = GROUND_ACTION.match(text)
    if not match:
        raise GdlzSyntaxError(f"malformed ground action {text.strip()!r}", text=text)
    name, agent, args = match.groups()
    try:
        values = tuple(int(a) for a in split_top_level(args or ""))
    except ValueError:
        raise GdlzSyntaxError(
            f"action parameters must be integers in {text.strip()!r}", text=text
        ) from None
    return GroundAction(agent=agent, name=name, args=values)


def parse_joint_action(text: str, agents: Iterable[str]) -> JointAction:
    """Parse ``a^r(..);b^s(..)`` and order the components by ``agents``."""
    actions = [parse_ground_action(part) for part in text.split(";") if part.strip()]
    by_agent = {a.agent: a for a in actions}
    order = tuple(agents)
    if len(by_agent) != len(actions) or set(by_agent) != set(order):
        raise GdlzSyntaxError(
            f"joint action {text.strip()!r} needs exactly one action for each of {', '.join(order)}",
            text=text,
        )
    return JointAction(actions=tuple(by_agent[agent] for agent in order))


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _keyed(field: str, line: str) -> str:
    prefix = f"{field}="
    if not line.startswith(prefix):
        raise ModelError(f"expected {prefix}...")
    return line[len(prefix) :]


def parse_model(text: str) -> ExtensionalModel:
    """Build an extensional model from model-file text.

    Raises:
        ModelError: malformed lines or an inconsistent vocabulary, with the line number.
    """
    agents: tuple[str, ...] = ()
    variables: tuple[str, ...] = ()
    props: set[str] = set()
    schemas: dict[str, list[ActionSchema]] = defaultdict(list)
    valuations: dict[str, tuple[list[str], list[int]]] = {}
    initial: Optional[str] = None
    terminal: list[str] = []
    goals: dict[str, list[str]] = defaultdict(list)
    legal: dict[str, list[GroundAction]] = defaultdict(list)
    raw_updates: list[tuple[int, str, str, str]] = []

    for lineno, line in _content_lines(text):
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if keyword == "AGENTS":
                agents = tuple(rest.split())
            elif keyword == "VARS":
                variables = tuple(rest.split())
            elif keyword == "PROPS":
                props.update(rest.split())
            elif keyword == "ACTIONS":
                agent, *items = rest.split()
                for item in items:
                    match = SCHEMA.match(item)
                    if not match:
                        raise ModelError(f"malformed action schema {item!r}")
                    arity = None if match.group(2) == "*" else int(match.group(2))
                    schemas[agent].append(ActionSchema(name=match.group(1), arity=arity))
            elif keyword == "STATE":
                state_id, prop_part, val_part = rest.split(None, 2)
                prop_list = split_top_level(_keyed("props", prop_part))
                vals = [int(v) for v in split_top_level(_keyed("vals", val_part.strip()))]
                valuations[state_id] = (prop_list, vals)
            elif keyword == "INITIAL":
                initial = rest
            elif keyword == "TERMINAL":
                terminal.extend(rest.split())
            elif keyword == "GOAL":
                agent, *state_ids = rest.split()
                goals[agent].extend(state_ids)
            elif keyword == "LEGAL":
                state_id, action_text = rest.split(None, 1)
                legal[state_id].append(parse_ground_action(action_text))
            elif keyword == "UPDATE":
                state_id, update_text = rest.split(None, 1)
                match = UPDATE_LINE.match(update_text.strip())
                if not match:
                    raise ModelError("expected UPDATE <state> (<joint action>) -> <state>")
                raw_updates.append((lineno, state_id, match.group(1), match.group(2)))
            else:
                raise ModelError(f"unknown section {keyword}")
        except (ValueError, GdlzSyntaxError, ModelError) as exc:
            raise ModelError(f"line {lineno}: {exc}") from None

    if not agents:
        raise ModelError("model file has no AGENTS line")
    if initial is None:
        raise ModelError("model file has no INITIAL line")

    updates = {}
    for lineno, state_id, joint_text, target in raw_updates:
        try:
            joint = parse_joint_action(joint_text, agents)
        except GdlzSyntaxError as exc:
            raise ModelError(f"line {lineno}: {exc}") from None
        updates[(state_id, joint)] = target

    observed = [a for acts in legal.values() for a in acts]
    observed += [a for _, joint in updates for a in joint.actions]
    for agent in agents:
        if agent not in schemas:
            schemas[agent] = _infer_schemas(a for a in observed if a.agent == agent)
    try:
        signature = GameSignature(
            agents=agents,
            actions={agent: tuple(schemas[agent]) for agent in agents},
            props=frozenset(props),
            vars=variables,
        )
    except ValidationError as exc:
        raise ModelError(f"invalid game signature: {exc.errors()[0]['msg']}") from None

    return ExtensionalModel(
        signature=signature,
        valuations=valuations,
        initial=initial,
        terminal=terminal,
        goals=goals,
        legal=legal,
        updates=updates,
    )


def _infer_schemas(actions: Iterable[GroundAction]) -> list[ActionSchema]:
    arities: dict[str, set[int]] = defaultdict(set)
    for action in actions:
        arities[action.name].add(len(action.args))
    return [
        ActionSchema(name=name, arity=next(iter(ns)) if len(ns) == 1 else None)
        for name, ns in sorted(arities.items())
    ]


def load_model(path: str | FilePath) -> ExtensionalModel:
    path = FilePath(path)
    logger.info(f"Loading model from {path}")
    model = parse_model(path.read_text(encoding="utf-8"))
    logger.debug(f"{len(model.states())} states")
    return model


def dump_model(model: STModel) -> str:
    """Model-file text for any finite model; state ids come from ``state_id``."""
    if not isinstance(model, ExtensionalModel):
        model = ExtensionalModel.from_model(model)
    signature = model.signature
    sid = model.state_id
    lines = [f"AGENTS {' '.join(signature.agents)}"]
    for agent in signature.agents:
        lines.append(f"ACTIONS {agent} {' '.join(str(s) for s in signature.actions[agent])}")
    if signature.vars:
        lines.append(f"VARS {' '.join(signature.vars)}")
    if signature.props:
        lines.append(f"PROPS {' '.join(sorted(signature.props))}")
    states = model.states()
    for w in states:
        props = ",".join(sorted(model.prop_val(w)))
        vals = ",".join(str(v) for v in model.num_val(w))
        lines.append(f"STATE {sid(w)} props={props} vals={vals}")
    lines.append(f"INITIAL {sid(model.initial)}")
    terminal = [sid(w) for w in states if model.is_terminal(w)]
    if terminal:
        lines.append(f"TERMINAL {' '.join(terminal)}")
    for agent in signature.agents:
        goal = [sid(w) for w in states if model.is_goal(agent, w)]
        if goal:
            lines.append(f"GOAL {agent} {' '.join(goal)}")
    for w in states:
        for action in sorted(model.legal_actions(w), key=GroundAction.sort_key):
            lines.append(f"LEGAL {sid(w)} {action}")
    for (w, joint), target in model.update_table().items():
        lines.append(f"UPDATE {sid(w)} ({joint}) -> {sid(target)}")
    return "\n".join(lines) + "\n"


def save_model(model: STModel, path: str | FilePath) -> FilePath:
    path = FilePath(path)
    path.write_text(dump_model(model), encoding="utf-8")
    logger.info(f"Wrote model to {path}")
    return path


def parse_joints(text: str, agents: Iterable[str]) -> list[JointAction]:
    agents = tuple(agents)
    joints = []
    for lineno, line in _content_lines(text):
        try:
            joints.append(parse_joint_action(line, agents))
        except GdlzSyntaxError as exc:
            raise GdlzSyntaxError(exc.message, line=lineno, text=line) from None
    return joints


def load_path(path: str | FilePath, model: STModel) -> Path:
    """Read a path file and replay it on ``model``."""
    path = FilePath(path)
    logger.info(f"Loading path from {path}")
    joints = parse_joints(path.read_text(encoding="utf-8"), model.signature.agents)
    return build_path(model, joints)


def dump_path(path: Path) -> str:
    return "".join(f"{joint}\n" for joint in path.joints)
