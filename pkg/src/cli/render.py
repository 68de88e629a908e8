"""Plain-text rendering of states, traces and verdicts for the CLI."""

import sys

from src.models.path import Path
from src.models.st_model import State, STModel
from src.models.game import GroundAction
from src.utils.config import settings

GREEN = "\033[32m"
RED = "\033[31m"
YELLOW = "\033[33m"
RESET = "\033[0m"


def paint(text: str, color: str) -> str:
    """Colour ``text`` when colour is enabled and stdout is a terminal."""
    if not settings.color or not sys.stdout.isatty():
        return text
    return f"{color}{text}{RESET}"


def result_line(value: str, good: bool | None) -> str:
    color = YELLOW if good is None else GREEN if good else RED
    return f"RESULT {paint(value, color)}"


def format_state(model: STModel, w: State) -> str:
    props = ",".join(sorted(model.prop_val(w)))
    vals = ",".join(str(v) for v in model.num_val(w))
    return f"{model.state_id(w)} props={props} vals={vals}"


def format_actions(actions: frozenset[GroundAction]) -> str:
    return " ".join(str(a) for a in sorted(actions, key=GroundAction.sort_key))


def winners(model: STModel, w: State) -> list[str]:
    return [agent for agent in model.signature.agents if model.is_goal(agent, w)]


def format_trace(path: Path) -> list[str]:
    model = path.model
    lines = []
    for j, w in enumerate(path.states):
        lines.append(f"stage {j}: {format_state(model, w)}")
        joint = path.theta(j)
        if joint is not None:
            lines.append(f"  do {joint}")
    if path.is_complete:
        won = winners(model, path.final)
        lines.append(f"complete; wins: {', '.join(won) if won else 'none'}")
    else:
        lines.append(f"incomplete at stage {path.length}")
    return lines
