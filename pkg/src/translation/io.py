"""Writing translation artifacts: the translated model and path plus the
action-map sidecar.

Action-map lines are ``flatname<TAB>agent<TAB>name<TAB>args`` with the
arguments comma separated.
"""

from pathlib import Path as FilePath
from typing import Optional

from loguru import logger

from src.games.io import dump_model, dump_path
from src.models.game import GroundAction
from src.utils.errors import TranslationError

from .artifacts import GdlArtifacts


def dump_action_map(action_map: dict[GroundAction, str]) -> str:
    lines = []
    for action in sorted(action_map, key=GroundAction.sort_key):
        args = ",".join(str(a) for a in action.args)
        lines.append(f"{action_map[action]}\t{action.agent}\t{action.name}\t{args}")
    return "".join(f"{line}\n" for line in lines)


def parse_action_map(text: str) -> dict[GroundAction, str]:
    """Inverse of :func:`dump_action_map`.

    Raises:
        TranslationError: a line does not have four tab-separated fields.
    """
    mapping: dict[GroundAction, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise TranslationError(f"action map line {lineno}: expected 4 tab-separated fields")
        flat, agent, name, args = fields
        try:
            values = tuple(int(a) for a in args.split(",") if a.strip())
        except ValueError:
            raise TranslationError(f"action map line {lineno}: parameters must be integers") from None
        mapping[GroundAction(agent=agent, name=name, args=values)] = flat
    return mapping


def load_action_map(path: str | FilePath) -> dict[GroundAction, str]:
    path = FilePath(path)
    logger.info(f"Loading action map from {path}")
    return parse_action_map(path.read_text(encoding="utf-8"))


def save_artifacts(
    artifacts: GdlArtifacts, out_dir: str | FilePath, stem: str
) -> dict[str, FilePath]:
    """Write ``<stem>.gdl.model``, ``<stem>.gdl.path`` (when there is a
    path) and ``<stem>.actions`` into ``out_dir``."""
    out_dir = FilePath(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: dict[str, FilePath] = {}
    files: dict[str, Optional[str]] = {
        "model": dump_model(artifacts.model),
        "path": dump_path(artifacts.path) if artifacts.path is not None else None,
        "actions": dump_action_map(artifacts.action_map),
    }
    suffixes = {"model": ".gdl.model", "path": ".gdl.path", "actions": ".actions"}
    for kind, text in files.items():
        if text is None:
            continue
        target = out_dir / f"{stem}{suffixes[kind]}"
        target.write_text(text, encoding="utf-8")
        written[kind] = target
    logger.info(f"Wrote {len(written)} translation files to {out_dir}")
    return written
