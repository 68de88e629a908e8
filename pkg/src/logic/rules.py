"""Rule files: one formula per line, ``#`` comments and blank lines ignored."""

from pathlib import Path

from loguru import logger

from src.models.formula import RuleSet
from src.utils.errors import GdlzSyntaxError

from .parser import parse_formula
from .printer import print_formula


def parse_rules(text: str, name: str = "rules") -> RuleSet:
    """Parse rule-file text; syntax errors report the line of the file."""
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rules.append(parse_formula(line))
        except GdlzSyntaxError as exc:
            offset = len(raw) - len(raw.lstrip())
            raise GdlzSyntaxError(
                exc.message,
                line=lineno,
                column=exc.column + offset,
                expected=exc.expected,
                text=raw,
            ) from None
    return RuleSet(name=name, rules=tuple(rules))


def load_rules(path: str | Path) -> RuleSet:
    path = Path(path)
    logger.info(f"Loading rules from {path}")
    ruleset = parse_rules(path.read_text(encoding="utf-8"), name=path.stem)
    logger.debug(f"{len(ruleset.rules)} rules in {ruleset.name}")
    return ruleset


def dump_rules(ruleset: RuleSet) -> str:
    lines = [f"# {ruleset.name}"]
    lines.extend(print_formula(rule) for rule in ruleset.rules)
    return "\n".join(lines) + "\n"


def save_rules(ruleset: RuleSet, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(dump_rules(ruleset), encoding="utf-8")
    logger.info(f"Wrote {len(ruleset.rules)} rules to {path}")
    return path
