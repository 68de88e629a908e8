"""Exception hierarchy shared by every package."""

from typing import Optional


class GdlzError(Exception):
    """Base class for all library errors."""


class GdlzSyntaxError(GdlzError):
    """Formula or file text does not follow the grammar."""

    def __init__(
        self,
        message: str,
        line: int = 1,
        column: int = 1,
        expected: str = "",
        text: str = "",
    ) -> None:
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        self.text = text
        detail = f"line {line}, column {column}: {message}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class IntegerOverflowError(GdlzSyntaxError):
    """Integer literal outside the signed 64-bit range."""


class ConformanceError(GdlzError):
    """A formula uses names or shapes the signature does not declare."""

    def __init__(self, problems: list[str]) -> None:
        self.problems = problems
        super().__init__("; ".join(problems))


class UsageError(GdlzError):
    """Missing or conflicting command-line flags."""


class ModelError(GdlzError):
    """Malformed model, unknown state handle or undefined update."""


class PathError(GdlzError):
    """A sequence of joint actions does not form a path."""


class IllegalActionError(PathError):
    """An agent's action is not legal at the stage it is taken."""

    def __init__(self, stage: int, agent: str, action: str) -> None:
        self.stage = stage
        self.agent = agent
        self.action = action
        super().__init__(f"illegal action {action} for agent {agent} at stage {stage}")


class TerminalReachedError(PathError):
    """The path tries to continue past a terminal state."""

    def __init__(self, stage: int) -> None:
        self.stage = stage
        super().__init__(f"state at stage {stage} is terminal; the path cannot be extended")


class EvaluationError(GdlzError):
    """A formula or term cannot be evaluated in the given context."""


class TranslationError(GdlzError):
    """A model, path or formula cannot be translated."""


class IncompletePathError(TranslationError):
    """The translation requires a complete path."""


class BoundsViolationError(TranslationError):
    """A model is not finite with respect to the requested bounds."""

    def __init__(self, condition: str, detail: str) -> None:
        self.condition = condition
        super().__init__(f"finite-model condition ({condition}) violated: {detail}")


class UnboundedFormulaError(TranslationError):
    """A formula is not bounded and has no complete translation."""

    def __init__(self, term: str, reason: Optional[str] = None) -> None:
        self.term = term
        super().__init__(f"unsupported bounded formula term {term}" + (f": {reason}" if reason else ""))
