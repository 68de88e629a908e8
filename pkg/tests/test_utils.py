"""Tests for settings, the error hierarchy and logging setup."""

import pytest
from loguru import logger
from pydantic import ValidationError

from src.utils.config import Settings
from src.utils.errors import (
    BoundsViolationError,
    ConformanceError,
    GdlzError,
    GdlzSyntaxError,
    IllegalActionError,
    IncompletePathError,
    IntegerOverflowError,
    PathError,
    TerminalReachedError,
    TranslationError,
    UnboundedFormulaError,
    UsageError,
)
from src.utils.logging import configure_logging


class TestSettings:
    def test_defaults(self, monkeypatch):
        for name in ("GDLZ_LOG_LEVEL", "GDLZ_MAX_DEPTH", "GDLZ_WORKERS", "GDLZ_COLOR"):
            monkeypatch.delenv(name, raising=False)
        settings = Settings(_env_file=None)
        assert settings.log_level == "WARNING"
        assert settings.max_depth == 64
        assert settings.workers == 1
        assert settings.bounds_warning_span == 10_000

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("GDLZ_MAX_DEPTH", "12")
        monkeypatch.setenv("GDLZ_COLOR", "false")
        monkeypatch.setenv("gdlz_log_level", "DEBUG")
        settings = Settings(_env_file=None)
        assert settings.max_depth == 12
        assert settings.color is False
        assert settings.log_level == "DEBUG"

    def test_invalid_values(self, monkeypatch):
        monkeypatch.setenv("GDLZ_WORKERS", "0")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)


class TestErrors:
    def test_hierarchy(self):
        assert issubclass(IntegerOverflowError, GdlzSyntaxError)
        assert issubclass(IllegalActionError, PathError)
        assert issubclass(TerminalReachedError, PathError)
        for cls in (IncompletePathError, BoundsViolationError, UnboundedFormulaError):
            assert issubclass(cls, TranslationError)
        assert issubclass(TranslationError, GdlzError)
        assert issubclass(UsageError, GdlzError)

    def test_messages(self):
        error = GdlzSyntaxError("unexpected end", line=3, column=7, expected="formula")
        assert str(error) == "line 3, column 7: unexpected end (expected formula)"
        assert str(ConformanceError(["a", "b"])) == "a; b"
        assert str(IllegalActionError(2, "Player1", "noop^Player1()")) == (
            "illegal action noop^Player1() for agent Player1 at stage 2"
        )
        assert BoundsViolationError("iii", "too big").condition == "iii"
        assert str(UnboundedFormulaError("add(x,1)", "nested")) == (
            "unsupported bounded formula term add(x,1): nested"
        )
        assert str(UnboundedFormulaError("y")) == "unsupported bounded formula term y"


class TestLogging:
    def test_level_filters_messages(self, capsys):
        configure_logging("info")
        logger.debug("hidden detail")
        logger.info("shown message")
        err = capsys.readouterr().err
        assert "shown message" in err
        assert "hidden detail" not in err
        configure_logging("WARNING")
