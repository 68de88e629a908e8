"""Pytest configuration and shared fixtures."""

import pytest

from src.games import build_path, make_nim, save_model
from src.logic import save_rules
from tests.strategies import SAMPLE_JOINTS, SAMPLE_PATH_TEXT


@pytest.fixture(name="nim_5_3")
def nim_5_3_fixture():
    """Signature, model and rules of Nim <5,3>."""
    return make_nim([5, 3])


@pytest.fixture(name="nim_3_2")
def nim_3_2_fixture():
    return make_nim([3, 2])


@pytest.fixture(name="nim_2_2")
def nim_2_2_fixture():
    return make_nim([2, 2])


@pytest.fixture(name="game_path")
def game_path_fixture(nim_5_3):
    """The three-move game <5,3> -> <0,3> -> <0,1> -> <0,0>."""
    _, model, _ = nim_5_3
    return build_path(model, SAMPLE_JOINTS)


@pytest.fixture(name="nim_files")
def nim_files_fixture(tmp_path, nim_5_3):
    """Model, rules and sample path files of Nim <5,3> in a temp directory."""
    _, model, rules = nim_5_3
    model_file = save_model(model, tmp_path / "nim_5_3.model")
    rules_file = save_rules(rules, tmp_path / "nim_5_3.rules")
    path_file = tmp_path / "sample_game.path"
    path_file.write_text(SAMPLE_PATH_TEXT, encoding="utf-8")
    return model_file, rules_file, path_file
