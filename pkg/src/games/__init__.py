"""Game models: paths, enumeration, the Nim family and file formats."""

from .paths import (
    PathEnumeration,
    build_path,
    enumerate_complete_paths,
    joint_actions,
    legal_actions,
    step,
    validate_model,
    validate_path,
)
from .nim import NimModel, NimState, make_nim, nim_rules
from .io import (
    dump_model,
    dump_path,
    load_model,
    load_path,
    parse_ground_action,
    parse_joint_action,
    parse_joints,
    parse_model,
    save_model,
)

__all__ = [
    "PathEnumeration",
    "build_path",
    "enumerate_complete_paths",
    "joint_actions",
    "legal_actions",
    "step",
    "validate_model",
    "validate_path",
    "NimModel",
    "NimState",
    "make_nim",
    "nim_rules",
    "dump_model",
    "dump_path",
    "load_model",
    "load_path",
    "parse_ground_action",
    "parse_joint_action",
    "parse_joints",
    "parse_model",
    "save_model",
]
