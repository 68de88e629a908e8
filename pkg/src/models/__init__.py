"""Domain types: terms, formulas, signatures, models and paths."""

from .terms import NumTerm, IntLit, Var, Add, Sub, Min, Max, NumList
from .formula import (
    Formula,
    Prop,
    Initial,
    Terminal,
    Wins,
    Legal,
    Does,
    Not,
    And,
    Next,
    Gt,
    Lt,
    Eq,
    Vals,
    Or,
    Implies,
    Iff,
    Top,
    Bottom,
    Le,
    Ge,
    Ne,
    Chain,
    Comparison,
    RuleSet,
    is_atomic,
)
from .game import ActionSchema, GameSignature, GroundAction, JointAction
from .st_model import State, STModel, ExtensionalModel
from .path import Path

__all__ = [
    "NumTerm",
    "IntLit",
    "Var",
    "Add",
    "Sub",
    "Min",
    "Max",
    "NumList",
    "Formula",
    "Prop",
    "Initial",
    "Terminal",
    "Wins",
    "Legal",
    "Does",
    "Not",
    "And",
    "Next",
    "Gt",
    "Lt",
    "Eq",
    "Vals",
    "Or",
    "Implies",
    "Iff",
    "Top",
    "Bottom",
    "Le",
    "Ge",
    "Ne",
    "Chain",
    "Comparison",
    "RuleSet",
    "is_atomic",
    "ActionSchema",
    "GameSignature",
    "GroundAction",
    "JointAction",
    "State",
    "STModel",
    "ExtensionalModel",
    "Path",
]
