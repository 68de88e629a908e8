"""GDLZ to GDL translation: path-restricted, bounded complete, and the
embedding of GDL models back into GDLZ."""

from .actions import (
    PathBounds,
    TranslationBounds,
    bigger,
    bounds_span,
    build_action_map,
    equal,
    flat_joint,
    flatten_action,
    order_props,
    order_vocabulary,
    smaller,
    unflatten_action,
    value_prop,
)
from .artifacts import GdlArtifacts
from .bounded import (
    FlattenedModel,
    eval_simple_term,
    finite_model_violations,
    is_bounded_formula,
    is_finite_model,
    remove_var,
    translate_formula_complete,
    translate_model_complete,
    translate_path_complete,
    unbounded_term,
)
from .embedding import EmbeddedModel, embed_gdl
from .io import dump_action_map, load_action_map, parse_action_map, save_artifacts
from .path_restricted import (
    DECIDED,
    LAST_NEXT,
    LEGAL_ELSE,
    PathFormulaTranslator,
    actions_of_path,
    path_bounds,
    translate_formula_path,
    translate_model_path,
    translate_path,
)

__all__ = [
    "PathBounds",
    "TranslationBounds",
    "bigger",
    "bounds_span",
    "build_action_map",
    "equal",
    "flat_joint",
    "flatten_action",
    "order_props",
    "order_vocabulary",
    "smaller",
    "unflatten_action",
    "value_prop",
    "GdlArtifacts",
    "FlattenedModel",
    "eval_simple_term",
    "finite_model_violations",
    "is_bounded_formula",
    "is_finite_model",
    "remove_var",
    "translate_formula_complete",
    "translate_model_complete",
    "translate_path_complete",
    "unbounded_term",
    "EmbeddedModel",
    "embed_gdl",
    "dump_action_map",
    "load_action_map",
    "parse_action_map",
    "save_artifacts",
    "DECIDED",
    "LAST_NEXT",
    "LEGAL_ELSE",
    "PathFormulaTranslator",
    "actions_of_path",
    "path_bounds",
    "translate_formula_path",
    "translate_model_path",
    "translate_path",
]
