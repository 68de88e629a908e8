"""Atom counts of a GDLZ description against its GDL translation.

Every rule is counted in its core form. Its atoms fall into three groups:

* ``k``: ``vals`` atoms without variables, each becoming ``|X|`` atoms;
* ``kappa``: atoms with variables (complete mode only), each grounded over
  the bounds;
* ``sigma_l``: everything else, translated one atom for one atom.

The report compares the translated count with two predictions. The closed
form charges ``2 * mu**eta`` atoms per variable atom, with ``mu = zmax - zmin``
and ``eta`` the largest number of variable occurrences in one atom. The exact
recount follows the grounding itself: an atom with ``n`` variable occurrences
becomes ``G(n) = (mu + 1) * (G(n - 1) + 1)`` atoms, ``G(0)`` being 1, or
``|X|`` for ``vals``.
"""

from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence, Union

import pandas as pd
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from src.logic.transform import atoms, count_atoms, desugar
from src.models.formula import Comparison, Does, Formula, Legal, RuleSet, Vals
from src.models.path import Path
from src.models.st_model import STModel
from src.models.terms import Var, iter_term
from src.translation.actions import TranslationBounds
from src.translation.bounded import translate_formula_complete
from src.translation.path_restricted import PathFormulaTranslator, path_bounds

Mode = Literal["path", "complete"]


@dataclass(frozen=True)
class PathContext:
    """Translation context of the path-restricted mode."""

    model: STModel
    path: Path
    stage: int = 0


@dataclass(frozen=True)
class BoundsContext:
    """Translation context of the bounded complete mode."""

    vars: tuple[str, ...]
    bounds: TranslationBounds


Context = Union[PathContext, BoundsContext]


class SuccinctnessReport(BaseModel):
    """Counts, predictions and their agreement for one description."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(default="rules", description="Description name")
    mode: Mode
    source_count: int = Field(..., ge=0, description="Atoms of the GDLZ description")
    translated_count: int = Field(..., ge=0, description="Atoms of the translated description")
    vars: int = Field(default=0, ge=0, description="|X|")
    k: int = Field(default=0, ge=0, description="vals atoms without variables")
    kappa: int = Field(default=0, ge=0, description="Atoms with variables")
    eta: int = Field(default=0, ge=0, description="Most variable occurrences in one atom")
    mu: int = Field(default=0, ge=0, description="zmax - zmin")
    sigma_l: int = Field(default=0, ge=0, description="Remaining atoms")
    eligible_rules: int = Field(default=0, ge=0)
    excluded_rules: tuple[int, ...] = Field(default=(), description="1-based indices left out of matching")
    eligible_translated_count: int = Field(default=0, ge=0)
    predicted_count: int = Field(default=0, ge=0, description="Closed-form prediction")
    match: bool = False
    exact_predicted: int = Field(default=0, ge=0, description="Exact grounding recount")
    exact_match: bool = False
    inequality_holds: bool = Field(default=True, description="source <= translated on all rules")
    eligible_inequality_holds: bool = Field(
        default=True, description="source <= translated on eligible rules"
    )
    notes: tuple[str, ...] = ()


def count_description(rules: RuleSet | Iterable[Formula]) -> int:
    """Sum of atom counts over the core form of each rule."""
    formulas = rules.rules if isinstance(rules, RuleSet) else rules
    return sum(count_atoms(desugar(rule)) for rule in formulas)


def variable_occurrences(atom: Formula) -> int:
    if isinstance(atom, (Legal, Does)):
        terms = atom.args
    elif isinstance(atom, Vals):
        terms = atom.items
    elif isinstance(atom, Comparison):
        terms = (atom.left, atom.right)
    else:
        return 0
    return sum(1 for term in terms for node in iter_term(term) if isinstance(node, Var))


def grounded_size(occurrences: int, mu: int, base: int = 1) -> int:
    """Atoms produced by grounding an atom with ``occurrences`` variables."""
    size = base
    for _ in range(occurrences):
        size = (mu + 1) * (size + 1)
    return size


@dataclass
class _Tally:
    k: int = 0
    kappa: int = 0
    eta: int = 0
    sigma_l: int = 0
    exact_grounded: int = 0


def _classify(cores: Sequence[Formula], mode: Mode, mu: int, width: int) -> _Tally:
    tally = _Tally()
    for core in cores:
        for atom in atoms(core):
            n = variable_occurrences(atom)
            if isinstance(atom, Vals) and (n == 0 or mode == "path"):
                tally.k += 1
            elif n and mode == "complete":
                tally.kappa += 1
                tally.eta = max(tally.eta, n)
                base = width if isinstance(atom, Vals) else 1
                tally.exact_grounded += grounded_size(n, mu, base)
            else:
                tally.sigma_l += 1
    return tally


def _translate(
    cores: Sequence[Formula], mode: Mode, context: Context
) -> tuple[list[Formula], list[int]]:
    translated: list[Formula] = []
    excluded: list[int] = []
    for index, core in enumerate(cores, start=1):
        if mode == "path":
            if not isinstance(context, PathContext):
                raise TypeError("path mode needs a PathContext")
            translator = PathFormulaTranslator(context.model, context.path)
            translated.append(translator.translate(core, context.stage))
            if translator.fired:
                excluded.append(index)
        else:
            if not isinstance(context, BoundsContext):
                raise TypeError("complete mode needs a BoundsContext")
            translated.append(translate_formula_complete(core, context.vars, context.bounds))
    return translated, excluded


def _mu_and_width(context: Context) -> tuple[int, int]:
    if isinstance(context, PathContext):
        bounds = path_bounds(context.path)
        mu = bounds.max - bounds.min if bounds else 0
        return mu, len(context.model.signature.vars)
    return context.bounds.mu, len(context.vars)


def succinctness_report(
    rules: RuleSet | Sequence[Formula], mode: Mode, context: Context
) -> SuccinctnessReport:
    """Count a description and its translation and check both predictions.

    The statistics ``k``, ``kappa``, ``eta`` and ``sigma_l`` and both
    predictions cover the eligible rules only; in path mode a rule is not
    eligible when its translation negated a legal atom, replaced a ``next``
    at the final stage or turned an atom with out-of-range values into a
    constant. ``inequality_holds`` compares the counts over all rules.

    Raises:
        TranslationError: a rule has no translation in ``mode``.
    """
    name = rules.name if isinstance(rules, RuleSet) else "rules"
    formulas = rules.rules if isinstance(rules, RuleSet) else tuple(rules)
    cores = [desugar(rule) for rule in formulas]
    logger.info(f"Succinctness report for {name}: {len(cores)} rules, {mode} mode")
    translated, excluded = _translate(cores, mode, context)
    mu, width = _mu_and_width(context)

    eligible = [i for i in range(len(cores)) if i + 1 not in excluded]
    eligible_cores = [cores[i] for i in eligible]
    tally = _classify(eligible_cores, mode, mu, width)
    eligible_source = sum(count_atoms(cores[i]) for i in eligible)
    eligible_translated = sum(count_atoms(translated[i]) for i in eligible)

    predicted = tally.sigma_l + 2 * mu**tally.eta * tally.kappa + width * tally.k
    exact = tally.sigma_l + tally.exact_grounded + width * tally.k
    notes = []
    if excluded:
        notes.append(f"rules {', '.join(map(str, excluded))} excluded from matching")
    if tally.kappa and predicted != exact:
        notes.append("closed form assumes mu**eta groundings, the bounds give (mu+1)**eta")
    if tally.k and width == 0:
        notes.append("vals() over no variables translates to a tautology")
    source_count = sum(count_atoms(core) for core in cores)
    translated_count = sum(count_atoms(f) for f in translated)
    inequality = source_count <= translated_count
    if not inequality:
        logger.warning(f"{name}: translation has fewer atoms than the source")

    report = SuccinctnessReport(
        name=name,
        mode=mode,
        source_count=source_count,
        translated_count=translated_count,
        vars=width,
        k=tally.k,
        kappa=tally.kappa,
        eta=tally.eta,
        mu=mu,
        sigma_l=tally.sigma_l,
        eligible_rules=len(eligible),
        excluded_rules=tuple(excluded),
        eligible_translated_count=eligible_translated,
        predicted_count=predicted,
        match=predicted == eligible_translated,
        exact_predicted=exact,
        exact_match=exact == eligible_translated,
        inequality_holds=inequality,
        eligible_inequality_holds=eligible_source <= eligible_translated,
        notes=tuple(notes),
    )
    logger.debug(f"{name}: source {report.source_count}, translated {report.translated_count}")
    return report


def growth_table(
    rules: RuleSet | Sequence[Formula], variables: Sequence[str], spans: Iterable[int]
) -> pd.DataFrame:
    """Grounding contribution of a description for bounds ``[0, mu]``, one row
    per ``mu`` in ``spans``, with the ratio to the previous row."""
    rows = []
    previous: Optional[int] = None
    for mu in spans:
        context = BoundsContext(vars=tuple(variables), bounds=TranslationBounds(zmin=0, zmax=mu))
        report = succinctness_report(rules, "complete", context)
        contribution = report.translated_count - report.sigma_l - report.vars * report.k
        rows.append(
            {
                "mu": mu,
                "eta": report.eta,
                "kappa": report.kappa,
                "contribution": contribution,
                "closed_form": 2 * mu**report.eta * report.kappa,
                "ratio": contribution / previous if previous else None,
            }
        )
        previous = contribution
    logger.info(f"Growth table over {len(rows)} spans")
    return pd.DataFrame(rows)


def same_game(
    source: RuleSet | Sequence[Formula],
    gdl: RuleSet | Sequence[Formula],
    mode: Mode,
    context: Context,
) -> bool:
    """Whether ``gdl`` is, rule for rule, the translation of ``source``.

    Rules without numerical content must reappear unchanged, ``vals`` rules
    as their value propositions and variable rules as their grounding.
    """
    source_rules = source.rules if isinstance(source, RuleSet) else tuple(source)
    gdl_rules = gdl.rules if isinstance(gdl, RuleSet) else tuple(gdl)
    if len(source_rules) != len(gdl_rules):
        return False
    translated, _ = _translate([desugar(r) for r in source_rules], mode, context)
    return all(desugar(t) == desugar(g) for t, g in zip(translated, gdl_rules))


def render_report(report: SuccinctnessReport) -> str:
    """``key=value`` lines in field order."""
    lines = []
    for key, value in report.model_dump().items():
        if isinstance(value, bool):
            value = str(value).lower()
        elif isinstance(value, (tuple, list)):
            value = ",".join(str(v) for v in value)
        lines.append(f"{key}={value}")
    return "\n".join(lines)


def report_table(reports: Iterable[SuccinctnessReport]) -> pd.DataFrame:
    columns = [
        "name",
        "mode",
        "source_count",
        "translated_count",
        "k",
        "kappa",
        "eta",
        "mu",
        "predicted_count",
        "match",
        "exact_predicted",
        "exact_match",
    ]
    return pd.DataFrame([r.model_dump(include=set(columns)) for r in reports], columns=columns)
