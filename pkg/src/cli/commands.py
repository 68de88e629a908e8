"""Sub-command handlers. Each takes the parsed arguments and returns the exit
code; library errors propagate to :func:`src.cli.main.main`."""

import sys
from argparse import Namespace
from pathlib import Path as FilePath
from typing import Optional, TextIO

from loguru import logger

from src.evaluation import EvalContext, first_failing_stage, holds, is_globally_true, is_model_of
from src.games import (
    build_path,
    enumerate_complete_paths,
    legal_actions,
    load_model,
    load_path,
    make_nim,
    parse_joint_action,
    save_model,
)
from src.logic import (
    check_conformance,
    desugar,
    load_rules,
    parse_formula,
    print_formula,
    save_rules,
)
from src.models.formula import Formula, RuleSet
from src.models.game import JointAction
from src.models.path import Path
from src.models.st_model import STModel
from src.reporting import (
    BoundsContext,
    PathContext,
    render_report,
    report_table,
    succinctness_report,
)
from src.translation import (
    GdlArtifacts,
    TranslationBounds,
    bounds_span,
    save_artifacts,
    translate_formula_complete,
    translate_formula_path,
    translate_model_complete,
    translate_model_path,
    translate_path_complete,
)
from src.utils.config import settings
from src.utils.errors import EvaluationError, GdlzError, ModelError, UsageError

from .render import format_actions, format_state, format_trace, result_line

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _emit(lines: list[str] | str, out: TextIO) -> None:
    if isinstance(lines, str):
        lines = [lines]
    for line in lines:
        print(line, file=out)


def _parse_ints(text: str, option: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ModelError(f"{option} expects comma-separated integers, got {text!r}") from None


def _stage(args: Namespace) -> int:
    return args.stage if args.stage is not None else 0


# flags


def _reject(args: Namespace, context: str, *flags: str) -> None:
    given = [
        f"--{flag.replace('_', '-')}"
        for flag in flags
        if getattr(args, flag) is not None and getattr(args, flag) is not False
    ]
    if given:
        raise UsageError(f"{', '.join(given)} cannot be used {context}")


def validate_flags(args: Namespace) -> None:
    """Reject missing or conflicting flags before any file is read.

    Conflicts are reported before missing flags.

    Raises:
        UsageError: the flags do not describe one thing to do.
    """
    if args.command == "run":
        if not args.enumerate:
            _reject(args, "without --enumerate", "max_depth", "workers")
        if not args.interactive:
            _reject(args, "without --interactive", "rules")
    elif args.command == "check":
        if args.is_model_of:
            _reject(args, "with --is-model-of", "path", "stage", "is_global")
        elif args.path is None:
            if not args.is_global:
                raise UsageError("--stage needs --path")
        else:
            _reject(args, "with --path", "max_depth")
    elif args.command == "translate":
        if args.mode == "path":
            _reject(args, "in path mode", "zmin", "zmax")
            if args.path is None:
                raise UsageError("path mode needs --path")
        else:
            _reject(args, "in complete mode", "stage")
            if args.zmin is None or args.zmax is None:
                raise UsageError("complete mode needs --zmin and --zmax")
    elif args.command == "analyze":
        if args.mode == "path":
            _reject(args, "in path mode", "vars", "zmin", "zmax")
            if not (args.model and args.path):
                raise UsageError("path mode needs --model and --path")
        else:
            _reject(args, "in complete mode", "path", "stage")
            if args.zmin is None or args.zmax is None:
                raise UsageError("complete mode needs --zmin and --zmax")
            if (args.vars is None) == (args.model is None):
                raise UsageError("complete mode needs --vars or --model, not both")


# parse


def cmd_parse(args: Namespace, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    signature = load_model(args.signature).signature if args.signature else None
    if args.rules:
        ruleset = load_rules(args.rules)
        formulas = list(ruleset.rules)
    else:
        formulas = [parse_formula(args.formula)]
    failed = False
    for index, formula in enumerate(formulas, start=1):
        prefix = f"{index}: " if args.rules else ""
        _emit(f"{prefix}{print_formula(formula)}", out)
        if args.desugar:
            _emit(f"{prefix}core: {print_formula(desugar(formula))}", out)
        if signature is not None:
            problems = check_conformance(formula, signature)
            for problem in problems:
                _emit(f"{prefix}conformance: {problem}", out)
            failed = failed or bool(problems)
    if signature is not None and not failed:
        _emit("conformance: ok", out)
    return EXIT_FAILED if failed else EXIT_OK


# nim


def cmd_nim(args: Namespace, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    gammas = _parse_ints(args.heaps, "--heaps")
    _, model, rules = make_nim(gammas)
    out_dir = FilePath(args.out or settings.data_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model_file = save_model(model, out_dir / f"{rules.name}.model")
    rules_file = save_rules(rules, out_dir / f"{rules.name}.rules")
    _emit([f"wrote {model_file}", f"wrote {rules_file}"], out)
    return EXIT_OK


# run


def _rule_verdicts(model: STModel, path: Path, rules: Optional[RuleSet]) -> list[str]:
    if rules is None:
        return []
    ctx = EvalContext(model, path, path.length)
    lines = []
    for index, rule in enumerate(rules.rules, start=1):
        value = holds(ctx, rule)
        lines.append(f"  rule {index}: {'true' if value else 'false'}")
    return lines


def _interactive(model: STModel, rules: Optional[RuleSet], stdin: TextIO, out: TextIO) -> int:
    joints: list[JointAction] = []
    path = build_path(model, joints)
    while True:
        w = path.final
        _emit(f"stage {path.length}: {format_state(model, w)}", out)
        if model.is_terminal(w):
            _emit(format_trace(path)[-1], out)
            return EXIT_OK
        _emit(f"  legal: {format_actions(legal_actions(model, w))}", out)
        print("> ", end="", file=out, flush=True)
        line = stdin.readline()
        if not line or line.strip() in ("quit", "exit"):
            _emit(format_trace(path)[-1], out)
            return EXIT_OK
        if not line.strip():
            continue
        try:
            joint = parse_joint_action(line, model.signature.agents)
            path = build_path(model, joints + [joint])
        except GdlzError as exc:
            _emit(f"  error: {exc}", out)
            continue
        joints.append(joint)
        _emit(_rule_verdicts(model, path, rules), out)


def cmd_run(
    args: Namespace, out: Optional[TextIO] = None, stdin: Optional[TextIO] = None
) -> int:
    out = out or sys.stdout
    model = load_model(args.model)
    if args.actions:
        path = load_path(args.actions, model)
        _emit(format_trace(path), out)
        return EXIT_OK
    if args.enumerate:
        max_depth = args.max_depth if args.max_depth is not None else settings.max_depth
        enumeration = enumerate_complete_paths(model, max_depth, workers=args.workers or settings.workers)
        for index, path in enumerate(enumeration, start=1):
            _emit(f"path {index}:", out)
            _emit([f"  {line}" for line in format_trace(path)], out)
        suffix = " (truncated)" if enumeration.truncated else ""
        _emit(f"{len(enumeration)} complete paths{suffix}", out)
        return EXIT_OK
    rules = load_rules(args.rules) if args.rules else None
    return _interactive(model, rules, stdin or sys.stdin, out)


# check


def cmd_check(args: Namespace, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    model = load_model(args.model)
    if args.is_model_of:
        rules = load_rules(args.is_model_of)
        max_depth = args.max_depth if args.max_depth is not None else settings.max_depth
        verdict = is_model_of(model, rules, max_depth, workers=settings.workers)
        good = None if verdict.status == "inconclusive" else verdict.holds
        _emit([result_line(verdict.status, good), verdict.summary()], out)
        if verdict.status == "fails":
            _emit(f"rule: {verdict.rule}", out)
            _emit(format_trace(verdict.path), out)
        return EXIT_OK if verdict.holds else EXIT_FAILED

    formula = parse_formula(args.formula)
    if args.path is None:
        max_depth = args.max_depth if args.max_depth is not None else settings.max_depth
        verdict = is_globally_true(model, formula, max_depth)
        good = None if verdict.status == "inconclusive" else verdict.holds
        _emit([result_line(verdict.status, good), verdict.summary()], out)
        return EXIT_OK if verdict.holds else EXIT_FAILED

    path = load_path(args.path, model)
    if args.is_global:
        if not path.is_complete:
            raise EvaluationError("--global needs a complete path")
        failing = first_failing_stage(model, path, formula)
        value = failing is None
        _emit(result_line("true" if value else "false", value), out)
        if failing is not None:
            _emit(f"first failing stage: {failing}", out)
    else:
        value = holds(EvalContext(model, path, _stage(args)), formula)
        _emit(result_line("true" if value else "false", value), out)
    return EXIT_OK if value else EXIT_FAILED


# translate


def _warn_span(artifacts: GdlArtifacts) -> None:
    span = bounds_span(artifacts.bounds)
    if span > settings.bounds_warning_span:
        logger.warning(
            f"Bounds span {span} values; the order propositions grow quadratically"
        )


def _formulas(args: Namespace) -> list[Formula]:
    if args.formula:
        return [parse_formula(args.formula)]
    if args.rules:
        return list(load_rules(args.rules).rules)
    return []


def cmd_translate(args: Namespace, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    model = load_model(args.model)
    formulas = _formulas(args)
    if args.mode == "path":
        source_path = load_path(args.path, model)
        artifacts = translate_model_path(model, source_path)
        translated = [translate_formula_path(f, source_path, _stage(args)) for f in formulas]
    else:
        bounds = TranslationBounds(zmin=args.zmin, zmax=args.zmax)
        artifacts = translate_model_complete(model, bounds)
        if args.path:
            source_path = load_path(args.path, model)
            artifacts = artifacts.with_path(translate_path_complete(source_path, artifacts))
        translated = [
            translate_formula_complete(f, model.signature.vars, bounds) for f in formulas
        ]
    artifacts = artifacts.declaring(translated)
    _warn_span(artifacts)

    gdl = artifacts.model
    actions = sum(len(acts) for acts in gdl.action_space().values())
    _emit(
        [
            f"mode: {artifacts.mode}",
            f"states: {len(gdl.states())}",
            f"actions: {actions}",
            f"propositions: {len(gdl.signature.props)}",
        ],
        out,
    )
    if artifacts.path is not None:
        _emit(f"path: {' | '.join(str(j) for j in artifacts.path.joints) or '(empty)'}", out)
    for formula in translated:
        _emit(print_formula(formula), out)

    if args.out:
        stem = FilePath(args.model).stem
        written = save_artifacts(artifacts, args.out, stem)
        if translated:
            written["rules"] = save_rules(
                RuleSet(name=f"{stem}_gdl", rules=tuple(translated)),
                FilePath(args.out) / f"{stem}.gdl.rules",
            )
        for target in written.values():
            _emit(f"wrote {target}", out)
    return EXIT_OK


# analyze


def cmd_analyze(args: Namespace, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    rules = load_rules(args.rules)
    if args.mode == "path":
        model = load_model(args.model)
        context: PathContext | BoundsContext = PathContext(
            model, load_path(args.path, model), _stage(args)
        )
    else:
        if args.vars is not None:
            variables = tuple(v.strip() for v in args.vars.split(",") if v.strip())
        else:
            variables = load_model(args.model).signature.vars
        context = BoundsContext(variables, TranslationBounds(zmin=args.zmin, zmax=args.zmax))
    report = succinctness_report(rules, args.mode, context)
    if args.format == "kv":
        _emit(render_report(report), out)
    else:
        _emit(report_table([report]).to_string(index=False), out)
        for note in report.notes:
            _emit(f"note: {note}", out)
    return EXIT_OK if report.inequality_holds else EXIT_FAILED
