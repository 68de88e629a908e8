"""Tests for the path-restricted and bounded complete translations into GDL."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.evaluation import EvalContext, holds
from src.games import NimModel, build_path, validate_model, validate_path
from src.games.nim import PLAYERS
from src.logic import count_atoms, desugar, is_gdl, parse_formula
from src.models import GroundAction, JointAction, Path
from src.models.formula import And, Initial, Legal, Lt, Next, Not, Or, Prop, Vals, iter_formula
from src.models.terms import Add, IntLit, Var
from src.translation import (
    DECIDED,
    LAST_NEXT,
    LEGAL_ELSE,
    EmbeddedModel,
    PathFormulaTranslator,
    TranslationBounds,
    actions_of_path,
    bigger,
    build_action_map,
    dump_action_map,
    embed_gdl,
    equal,
    eval_simple_term,
    finite_model_violations,
    flatten_action,
    is_bounded_formula,
    is_finite_model,
    load_action_map,
    order_props,
    order_vocabulary,
    parse_action_map,
    path_bounds,
    remove_var,
    save_artifacts,
    smaller,
    translate_formula_complete,
    translate_formula_path,
    translate_model_complete,
    translate_model_path,
    translate_path_complete,
    unflatten_action,
    value_prop,
)
from src.logic.transform import core_top
from src.utils.errors import (
    BoundsViolationError,
    ConformanceError,
    IncompletePathError,
    ModelError,
    TranslationError,
    UnboundedFormulaError,
)
from tests.strategies import (
    BOUNDED,
    FREE,
    P1,
    P2,
    SAMPLE_JOINTS,
    FormulaGenerator,
    Vocabulary,
    nim_vocabulary,
    noop,
    random_path,
    reduce,
)

HEAPS = ("heap_1", "heap_2")
SMALL = TranslationBounds(zmin=0, zmax=2)


def flat(action: GroundAction) -> GroundAction:
    return GroundAction(agent=action.agent, name=flatten_action(action))


class NarrowNim(NimModel):
    """Nim whose declared action space leaves out every reduce."""

    def action_space(self):
        return {agent: frozenset([noop(agent)]) for agent in PLAYERS}


class SymbolicNim(NimModel):
    @property
    def is_finite(self) -> bool:
        return False


class TestActionNames:
    def test_flatten(self):
        assert flatten_action(reduce(P1, 1, 5)) == "reduce__Player1__1_5"
        assert flatten_action(noop(P2)) == "noop__Player2__"
        assert flatten_action(GroundAction.of("move", "r", -2, 3)) == "move__r__m2_3"

    def test_unflatten(self):
        assert unflatten_action("move__r__m2_3") == GroundAction.of("move", "r", -2, 3)
        assert unflatten_action("noop__Player2__") == noop(P2)
        with pytest.raises(TranslationError):
            unflatten_action("reduce")

    @given(
        st.from_regex(r"[a-z][a-z0-9]{0,6}", fullmatch=True),
        st.from_regex(r"[A-Z][A-Za-z0-9]{0,6}", fullmatch=True),
        st.lists(st.integers(min_value=-(2**63), max_value=2**63 - 1), max_size=4),
    )
    def test_flattening_is_injective(self, name, agent, args):
        action = GroundAction(agent=agent, name=name, args=tuple(args))
        assert unflatten_action(flatten_action(action)) == action

    def test_collision_is_reported(self):
        clash = [GroundAction.of("a", "b__c"), GroundAction.of("a__b", "c")]
        with pytest.raises(TranslationError):
            build_action_map(clash)

    def test_order_props(self):
        props = order_props(0, 2)
        assert len(props) == 13
        assert {"smaller(0,2)", "bigger(2,1)", "equal(1,1)", "succ(0,1)", "prec(2,1)"} <= props
        assert "smaller(2,0)" not in props

    def test_order_vocabulary(self):
        vocabulary = order_vocabulary(0, 2)
        assert len(vocabulary) == 45
        assert order_props(0, 2) <= vocabulary
        assert {"smaller(2,0)", "bigger(0,2)", "equal(0,1)", "succ(2,0)"} <= vocabulary

    def test_action_map_files(self, tmp_path):
        mapping = build_action_map([noop(P2), reduce(P1, 1, 5), GroundAction.of("move", "r", -2)])
        text = dump_action_map(mapping)
        assert text.splitlines()[0] == "reduce__Player1__1_5\tPlayer1\treduce\t1,5"
        assert "noop__Player2__\tPlayer2\tnoop\t" in text.splitlines()
        assert parse_action_map(text) == mapping
        target = tmp_path / "game.actions"
        target.write_text(text, encoding="utf-8")
        assert load_action_map(target) == mapping
        with pytest.raises(TranslationError):
            parse_action_map("a\tb\n")


class TestPathModel:
    def test_bounds(self, game_path, nim_5_3):
        _, model, _ = nim_5_3
        bounds = path_bounds(game_path)
        assert (bounds.min, bounds.max) == (0, 5)
        empty = build_path(model, [])
        assert (path_bounds(empty).min, path_bounds(empty).max) == (3, 5)
        assert len(actions_of_path(game_path)) == 5

    def test_translated_model(self, game_path, nim_5_3):
        _, model, _ = nim_5_3
        art = translate_model_path(model, game_path)
        gdl = art.model
        assert art.mode == "path"
        assert gdl.signature.vars == ()
        assert len(gdl.states()) == 4
        assert sum(len(a) for a in gdl.action_space().values()) == 18
        assert len(gdl.signature.props) == 194
        assert len(art.action_map) == 5
        w0, final = game_path.states[0], game_path.final
        assert {"turn(Player1)", "heap_1(5)", "heap_2(3)", "bigger(5,3)"} <= gdl.prop_val(w0)
        assert gdl.num_val(w0) == ()
        assert gdl.legal_actions(w0) == {flat(reduce(P1, 1, 5)), flat(noop(P2))}
        assert gdl.is_terminal(final)
        assert not gdl.is_terminal(w0)
        assert gdl.is_goal(P1, final) and not gdl.is_goal(P2, final)
        assert validate_model(gdl) == []

    def test_translated_path(self, game_path, nim_5_3):
        _, model, _ = nim_5_3
        art = translate_model_path(model, game_path)
        assert art.path.states == game_path.states
        assert art.path.joints[0] == JointAction.of(flat(reduce(P1, 1, 5)), flat(noop(P2)))
        assert art.path.is_complete
        assert validate_path(art.model, art.path) == []
        assert art.source_action("reduce__Player2__2_2") == reduce(P2, 2, 2)

    def test_incomplete_path(self, nim_5_3):
        _, model, _ = nim_5_3
        with pytest.raises(IncompletePathError):
            translate_model_path(model, build_path(model, SAMPLE_JOINTS[:2]))


class TestPathFormulas:
    @pytest.mark.parametrize(
        ("text", "stage", "expected"),
        [
            ("legal(reduce^Player1(1,5))", 0, Legal(P1, "reduce__Player1__1_5")),
            ("does(reduce^Player1(1,heap_1))", 0, parse_formula("does(reduce__Player1__1_5^Player1())")),
            ("heap_1 > heap_2", 0, bigger(5, 3)),
            ("heap_1 > heap_2", 1, bigger(0, 3)),
            ("heap_2 < min(heap_1, 4)", 0, smaller(3, 4)),
            ("vals(heap_1, 3)", 0, And(value_prop("heap_1", 5), value_prop("heap_2", 3))),
            ("vals()", 0, equal(0, 0)),
            ("next(vals(0,3))", 0, Next(And(value_prop("heap_1", 0), value_prop("heap_2", 3)))),
            ("turn(Player1) and not terminal", 2, parse_formula("turn(Player1) and not terminal")),
        ],
    )
    def test_examples(self, game_path, text, stage, expected):
        assert translate_formula_path(parse_formula(text), game_path, stage) == expected

    def test_legal_else_branch(self, game_path):
        translator = PathFormulaTranslator(game_path.model, game_path)
        result = translator.translate(parse_formula("legal(reduce^Player1(1,4))"), 0)
        assert result == Not(Legal(P1, "reduce__Player1__1_4"))
        assert translator.fired == {LEGAL_ELSE}

    def test_next_at_the_last_stage(self, game_path):
        translator = PathFormulaTranslator(game_path.model, game_path)
        assert translator.translate(parse_formula("next(terminal)"), 3) == equal(0, 0)
        assert translator.fired == {LAST_NEXT}

    def test_next_without_integers(self, game_path, nim_5_3):
        _, model, _ = nim_5_3
        art = translate_model_path(model, game_path)
        assert path_bounds(art.path) is None
        assert translate_formula_path(Next(Initial()), art.path, 3) == core_top()

    @pytest.mark.parametrize(
        ("text", "value"),
        [
            ("add(heap_1,1) > 5", True),
            ("sub(heap_2,4) < 0", True),
            ("add(heap_1,heap_2) = 8", True),
            ("add(heap_1,1) < 5", False),
            ("vals(add(heap_1,1), 3)", False),
            ("vals(heap_1, sub(heap_2,4))", False),
        ],
    )
    def test_values_outside_the_bounds(self, game_path, nim_5_3, text, value):
        _, model, _ = nim_5_3
        art = translate_model_path(model, game_path)
        translator = PathFormulaTranslator(model, game_path)
        source = parse_formula(text)
        translated = translator.translate(source, 0)
        assert translated == (equal(0, 0) if value else Not(equal(0, 0)))
        assert translator.fired == {DECIDED}
        assert holds(EvalContext(model, game_path, 0), source) is value
        assert holds(EvalContext(art.model, art.path, 0), translated) is value

    def test_false_comparisons_are_declared(self, game_path, nim_5_3):
        _, model, _ = nim_5_3
        art = translate_model_path(model, game_path)
        translated = translate_formula_path(parse_formula("heap_2 > heap_1"), game_path, 0)
        assert translated == bigger(3, 5)
        assert not holds(EvalContext(art.model, art.path, 0), translated)

    def test_unperformed_actions_are_declared(self, game_path, nim_5_3):
        _, model, _ = nim_5_3
        art = translate_model_path(model, game_path)
        source = parse_formula("not legal(reduce^Player1(2, 7))")
        translated = translate_formula_path(source, game_path, 0)
        with pytest.raises(ConformanceError):
            holds(EvalContext(art.model, art.path, 0), translated)
        declared = art.declaring([translated])
        assert declared.path.model is declared.model
        assert validate_path(declared.model, declared.path) == []
        assert holds(EvalContext(declared.model, declared.path, 0), translated)
        assert holds(EvalContext(model, game_path, 0), source)

    def test_sugar_is_translated(self, game_path):
        result = translate_formula_path(parse_formula("heap_1 >= 5 or false"), game_path, 0)
        assert is_gdl(result)
        assert count_atoms(result) == 4

    def test_stage_out_of_range(self, game_path):
        with pytest.raises(TranslationError):
            translate_formula_path(parse_formula("initial"), game_path, 4)


class TestCompleteModel:
    def test_finite_model(self, nim_2_2):
        _, model, _ = nim_2_2
        assert is_finite_model(model, SMALL)
        assert finite_model_violations(model, SMALL) == []
        narrow = TranslationBounds(zmin=0, zmax=1)
        assert [c for c, _ in finite_model_violations(model, narrow)] == ["i", "iii"]
        assert [c for c, _ in finite_model_violations(NarrowNim([2, 2]), SMALL)] == ["ii"]

    def test_not_enumerable(self):
        with pytest.raises(TranslationError):
            is_finite_model(SymbolicNim([2, 2]), SMALL)

    def test_bounds_violation(self, nim_5_3):
        _, model, _ = nim_5_3
        with pytest.raises(BoundsViolationError) as info:
            translate_model_complete(model, SMALL)
        assert info.value.condition == "i"

    def test_translated_model(self, nim_2_2):
        _, model, _ = nim_2_2
        art = translate_model_complete(model, SMALL)
        gdl = art.model
        w0 = model.initial
        assert art.mode == "complete"
        assert len(art.action_map) == 10
        assert gdl.signature.vars == ()
        assert len(gdl.states()) == 18
        assert {"heap_1(2)", "heap_2(2)", "equal(0,0)", "smaller(0,2)"} <= gdl.prop_val(w0)
        assert "heap_1(0)" not in gdl.prop_val(w0)
        assert gdl.num_val(w0) == ()
        assert len(gdl.legal_actions(w0)) == 5
        joint = JointAction.of(flat(reduce(P1, 1, 2)), flat(noop(P2)))
        assert gdl.update(w0, joint) == model.update(w0, JointAction.of(reduce(P1, 1, 2), noop(P2)))
        with pytest.raises(ModelError):
            gdl.update(w0, JointAction.of(GroundAction(agent=P1, name="jump"), flat(noop(P2))))
        assert validate_model(gdl) == []

    def test_translated_path(self, nim_2_2):
        _, model, _ = nim_2_2
        path = random_path(random.Random(3), model)
        art = translate_model_complete(model, SMALL)
        translated = translate_path_complete(path, art)
        assert translated.states == path.states
        assert validate_path(art.model, translated) == []
        assert translated.is_complete


class TestBoundedFormulas:
    def test_eval_simple_term(self):
        assert eval_simple_term(parse_formula("max(1, sub(5, 2)) = 0").left) == 3
        with pytest.raises(UnboundedFormulaError):
            eval_simple_term(Add(Var("heap_1"), IntLit(1)))

    def test_remove_var(self):
        result = remove_var(Lt(Var("heap_1"), IntLit(2)), HEAPS, SMALL)
        cases = [And(Lt(IntLit(q), IntLit(2)), value_prop("heap_1", q)) for q in range(3)]
        assert result == Or(Or(cases[0], cases[1]), cases[2])
        assert remove_var(Lt(Var("heap_1"), IntLit(2)), HEAPS, SMALL, desugared=True) == desugar(result)

    def test_remove_var_output_is_variable_free(self):
        result = remove_var(parse_formula("heap_1 < heap_2 and vals(heap_2, 0)"), HEAPS, SMALL)
        assert is_bounded_formula(result, (), SMALL)

    def test_rejected_terms(self):
        with pytest.raises(UnboundedFormulaError):
            remove_var(parse_formula("add(heap_1, 1) < 2"), HEAPS, SMALL)
        with pytest.raises(UnboundedFormulaError):
            remove_var(parse_formula("y < 1"), HEAPS, SMALL)

    def test_is_bounded(self):
        assert is_bounded_formula(parse_formula("heap_1 < 2"), HEAPS, SMALL)
        assert not is_bounded_formula(parse_formula("heap_1 < 3"), HEAPS, SMALL)
        assert not is_bounded_formula(parse_formula("add(heap_1, 1) < 2"), HEAPS, SMALL)
        assert not is_bounded_formula(parse_formula("z < 1"), HEAPS, SMALL)

    def test_translation(self):
        result = translate_formula_complete(parse_formula("heap_1 < 2"), HEAPS, SMALL)
        assert is_gdl(result)
        assert count_atoms(result) == 6
        assert Prop("smaller", (0, 2)) in set(_leaves(result))
        kept = translate_formula_complete(parse_formula("heap_1 < 2"), HEAPS, SMALL, desugared=False)
        assert isinstance(kept, Or)

    def test_ground_actions_and_vals(self):
        result = translate_formula_complete(
            parse_formula("does(reduce^Player1(1, 2)) and vals(1, min(2, 0))"), HEAPS, SMALL
        )
        assert result == And(
            parse_formula("does(reduce__Player1__1_2^Player1())"),
            And(value_prop("heap_1", 1), value_prop("heap_2", 0)),
        )
        assert translate_formula_complete(Vals(()), (), SMALL) == equal(0, 0)

    def test_actions_outside_the_model_are_declared(self, nim_2_2):
        _, model, _ = nim_2_2
        art = translate_model_complete(model, SMALL)
        translated = translate_formula_complete(parse_formula("not legal(reduce^Player1(1, 0))"), HEAPS, SMALL)
        assert translated == Not(Legal(P1, "reduce__Player1__1_0"))
        path = random_path(random.Random(5), model)
        with pytest.raises(ConformanceError):
            holds(EvalContext(art.model, translate_path_complete(path, art), 0), translated)
        declared = art.declaring([translated])
        assert declared.model.signature.action_schema(P1, "reduce__Player1__1_0") is not None
        assert len(declared.model.signature.actions[P1]) == len(art.model.signature.actions[P1]) + 1
        translated_path = translate_path_complete(path, declared)
        assert validate_path(declared.model, translated_path) == []
        for stage in path.stages():
            assert holds(EvalContext(declared.model, translated_path, stage), translated)
        assert art.declaring([parse_formula("legal(reduce__Player1__1_2^Player1())")]) is art

    def test_unbounded_formula(self):
        with pytest.raises(UnboundedFormulaError):
            translate_formula_complete(parse_formula("heap_1 < 3"), HEAPS, SMALL)


def _leaves(formula):
    stack = [formula]
    while stack:
        node = stack.pop()
        children = node.children()
        if children:
            stack.extend(children)
        else:
            yield node


class TestEmbedding:
    def test_embedded_model(self, nim_2_2):
        _, model, _ = nim_2_2
        embedded = embed_gdl(model)
        assert isinstance(embedded, EmbeddedModel)
        assert embedded.signature.vars == ()
        assert embedded.num_val(model.initial) == ()
        assert embedded.prop_val(model.initial) == model.prop_val(model.initial)
        assert embedded.legal_actions(model.initial) == model.legal_actions(model.initial)

    def test_round_trip_over_gdl_formulas(self, game_path, nim_5_3):
        _, model, _ = nim_5_3
        art = translate_model_path(model, game_path)
        embedded = embed_gdl(art.model)
        assert validate_model(embedded) == []
        path = Path(model=embedded, states=art.path.states, joints=art.path.joints)
        assert validate_path(embedded, path) == []
        generator = FormulaGenerator(
            random.Random(11), Vocabulary.from_model(art.model, numeric=False), sugar=False
        )
        for formula in generator.corpus(200):
            assert is_gdl(formula)
            for stage in path.stages():
                source = holds(EvalContext(art.model, art.path, stage), formula)
                assert holds(EvalContext(embedded, path, stage), formula) == source


@pytest.mark.slow
class TestCorrectness:
    """Translated formulas agree with their sources on generated corpora.

    Every translated formula is evaluated with the conformance check on, in a
    model that declares the flat actions it mentions.
    """

    def _path_cases(self, model, path, formulas):
        cases = []
        for formula in formulas:
            for stage in path.stages():
                translator = PathFormulaTranslator(model, path)
                cases.append((formula, stage, translator.translate(formula, stage), translator.fired))
        return cases

    def test_path_translation(self, nim_5_3):
        _, model, _ = nim_5_3
        rng = random.Random(2024)
        generator = FormulaGenerator(rng, nim_vocabulary(), terms=FREE, lo=0, hi=5, positive_legal=True)
        checked = 0
        for _ in range(25):
            path = random_path(rng, model)
            art = translate_model_path(model, path)
            assert validate_model(art.model) == []
            assert validate_path(art.model, art.path) == []
            cases = self._path_cases(model, path, generator.corpus(20))
            declared = art.declaring(translated for _, _, translated, _ in cases)
            for formula, stage, translated, fired in cases:
                assert is_gdl(translated)
                source = holds(EvalContext(model, path, stage), formula)
                target = holds(EvalContext(declared.model, declared.path, stage), translated)
                if source:
                    assert target
                if LEGAL_ELSE not in fired:
                    assert target == source
            checked += 20
        assert checked >= 500

    def test_path_translation_under_negation(self, nim_5_3):
        _, model, _ = nim_5_3
        rng = random.Random(7)
        generator = FormulaGenerator(rng, nim_vocabulary(), terms=FREE, lo=0, hi=5)
        with_legal = 0
        for _ in range(25):
            path = random_path(rng, model)
            art = translate_model_path(model, path)
            cases = self._path_cases(model, path, generator.corpus(20))
            declared = art.declaring(translated for _, _, translated, _ in cases)
            for formula, stage, translated, fired in cases:
                source = holds(EvalContext(model, path, stage), formula)
                target = holds(EvalContext(declared.model, declared.path, stage), translated)
                if LEGAL_ELSE not in fired:
                    assert target == source
                with_legal += any(isinstance(node, Legal) for node in iter_formula(formula))
        assert with_legal > 0

    def test_complete_translation(self, nim_2_2):
        _, model, _ = nim_2_2
        rng = random.Random(4242)
        art = translate_model_complete(model, SMALL)
        generator = FormulaGenerator(rng, nim_vocabulary(), terms=BOUNDED, lo=0, hi=2)
        formulas = [generator.formula() for _ in range(500)]
        translations = []
        for formula in formulas:
            assert is_bounded_formula(formula, HEAPS, SMALL)
            translated = translate_formula_complete(formula, HEAPS, SMALL)
            assert is_gdl(translated)
            translations.append(translated)
        declared = art.declaring(translations)
        for start in range(0, 500, 20):
            path = random_path(rng, model)
            translated_path = translate_path_complete(path, declared)
            for formula, translated in zip(formulas[start : start + 20], translations[start : start + 20]):
                for stage in path.stages():
                    source = holds(EvalContext(model, path, stage), formula)
                    target = holds(EvalContext(declared.model, translated_path, stage), translated)
                    assert target == source

    def test_remove_var_preserves_truth(self, nim_2_2):
        _, model, _ = nim_2_2
        rng = random.Random(99)
        art = translate_model_complete(model, SMALL)
        generator = FormulaGenerator(rng, nim_vocabulary(), terms=BOUNDED, lo=0, hi=2)
        for _ in range(10):
            path = random_path(rng, model)
            cases = []
            for formula in generator.corpus(20):
                grounded = remove_var(formula, HEAPS, SMALL)
                assert is_bounded_formula(grounded, (), SMALL)
                cases.append((formula, translate_formula_complete(grounded, HEAPS, SMALL)))
            declared = art.declaring(flat_formula for _, flat_formula in cases)
            translated_path = translate_path_complete(path, declared)
            for formula, flat_formula in cases:
                for stage in path.stages():
                    source = holds(EvalContext(model, path, stage), formula)
                    target = holds(EvalContext(declared.model, translated_path, stage), flat_formula)
                    assert target == source


class TestArtifacts:
    def test_save_path_artifacts(self, tmp_path, game_path, nim_5_3):
        _, model, _ = nim_5_3
        art = translate_model_path(model, game_path)
        written = save_artifacts(art, tmp_path, "nim_5_3")
        assert set(written) == {"model", "path", "actions"}
        assert written["model"].name == "nim_5_3.gdl.model"
        assert "VARS" not in written["model"].read_text(encoding="utf-8")
        assert load_action_map(written["actions"]) == art.action_map

    def test_save_complete_artifacts(self, tmp_path, nim_2_2):
        _, model, _ = nim_2_2
        art = translate_model_complete(model, SMALL)
        written = save_artifacts(art, tmp_path, "nim_2_2")
        assert set(written) == {"model", "actions"}
        assert len(load_action_map(written["actions"])) == 10
