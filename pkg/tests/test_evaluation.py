"""Tests for small-step evaluation."""
import pytest

from DSRCheck.classes.syntax import UNIT_VAL, Ctor, Declare, Signature, erase, is_value
from DSRCheck.evaluation import OUT_OF_FUEL, STUCK, VALUE, evaluate, iter_steps, step, step_matches
from DSRCheck.io.parser import parse_expr

NIL = Ctor("Nil", UNIT_VAL)
OMEGA = "(fn x => x x) (fn x => x x)"


def _arms(text):
    return parse_expr(f"case v of {{ {text} }}").arms


def test_beta():
    assert step(parse_expr("(fn x => x) ()")) == UNIT_VAL


def test_case_falls_through_to_the_matching_arm():
    e = parse_expr("case Cons(Nil()) of { Nil() => Nil(()); Cons(y) => y }")
    assert step(e) == NIL


def test_declare_discards_its_extension():
    assert step(Declare(Signature(), UNIT_VAL)) == UNIT_VAL


def test_step_matches_takes_the_first_match():
    assert step_matches(_arms("Nil() => (); Cons(_) => Nil()"), NIL) == UNIT_VAL


def test_step_matches_falls_off_the_end():
    assert step_matches(_arms("Nil() => ()"), Ctor("Cons", NIL)) is None


def test_step_matches_substitutes_as_bindings():
    assert step_matches(_arms("x as _ => x"), NIL) == NIL


def test_function_position_steps_first():
    e = parse_expr("((fn f => f) (fn y => y)) ((fn z => z) ())")
    assert step(e) == parse_expr("(fn y => y) ((fn z => z) ())")


def test_pair_steps_left_to_right():
    e = parse_expr("((fn x => x) (), (fn x => x) ())")
    assert step(e) == parse_expr("((), (fn x => x) ())")


def test_constructor_argument_steps():
    assert step(parse_expr("One((fn x => x) Empty())")) == parse_expr("One(Empty())")


def test_annotated_function_is_applied():
    assert step(parse_expr("(fn b => One(b) : odd -> even) One(Empty())")) == parse_expr("One(One(Empty()))")


def test_steps_inside_annotations():
    assert step(parse_expr("((fn x => x) () : unit)")) == parse_expr("(() : unit)")


@pytest.mark.parametrize("text", ["()", "fn x => x", "One(Empty())", "(Nil(), ())", "(Nil() : empty)"])
def test_values_do_not_step(text):
    e = parse_expr(text)
    assert is_value(e)
    assert step(e) is None


def test_evaluate_value_with_no_fuel():
    outcome = evaluate(UNIT_VAL, 0)
    assert outcome.kind == VALUE and outcome.expr == UNIT_VAL and outcome.steps == 0


def test_omega_runs_out_of_fuel():
    outcome = evaluate(parse_expr(OMEGA), 10)
    assert outcome.kind == OUT_OF_FUEL
    assert outcome.steps == 10


def test_constructors_are_values():
    outcome = evaluate(parse_expr("One(One(Empty(())))"), 100)
    assert outcome.is_value
    assert outcome.expr == Ctor("One", Ctor("One", Ctor("Empty", UNIT_VAL)))


def test_match_failure_is_stuck():
    outcome = evaluate(parse_expr("case Cons(Nil()) of { Nil() => () }"))
    assert outcome.kind == STUCK
    assert outcome.asdict() == {"kind": "stuck", "expr": "case Cons(Nil()) of { Nil() => () }", "steps": 0}


def test_applying_a_non_function_is_stuck():
    assert evaluate(parse_expr("Nil() ()")).kind == STUCK


def test_negative_fuel():
    with pytest.raises(ValueError):
        evaluate(UNIT_VAL, -1)


def test_iter_steps_starts_with_the_term():
    states = list(iter_steps(parse_expr("(fn x => x) ((fn y => y) ())")))
    assert states == [
        parse_expr("(fn x => x) ((fn y => y) ())"),
        parse_expr("(fn x => x) ()"),
        UNIT_VAL,
    ]
    assert len(list(iter_steps(parse_expr(OMEGA), 3))) == 4


@pytest.mark.parametrize("name", ["parity.dsr", "beta.dsr", "declare.dsr"])
def test_erased_evaluation_agrees(load_program, name):
    main = load_program(name).main
    annotated, erased = evaluate(main), evaluate(main, erase_annotations=True)
    assert annotated.is_value and erased.is_value
    assert erase(annotated.expr) == erased.expr


def test_parity_program_value(load_program):
    assert evaluate(load_program("parity.dsr").main).asdict()["expr"] == "One(One(Empty()))"
