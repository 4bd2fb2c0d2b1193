"""Tests for the declarative oracle and the random generators."""
import pytest

from DSRCheck.benchmark.generators import GenBounds, gen_accepted_signature, gen_signature, gen_typed_term
from DSRCheck.benchmark.oracles import (
    NO,
    UNKNOWN,
    YES,
    DeclarativeOracle,
    annotate,
    ctor_has_type,
    declarative_typable,
    enum_values,
    merge_annotations,
    subst_typing,
    type_universe,
)
from DSRCheck.classes.syntax import EMPTY_CONTEXT, UNIT, UNIT_VAL, Anno, Arrow, Context, Intersect, Sort, erase
from DSRCheck.io.parser import parse_expr, parse_type
from DSRCheck.sorts import sig_wf

EVEN, ODD = Sort("even"), Sort("odd")
NIL = parse_expr("Nil()")


def _ctx(**bindings):
    return Context(tuple(bindings.items()))


@pytest.mark.parametrize(
    "sort, size, expected",
    [("list", 2, [NIL]), ("empty", 4, [NIL]), ("list", 1, [])],
)
def test_enum_values(lists, sort, size, expected):
    assert enum_values(lists, Sort(sort), size) == expected


def test_enum_values_of_unit(lists):
    assert enum_values(lists, UNIT, 1) == [UNIT_VAL]


def test_enum_values_grow_with_size(lists):
    small = enum_values(lists, Sort("list"), 3)
    assert NIL in small and parse_expr("Cons(Nil())") in small
    assert set(small) <= set(enum_values(lists, Sort("list"), 5))


def test_ctor_has_type(bits):
    assert ctor_has_type(bits, "One", EVEN, "odd")
    assert ctor_has_type(bits, "One", EVEN, "bits_s")
    assert not ctor_has_type(bits, "One", ODD, "odd")


def test_subst_typing(bits):
    one = parse_expr("One(Empty())")
    assert subst_typing(bits, {"b": one}, _ctx(b=ODD))
    assert not subst_typing(bits, {"b": one}, _ctx(b=EVEN))
    assert not subst_typing(bits, {}, _ctx(b=ODD))


def test_type_universe(bits):
    universe = type_universe(bits)
    assert Intersect(EVEN, ODD) in universe
    assert Intersect(EVEN, Sort("bits_s")) not in universe
    assert Arrow(EVEN, ODD) in universe
    assert len(universe) == 5 + 2 * 5 * 5


@pytest.mark.parametrize(
    "gamma, text, goal, verdict",
    [
        ({"b": ODD}, "One(b)", EVEN, YES),
        ({"b": ODD}, "One(b)", ODD, NO),
        ({}, "()", UNIT, YES),
        ({}, "()", EVEN, NO),
        ({}, "Empty()", Intersect(EVEN, Sort("bits_s")), YES),
        ({"b": EVEN}, "b", Sort("bits_s"), YES),
        ({}, "b", EVEN, NO),
    ],
)
def test_declarative_typable_bits(bits, gamma, text, goal, verdict):
    assert declarative_typable(bits, _ctx(**gamma), parse_expr(text), goal, 6) == verdict


def test_declarative_typable_tainted(tainted):
    lam = parse_expr("fn x => S(x)")
    assert declarative_typable(tainted, EMPTY_CONTEXT, lam, parse_type("tainted -> untainted"), 6) == NO
    assert declarative_typable(tainted, EMPTY_CONTEXT, lam, parse_type("tainted -> tainted"), 6) == YES


def test_declarative_case_coverage(cnf):
    goal = parse_type("clause -> clause")
    full = parse_expr("fn c => case c of { Or(p) => Or(p); Not(x) => Not(x); Var(s) => Var(s) }")
    missing = parse_expr("fn c => case c of { Or(p) => Or(p); Not(x) => Not(x) }")
    assert declarative_typable(cnf, EMPTY_CONTEXT, full, goal, 8) == YES
    assert declarative_typable(cnf, EMPTY_CONTEXT, missing, goal, 8) == NO


def test_search_bound(bits):
    assert DeclarativeOracle(bits).typable(EMPTY_CONTEXT, UNIT_VAL, UNIT, 0) == UNKNOWN


def test_annotate_intersection(bits):
    goal = Intersect(Arrow(EVEN, EVEN), Arrow(ODD, ODD))
    term = annotate(bits, EMPTY_CONTEXT, parse_expr("fn x => x"), goal, 6)
    assert term is not None
    assert erase(term) == parse_expr("fn x => x")
    assert bits.check(EMPTY_CONTEXT, term, goal) is None


def test_annotate_sigopt(sigopt):
    erased = parse_expr("fn y => case y of { Nil() => Nil(); Cons(x) => x }")
    goal = parse_type("list -> list")
    term = annotate(sigopt, EMPTY_CONTEXT, erased, goal, 8)
    assert term is not None and sigopt.check(EMPTY_CONTEXT, term, goal) is None


def test_annotate_returns_none_without_derivation(bits):
    assert annotate(bits, _ctx(b=ODD), parse_expr("One(b)"), ODD, 6) is None


def test_merge_annotations():
    lam = parse_expr("fn x => x")
    left = Anno(lam, (parse_type("even -> even"),))
    right = Anno(lam, (parse_type("odd -> odd"), parse_type("even -> even")))
    merged = merge_annotations(left, right)
    assert merged == Anno(lam, (parse_type("even -> even"), parse_type("odd -> odd")))
    assert merge_annotations(lam, lam) == lam


def test_gen_signature_is_deterministic():
    first, second = gen_signature(7), gen_signature(7)
    assert first.ursig == second.ursig
    assert first.sig == second.sig
    assert first.accepted == second.accepted
    assert first.accepted == (not sig_wf(first.sig, first.ursig))


@pytest.mark.parametrize("seed", range(5))
def test_gen_accepted_signature(seed):
    generated = gen_accepted_signature(seed)
    if generated is not None:
        assert generated.accepted
        assert sig_wf(generated.sig, generated.ursig) == []


@pytest.mark.parametrize("seed", range(5))
def test_gen_typed_term_checks(bits, seed):
    e = gen_typed_term(seed, bits, EVEN)
    if e is not None:
        assert bits.check(EMPTY_CONTEXT, e, EVEN) is None
    assert gen_typed_term(seed, bits, EVEN) == e


def test_gen_typed_term_unit(bits):
    assert gen_typed_term(0, bits, UNIT, GenBounds(term_size=1)) == UNIT_VAL
