"""Tests for the bidirectional typechecker."""
import pytest

from DSRCheck.classes.diagnostic import NoSynthesisError, TypeCheckError, exit_code
from DSRCheck.classes.syntax import EMPTY_CONTEXT, UNIT, Arrow, Context, Intersect, Prod, Sort
from DSRCheck.io.parser import parse_expr, parse_signature, parse_type
from DSRCheck.io.printer import print_track
from DSRCheck.typecheck import CheckSession, check_program, run_program_check

EVEN, ODD, BITS = Sort("even"), Sort("odd"), Sort("bits_s")
IDENTITIES = Intersect(Arrow(EVEN, EVEN), Arrow(ODD, ODD))


def _ctx(**bindings):
    return Context(tuple(bindings.items()))


def test_one_flips_parity(bits):
    assert bits.check(_ctx(b=ODD), parse_expr("One(b)"), EVEN) is None
    failure = bits.check(_ctx(b=ODD), parse_expr("One(b)"), ODD)
    assert failure is not None and failure.code == "TYPE_MISMATCH"


def test_tainted_data_stays_tainted(tainted, session_of):
    failure = tainted.check(_ctx(x=Sort("tainted")), parse_expr("S(x)"), Sort("untainted"))
    assert failure is not None and failure.code == "TYPE_MISMATCH"
    assert tainted.check(_ctx(x=Sort("untainted")), parse_expr("S(x)"), Sort("untainted")) is None


def test_no_constructor_typing(tainted):
    failure = tainted.check(EMPTY_CONTEXT, parse_expr("S(Z())"), Sort("ghost"))
    assert failure.code == "NO_CTOR_TYPING"


def test_ctor_types_in_declaration_order(bits, lists):
    assert bits.ctor_types("One") == [(EVEN, "odd"), (ODD, "even"), (BITS, "bits_s")]
    assert lists.ctor_types("Cons") == [(Sort("list"), "list")]


def test_identity_checks_against_both_conjuncts(bits):
    assert bits.check(EMPTY_CONTEXT, parse_expr("fn x => x"), IDENTITIES) is None


def test_single_inner_annotation_breaks_the_identity(bits):
    assert bits.check(EMPTY_CONTEXT, parse_expr("fn x => (x : even)"), IDENTITIES) is not None
    assert bits.check(EMPTY_CONTEXT, parse_expr("fn x => (x : odd)"), IDENTITIES) is not None
    assert bits.check(EMPTY_CONTEXT, parse_expr("fn x => (x : even, odd)"), IDENTITIES) is None


def test_application_backtracks_over_conjuncts(bits):
    gamma = _ctx(f=Intersect(Arrow(EVEN, ODD), Arrow(ODD, EVEN)), b=ODD)
    assert bits.synth(gamma, parse_expr("f b")) == [EVEN]


def test_synth_projects_intersections(bits):
    gamma = _ctx(f=Intersect(Arrow(EVEN, ODD), Arrow(ODD, EVEN)))
    assert bits.synth(gamma, parse_expr("f")) == [
        Intersect(Arrow(EVEN, ODD), Arrow(ODD, EVEN)),
        Arrow(EVEN, ODD),
        Arrow(ODD, EVEN),
    ]


def test_lambda_against_intersection_of_products(bits):
    a = parse_type("(even * odd -> odd) & (odd * even -> even)")
    assert bits.check(EMPTY_CONTEXT, parse_expr("fn p => case p of { (x, y) => One(x) }"), a) is None


def test_one_arm_case_over_empty(lists):
    assert lists.check(_ctx(x=Sort("empty")), parse_expr("case x of { Nil() => () }"), UNIT) is None


def test_deep_pattern_is_exhaustive_under_sig2(sig2):
    assert sig2.check(_ctx(x=Sort("nonempty")), parse_expr("case x of { Cons(Nil(())) => () }"), UNIT) is None


def test_missing_cons_arm(lists):
    failure = lists.check(_ctx(x=Sort("list")), parse_expr("case x of { Nil() => () }"), UNIT)
    assert failure.code == "NONEXHAUSTIVE"
    assert failure.extra["residual"] == "Cons(_)"
    assert failure.extra["witness"] == "Cons(Nil())"


def test_clause_case_needs_no_and_arm(cnf):
    e = parse_expr("case c of { Or(p) => (); Not(x) => (); Var(s) => () }")
    assert cnf.check(_ctx(c=Sort("clause")), e, UNIT) is None


def test_clause_case_without_var_arm(cnf):
    e = parse_expr("case c of { Or(p) => (); Not(x) => () }")
    failure = cnf.check(_ctx(c=Sort("clause")), e, UNIT)
    assert failure.code == "NONEXHAUSTIVE"
    assert failure.extra["witness"] == "Var(P())"


def test_pattern_shape_mismatch(lists):
    failure = lists.check(_ctx(x=Sort("list")), parse_expr("case x of { () => () }"), UNIT)
    assert failure.code == "PATTERN_TYPE"


def test_duplicate_pattern_variable(bits):
    failure = bits.check(_ctx(p=Prod(EVEN, EVEN)), parse_expr("case p of { (x, x) => x }"), EVEN)
    assert failure.code == "DUP_ASVAR"


def test_unbound_variable(bits):
    with pytest.raises(TypeCheckError) as info:
        bits.synth(EMPTY_CONTEXT, parse_expr("y"))
    assert info.value.diagnostic.code == "UNBOUND_VAR"


def test_lambda_does_not_synthesize(bits):
    with pytest.raises(NoSynthesisError):
        bits.synth(EMPTY_CONTEXT, parse_expr("fn x => x"))


def test_declare_checks_its_body_under_the_extension(lists):
    e = parse_expr(
        "declare block (subempty of list) { subempty <= empty; Nil : unit -> subempty; }"
        " in case (Nil() : subempty) of { Nil() => () }"
    )
    assert lists.check(EMPTY_CONTEXT, e, UNIT) is None


def test_declared_sorts_cannot_escape(lists):
    e = parse_expr("declare block (subempty of list) { subempty <= empty; Nil : unit -> subempty; } in Nil()")
    assert lists.check(EMPTY_CONTEXT, e, Sort("subempty")).code == "SCOPE_ESCAPE"


def test_declare_with_unsafe_block(lists):
    e = parse_expr("declare block (bad of list) { bad <= empty; Cons : list -> bad; } in ()")
    assert lists.check(EMPTY_CONTEXT, e, UNIT).code == "UNSAFE_CTOR"


def test_extended_session_sees_new_sorts(lists):
    ext = parse_signature("block (subempty of list) { subempty <= empty; Nil : unit -> subempty; }")
    extended = lists.extended(ext)
    assert extended.subtype(Sort("subempty"), Sort("list"))
    assert extended.options == lists.options


def test_coverage_tracks(sigopt):
    prog_main = parse_expr("(fn y => case y of { Nil() => Nil(); Cons(x) => x } : list -> list)")
    assert sigopt.synth(EMPTY_CONTEXT, prog_main) == [Arrow(Sort("list"), Sort("list"))]
    [case] = sigopt.coverage
    assert case.exhaustive
    assert [[print_track(t) for t in tracks] for _, tracks in case.arms] == [
        ["· ⊢ empty"],
        ["x:empty ⊢ list", "x:list ⊢ list"],
    ]


def test_coverage_tracks_optimized(session_of):
    sigopt = session_of("sigopt.dsr", optimize=True)
    sigopt.synth(EMPTY_CONTEXT, parse_expr("(fn y => case y of { Nil() => Nil(); Cons(x) => x } : list -> list)"))
    [case] = sigopt.coverage
    assert [print_track(t) for t in case.arms[1][1]] == ["x:list ⊢ list"]


@pytest.mark.parametrize("name, code", [
    ("parity.dsr", 0),
    ("parity_bad.dsr", 1),
    ("parity_backtrack.dsr", 0),
    ("identity.dsr", 0),
    ("identity_bad.dsr", 1),
    ("pairs.dsr", 0),
    ("tainted.dsr", 1),
    ("tainted_ok.dsr", 0),
    ("cnf.dsr", 0),
    ("cnf_missing_var.dsr", 1),
    ("sigstar.dsr", 3),
    ("list_subempty.dsr", 0),
    ("list_unsafe.dsr", 3),
    ("declare.dsr", 0),
    ("variance.dsr", 1),
    ("sig2.dsr", 0),
    ("sig2_unsafe.dsr", 3),
    ("sigopt.dsr", 0),
    ("beta.dsr", 0),
])
def test_corpus_verdicts(load_program, name, code):
    assert exit_code(check_program(load_program(name))) == code


def test_parity_main_checks_against_even(load_program):
    prog = load_program("parity.dsr")
    result = run_program_check(prog, goal=EVEN)
    assert result.ok and result.types == [EVEN]
    assert run_program_check(prog).types == [EVEN]
    assert not run_program_check(prog, goal=ODD).ok


def test_missing_var_arm_reports_a_witness(load_program):
    [failure] = check_program(load_program("cnf_missing_var.dsr"))
    assert failure.code == "NONEXHAUSTIVE"
    assert failure.extra["witness"].startswith("Var(")


def test_signature_errors_skip_typechecking(load_program):
    result = run_program_check(load_program("sigstar.dsr"))
    assert [d.code for d in result.diagnostics] == ["SUBSORT_BACKPATCH"]
    assert result.session is None


def test_ill_formed_goal(load_program):
    [failure] = check_program(load_program("parity.dsr"), goal=Sort("ghost"))
    assert failure.code == "ILLFORMED_TYPE"


@pytest.mark.parametrize("options", [{"memoize": False}, {"optimize": True}])
def test_options_do_not_change_verdicts(load_program, options):
    for name in ("parity.dsr", "parity_bad.dsr", "cnf.dsr", "cnf_missing_var.dsr", "sigopt.dsr", "identity_bad.dsr"):
        prog = load_program(name)
        assert [d.code for d in check_program(prog, **options)] == [d.code for d in check_program(prog)]


def test_nested_intersection_in_scrutinee_is_explained(bits):
    gamma = _ctx(p=Prod(Intersect(EVEN, BITS), ODD))
    failure = bits.check(gamma, parse_expr("case p of { (One(x), y) => () }"), UNIT)
    assert failure.code == "ILLTYPED_SCRUTINY"
    assert "annotate the scrutinee" in failure.message
    assert bits.check(_ctx(p=Prod(EVEN, ODD)), parse_expr("case p of { (One(x), y) => () }"), UNIT) is None
