"""Tests for signatures: subsorting, refinement and well-formedness."""
import pytest

from DSRCheck.classes.diagnostic import UndeclaredSortError, UnknownCtorError
from DSRCheck.classes.syntax import (
    UNIT,
    Arrow,
    CtorDecl,
    Intersect,
    Program,
    Signature,
    Sort,
    UArrow,
    UData,
)
from DSRCheck.io.parser import parse_program, parse_signature
from DSRCheck.sorts import (
    block_elem_ok,
    check_extension,
    contype_wf,
    dom,
    inversion,
    lenient_closure,
    refines,
    safe_con_at,
    sig_wf,
    subsort_closure,
    type_wf,
)

SUBEMPTY = "block (subempty of list) { subempty <= empty; Nil : unit -> subempty; }"
BELOW_EMPTY = "block (bad of list) { bad <= empty; Cons : list -> bad; }"
DOMAIN_UP = "block (w of list) { w <= nonempty; Cons : list -> w; }"


def _program(text: str) -> Program:
    parsed = parse_program(text + "\nin ()")
    assert isinstance(parsed, Program), parsed
    return parsed


def _block(text: str):
    return parse_signature(text).blocks[0]


def _codes(diagnostics):
    return sorted(d.code for d in diagnostics)


def test_dom_grows_with_extension(lists):
    assert dom(lists.sig) == {"list", "empty"}
    assert dom(lists.sig.extend(parse_signature(SUBEMPTY))) == {"list", "empty", "subempty"}


def test_closure_of_parity(bits):
    closure = subsort_closure(bits.sig)
    assert closure("even", "bits_s")
    assert closure("odd", "odd")
    assert not closure("even", "odd")
    assert not closure("bits_s", "even")


def test_closure_is_transitive(lists):
    closure = subsort_closure(lists.sig.extend(parse_signature(SUBEMPTY)))
    assert closure("subempty", "list")
    assert closure.subsorts("list") == {"list", "empty", "subempty"}


def test_undeclared_edge_raises():
    sig = parse_signature("block (a of d) { a <= ghost; }")
    with pytest.raises(UndeclaredSortError):
        subsort_closure(sig)
    assert lenient_closure(sig).pairs() == [("a", "a")]


def test_refines(bits):
    assert refines(bits.sig, Sort("even"), UData("bits"))
    one = Intersect(Arrow(Sort("even"), Sort("odd")), Arrow(Sort("odd"), Sort("even")))
    assert refines(bits.sig, one, UArrow(UData("bits"), UData("bits")))
    assert not refines(bits.sig, Intersect(Sort("even"), UNIT), UData("bits"))


@pytest.mark.parametrize("a, expected", [
    (Arrow(Sort("odd"), Sort("even")), True),
    (Intersect(Arrow(Sort("even"), Sort("even")), Arrow(Sort("odd"), Sort("odd"))), True),
    (Intersect(Sort("even"), UNIT), False),
    (Sort("ghost"), False),
])
def test_type_wf(bits, a, expected):
    assert type_wf(bits.sig, a) == expected


def test_contype_wf(lists, bits):
    assert contype_wf(lists.sig, "Nil", UNIT, "empty", lists.ursig)
    assert not contype_wf(lists.sig, "Cons", UNIT, "list", lists.ursig)
    assert contype_wf(bits.sig, "One", Sort("even"), "odd", bits.ursig)
    with pytest.raises(UnknownCtorError):
        contype_wf(lists.sig, "Leaf", UNIT, "list", lists.ursig)


def test_safe_con_at_keeps_inversion_valid(lists):
    assert safe_con_at(lists.sig, _block(SUBEMPTY), "Nil", UNIT, "subempty", "empty")


def test_safe_con_at_rejects_cons_below_empty(lists):
    assert not safe_con_at(lists.sig, _block(BELOW_EMPTY), "Cons", Sort("list"), "bad", "empty")


def test_block_elem_ok(lists, sig2):
    block = _block(SUBEMPTY)
    assert block_elem_ok(lists.sig, block, block.ctor_decls[0], lists.ursig)
    block = _block(DOMAIN_UP)
    assert not block_elem_ok(sig2.sig, block, block.ctor_decls[0], sig2.ursig)
    # a constructor typing must target a sort of its own block
    block = _block("block (x of list) { }")
    assert not block_elem_ok(lists.sig, block, CtorDecl("Cons", Sort("empty"), "list"), lists.ursig)


def test_sig_wf_accepts_examples(lists, bits, sig2, sigopt, cnf):
    for session in (lists, bits, sig2, sigopt, cnf):
        assert sig_wf(session.sig, session.ursig) == []


def test_backpatching_is_rejected(load_program):
    prog = load_program("sigstar.dsr")
    diagnostics = sig_wf(prog.sig, prog.ursig)
    assert _codes(diagnostics) == ["SUBSORT_BACKPATCH"]
    assert diagnostics[0].extra == {"sub": "s1", "sup": "s2"}


def test_new_cons_typing_below_empty_is_rejected(load_program):
    prog = load_program("list_unsafe.dsr")
    diagnostics = sig_wf(prog.sig, prog.ursig)
    assert _codes(diagnostics) == ["UNSAFE_CTOR"]
    assert diagnostics[0].extra["sort"] == "empty"


def test_moving_the_domain_up_is_rejected(load_program):
    prog = load_program("sig2_unsafe.dsr")
    diagnostics = sig_wf(prog.sig, prog.ursig)
    assert set(_codes(diagnostics)) == {"UNSAFE_CTOR"}
    assert "nonempty" in {d.extra["sort"] for d in diagnostics}


def test_subempty_extension_is_accepted(lists, load_program):
    assert check_extension(lists.sig, parse_signature(SUBEMPTY), lists.ursig) == []
    prog = load_program("list_subempty.dsr")
    assert sig_wf(prog.sig, prog.ursig) == []


def test_accepted_extension_conserves_old_subsorting(lists):
    before = subsort_closure(lists.sig)
    after = subsort_closure(lists.sig.extend(parse_signature(SUBEMPTY)))
    old = dom(lists.sig)
    assert before.pairs(old) == after.pairs(old)


@pytest.mark.parametrize("text, code", [
    ("data d { C : unit }\nblock (a of d) { }\nblock (a of d) { }", "DUPSORT"),
    ("data d { C : unit }\nblock (a of nope) { }", "UNKNOWN_DATATYPE"),
    ("data d { C : unit }\ndata e { D : unit }\nblock (a of d, b of e) { a <= b; }", "SUBSORT_MISMATCH"),
    ("data d { C : unit }\nblock (a of d) { a <= ghost; }", "SCOPE"),
    ("data d { C : unit }\nblock (a of d) { }\nblock (b of d) { C : unit -> a; }", "SCOPE"),
    ("data d { C : unit }\nblock (a of d) { D : unit -> a; }", "UNKNOWN_CTOR"),
    ("data d { C : unit }\nblock (a of d) { C : a -> a; }", "CTOR_MISMATCH"),
])
def test_sig_wf_diagnostics(text, code):
    prog = _program(text)
    assert code in _codes(sig_wf(prog.sig, prog.ursig))


def test_inversion(lists):
    closure = subsort_closure(lists.sig)
    assert [d.ctor for d in inversion(lists.sig, closure, "empty")] == ["Nil"]
    assert [d.ctor for d in inversion(lists.sig, closure, "list")] == ["Nil", "Cons"]


def test_empty_signature_is_well_formed(lists):
    assert sig_wf(Signature(), lists.ursig) == []
