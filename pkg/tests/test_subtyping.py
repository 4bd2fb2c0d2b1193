"""Tests for the subtyping decision procedure."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from DSRCheck.classes.syntax import UNIT, Arrow, Intersect, Prod, Sort
from DSRCheck.io.parser import parse_signature
from DSRCheck.sorts import subsort_closure
from DSRCheck.sorts.subtyping import covariant_arrow_subtype, subtype

EVEN, ODD, BITS = Sort("even"), Sort("odd"), Sort("bits_s")

_BITS_SIG = parse_signature("block (bits_s of bits, even of bits, odd of bits) { even <= bits_s; odd <= bits_s; }")

types = st.recursive(
    st.sampled_from([UNIT, EVEN, ODD, BITS]),
    lambda children: st.one_of(
        st.builds(Arrow, children, children),
        st.builds(Prod, children, children),
        st.builds(Intersect, children, children),
    ),
    max_leaves=6,
)


@pytest.mark.parametrize("a, b, expected", [
    (EVEN, BITS, True),
    (BITS, EVEN, False),
    (Intersect(Arrow(EVEN, ODD), Arrow(ODD, EVEN)), Arrow(ODD, EVEN), True),
    (Arrow(BITS, EVEN), Arrow(ODD, BITS), True),
    (Arrow(ODD, ODD), Arrow(BITS, ODD), False),
    (EVEN, Intersect(EVEN, BITS), True),
    (Intersect(EVEN, ODD), Intersect(ODD, EVEN), True),
    (Prod(EVEN, ODD), Prod(BITS, BITS), True),
    (Prod(EVEN, BITS), Prod(BITS, ODD), False),
    (UNIT, UNIT, True),
    (UNIT, BITS, False),
    (Arrow(UNIT, UNIT), Prod(UNIT, UNIT), False),
])
def test_subtype(bits, a, b, expected):
    assert subtype(bits.sig, bits.closure, a, b) == expected


def test_covariant_mutant_accepts_a_wrong_arrow(bits):
    wrong = (Arrow(ODD, ODD), Arrow(BITS, ODD))
    assert not subtype(bits.sig, bits.closure, *wrong)
    assert covariant_arrow_subtype(bits.sig, bits.closure, *wrong)


def test_memo_is_filled(bits):
    memo = {}
    assert subtype(bits.sig, bits.closure, Arrow(BITS, EVEN), Arrow(ODD, BITS), memo)
    assert memo[(Arrow(BITS, EVEN), Arrow(ODD, BITS))] is True


@settings(max_examples=200, deadline=None)
@given(types)
def test_reflexivity(a):
    closure = subsort_closure(_BITS_SIG)
    assert subtype(_BITS_SIG, closure, a, a)


@settings(max_examples=300, deadline=None)
@given(types, types, types)
def test_transitivity(a, b, c):
    closure = subsort_closure(_BITS_SIG)
    if subtype(_BITS_SIG, closure, a, b) and subtype(_BITS_SIG, closure, b, c):
        assert subtype(_BITS_SIG, closure, a, c)

