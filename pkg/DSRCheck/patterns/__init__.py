"""
Patterns: typing against unrefined types, complement, intersection,
normalization, matching against values, and intersection of a type with a
pattern, which yields the tracks a case arm is checked under.
"""
import logging
from typing import Dict, List, Optional, Sequence

from DSRCheck.classes.diagnostic import IllTypedScrutinyError
from DSRCheck.classes.syntax import (
    EMPTY,
    EMPTY_CONTEXT,
    UNIT,
    WILD,
    AsPat,
    Ctor,
    CtorPat,
    EmptyPat,
    Expr,
    Intersect,
    OrPat,
    Pair,
    PairPat,
    Pattern,
    Prod,
    Signature,
    Sort,
    Track,
    Type,
    UData,
    UnitPat,
    UnitType,
    UnitVal,
    UnrefinedSignature,
    UnrefinedType,
    UProd,
    UUnit,
    Wild,
    strip_annotations,
)
from DSRCheck.io.printer import print_pattern, print_type
from DSRCheck.sorts.closure import SubsortClosure
from DSRCheck.sorts.subtyping import subtype

LOGGER = logging.getLogger(__name__)


def pat_type(ursig: UnrefinedSignature, p: Pattern, tau: UnrefinedType) -> bool:
    """
    Whether p is suitable for values of the unrefined type tau
    """
    if isinstance(p, (Wild, EmptyPat)):
        return True
    if isinstance(p, UnitPat):
        return isinstance(tau, UUnit)
    if isinstance(p, CtorPat):
        decl = ursig.ctor(p.ctor)
        return (
            decl is not None
            and isinstance(tau, UData)
            and tau.name == decl.result
            and pat_type(ursig, p.arg, decl.arg)
        )
    if isinstance(p, PairPat):
        return (
            isinstance(tau, UProd)
            and pat_type(ursig, p.left, tau.left)
            and pat_type(ursig, p.right, tau.right)
        )
    if isinstance(p, AsPat):
        return pat_type(ursig, p.pattern, tau)
    if isinstance(p, OrPat):
        return pat_type(ursig, p.left, tau) and pat_type(ursig, p.right, tau)
    return False


def or_all(patterns: Sequence[Pattern]) -> Pattern:
    """
    Left-nested or-pattern of the given branches; the empty pattern when there are none
    """
    if not patterns:
        return EMPTY
    result = patterns[0]
    for branch in patterns[1:]:
        result = OrPat(result, branch)
    return result


def complement(ursig: UnrefinedSignature, tau: Optional[UnrefinedType], p: Pattern) -> Pattern:
    """
    A pattern matching exactly the values of tau that p does not match
    """
    if isinstance(p, Wild):
        return EMPTY
    if isinstance(p, EmptyPat):
        return WILD
    if isinstance(p, UnitPat):
        return EMPTY
    if isinstance(p, AsPat):
        return complement(ursig, tau, p.pattern)
    if isinstance(p, PairPat):
        left_tau = tau.left if isinstance(tau, UProd) else None
        right_tau = tau.right if isinstance(tau, UProd) else None
        return OrPat(
            PairPat(complement(ursig, left_tau, p.left), WILD),
            PairPat(WILD, complement(ursig, right_tau, p.right)),
        )
    if isinstance(p, OrPat):
        return pat_intersect(complement(ursig, tau, p.left), complement(ursig, tau, p.right))
    if isinstance(p, CtorPat):
        decl = ursig.ctor(p.ctor)
        if decl is None:
            return WILD
        others = [CtorPat(other.ctor, WILD) for other in ursig.constructors_of(decl.result) if other.ctor != p.ctor]
        return or_all([CtorPat(p.ctor, complement(ursig, decl.arg, p.arg))] + others)
    raise TypeError(f"not a pattern: {p!r}")


def pat_intersect(p1: Pattern, p2: Pattern) -> Pattern:
    """
    A pattern matching the values matched by both p1 and p2
    """
    if isinstance(p1, EmptyPat) or isinstance(p2, EmptyPat):
        return EMPTY
    if isinstance(p1, Wild):
        return p2
    if isinstance(p2, Wild):
        return p1
    if isinstance(p1, OrPat):
        return OrPat(pat_intersect(p1.left, p2), pat_intersect(p1.right, p2))
    if isinstance(p1, AsPat):
        return AsPat(p1.var, pat_intersect(p1.pattern, p2))
    if isinstance(p2, AsPat):
        return AsPat(p2.var, pat_intersect(p1, p2.pattern))
    if isinstance(p2, OrPat):
        return OrPat(pat_intersect(p1, p2.left), pat_intersect(p1, p2.right))
    if isinstance(p1, CtorPat) and isinstance(p2, CtorPat):
        if p1.ctor != p2.ctor:
            return EMPTY
        return CtorPat(p1.ctor, pat_intersect(p1.arg, p2.arg))
    if isinstance(p1, PairPat) and isinstance(p2, PairPat):
        return PairPat(pat_intersect(p1.left, p2.left), pat_intersect(p1.right, p2.right))
    if isinstance(p1, UnitPat) and isinstance(p2, UnitPat):
        return p1
    return EMPTY


def _branches(p: Pattern) -> List[Pattern]:
    if isinstance(p, OrPat):
        return _branches(p.left) + _branches(p.right)
    return [p]


def normalize(p: Pattern) -> Pattern:
    """
    Flatten or-patterns, drop branches that match nothing and remove duplicates
    """
    if isinstance(p, CtorPat):
        arg = normalize(p.arg)
        return EMPTY if isinstance(arg, EmptyPat) else CtorPat(p.ctor, arg)
    if isinstance(p, PairPat):
        left, right = normalize(p.left), normalize(p.right)
        if isinstance(left, EmptyPat) or isinstance(right, EmptyPat):
            return EMPTY
        return PairPat(left, right)
    if isinstance(p, AsPat):
        inner = normalize(p.pattern)
        return EMPTY if isinstance(inner, EmptyPat) else AsPat(p.var, inner)
    if isinstance(p, OrPat):
        kept: List[Pattern] = []
        for branch in _branches(p):
            branch = normalize(branch)
            for flat in _branches(branch):
                if not isinstance(flat, EmptyPat) and flat not in kept:
                    kept.append(flat)
        return or_all(kept)
    return p


def match_value(p: Pattern, v: Expr) -> Optional[Dict[str, Expr]]:
    """
    The substitution produced by matching v against p, or None when it does not match
    """
    if isinstance(p, Wild):
        return {}
    if isinstance(p, EmptyPat):
        return None
    if isinstance(p, AsPat):
        theta = match_value(p.pattern, v)
        if theta is None:
            return None
        return {**theta, p.var: v}
    if isinstance(p, OrPat):
        theta = match_value(p.left, v)
        return theta if theta is not None else match_value(p.right, v)
    v = strip_annotations(v)
    if isinstance(p, UnitPat):
        return {} if isinstance(v, UnitVal) else None
    if isinstance(p, CtorPat):
        if isinstance(v, Ctor) and v.ctor == p.ctor:
            return match_value(p.arg, v.arg)
        return None
    if isinstance(p, PairPat):
        if not isinstance(v, Pair):
            return None
        left = match_value(p.left, v.left)
        if left is None:
            return None
        right = match_value(p.right, v.right)
        if right is None:
            return None
        return {**left, **right}
    return None


def intersect(sig: Signature, closure: SubsortClosure, a: Type, p: Pattern) -> List[Track]:
    """
    Tracks (as-variable typings, residual type) covering the values of a that match p
    """
    if isinstance(p, Wild):
        return [Track(EMPTY_CONTEXT, a)]
    if isinstance(p, EmptyPat):
        return []
    if isinstance(p, AsPat):
        return [
            Track(track.bindings.extend(p.var, track.residual), track.residual)
            for track in intersect(sig, closure, a, p.pattern)
        ]
    if isinstance(p, OrPat):
        tracks = intersect(sig, closure, a, p.left)
        for track in intersect(sig, closure, a, p.right):
            if track not in tracks:
                tracks.append(track)
        return tracks
    if isinstance(p, UnitPat) and isinstance(a, UnitType):
        return [Track(EMPTY_CONTEXT, UNIT)]
    if isinstance(p, PairPat) and isinstance(a, Prod):
        return [
            Track(left.bindings.concat(right.bindings), Prod(left.residual, right.residual))
            for left in intersect(sig, closure, a.left, p.left)
            for right in intersect(sig, closure, a.right, p.right)
        ]
    if isinstance(p, CtorPat) and isinstance(a, Sort):
        tracks = []
        for decl in sig.ctor_decls():
            if decl.ctor != p.ctor or not closure(decl.result, a.name):
                continue
            for track in intersect(sig, closure, decl.arg, p.arg):
                found = Track(track.bindings, Sort(decl.result))
                if found not in tracks:
                    tracks.append(found)
        return tracks
    message = f"type {print_type(a)} cannot be intersected with pattern {print_pattern(p)}"
    if isinstance(a, Intersect):
        message += (
            "; intersections nested inside the scrutinee type are not split,"
            " annotate the scrutinee with a type whose components are not intersections"
        )
    raise IllTypedScrutinyError(message)


def _subsumed(closure: SubsortClosure, smaller: Track, larger: Track, memo) -> bool:
    small, large = smaller.bindings.as_dict(), larger.bindings.as_dict()
    if small.keys() != large.keys():
        return False
    return all(subtype(None, closure, small[x], large[x], memo) for x in small)


def optimize_tracks(closure: SubsortClosure, tracks: Sequence[Track]) -> List[Track]:
    """
    Drop every track whose bindings are pointwise below those of another kept track
    """
    kept = list(tracks)
    memo = {}
    changed = True
    while changed:
        changed = False
        for j, candidate in enumerate(kept):
            for i, other in enumerate(kept):
                if i == j or not _subsumed(closure, candidate, other, memo):
                    continue
                # mutually subsuming: the earlier one stays
                if _subsumed(closure, other, candidate, memo) and j < i:
                    continue
                del kept[j]
                changed = True
                break
            if changed:
                break
    return kept
