"""
Decision procedure for A <= B. Structural; intersections on the right are
split first, intersections on the left try each arm. There is no
transitivity rule to search.
"""
from typing import Callable, Dict, Optional, Tuple

from DSRCheck.classes.syntax import Arrow, Intersect, Prod, Signature, Sort, Type, UnitType
from DSRCheck.sorts.closure import SubsortClosure

SubtypeFn = Callable[..., bool]


class _Decider:
    def __init__(self, closure: SubsortClosure, memo: Dict, contravariant: bool = True):
        self._closure = closure
        self._memo = memo
        self._contravariant = contravariant

    def holds(self, a: Type, b: Type) -> bool:
        key = (a, b)
        if key not in self._memo:
            self._memo[key] = self._decide(a, b)
        return self._memo[key]

    def _decide(self, a: Type, b: Type) -> bool:
        if isinstance(b, Intersect):
            return self.holds(a, b.left) and self.holds(a, b.right)
        if isinstance(a, Intersect):
            return self.holds(a.left, b) or self.holds(a.right, b)
        if isinstance(a, UnitType) and isinstance(b, UnitType):
            return True
        if isinstance(a, Sort) and isinstance(b, Sort):
            return self._closure(a.name, b.name)
        if isinstance(a, Prod) and isinstance(b, Prod):
            return self.holds(a.left, b.left) and self.holds(a.right, b.right)
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            if self._contravariant:
                domain = self.holds(b.dom, a.dom)
            else:
                domain = self.holds(a.dom, b.dom)
            return domain and self.holds(a.cod, b.cod)
        return False


def subtype(
    sig: Optional[Signature],
    closure: SubsortClosure,
    a: Type,
    b: Type,
    memo: Optional[Dict[Tuple[Type, Type], bool]] = None,
) -> bool:
    """
    Whether a <= b under the signature whose subsort closure is given
    """
    return _Decider(closure, {} if memo is None else memo).holds(a, b)


def covariant_arrow_subtype(
    sig: Optional[Signature],
    closure: SubsortClosure,
    a: Type,
    b: Type,
    memo: Optional[Dict[Tuple[Type, Type], bool]] = None,
) -> bool:
    """
    A deliberately wrong variant with arrows covariant in the domain, used as a
    mutant to make sure the metatheory suite can fail
    """
    return _Decider(closure, {} if memo is None else memo, contravariant=False).holds(a, b)
