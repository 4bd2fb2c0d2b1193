from typing import Dict, List, Optional, Tuple

from DSRCheck.classes.syntax import (
    UNIT_VAL,
    Arrow,
    Ctor,
    Expr,
    Intersect,
    Lam,
    Pair,
    Pattern,
    Prod,
    Signature,
    Sort,
    Type,
    UnitType,
    Var,
)
from DSRCheck.patterns import match_value
from DSRCheck.sorts import inversion
from DSRCheck.sorts.closure import SubsortClosure
from DSRCheck.sorts.subtyping import subtype


class ValueEnumerator:
    """
    Type-directed enumeration of closed values, smallest first.

    Constructor values are read off the signature's inversion principles;
    arrow types only contribute the identity function when it fits.
    """

    def __init__(self, sig: Signature, closure: SubsortClosure):
        self._sig = sig
        self._closure = closure
        self._cache: Dict[Tuple[Type, int], List[Expr]] = {}
        self._sub_memo = {}

    @property
    def sig(self) -> Signature:
        """
        Signature getter
        """
        return self._sig

    def of_size(self, a: Type, size: int) -> List[Expr]:
        """
        Values of exactly the given syntactic size
        """
        key = (a, size)
        if key not in self._cache:
            self._cache[key] = self._enumerate(a, size)
        return self._cache[key]

    def up_to(self, a: Type, max_size: int) -> List[Expr]:
        return [v for size in range(1, max_size + 1) for v in self.of_size(a, size)]

    def _enumerate(self, a: Type, size: int) -> List[Expr]:
        if size <= 0:
            return []
        if isinstance(a, UnitType):
            return [UNIT_VAL] if size == 1 else []
        if isinstance(a, Sort):
            found: List[Expr] = []
            for decl in inversion(self._sig, self._closure, a.name):
                for arg in self.of_size(decl.arg, size - 1):
                    value = Ctor(decl.ctor, arg)
                    if value not in found:
                        found.append(value)
            return found
        if isinstance(a, Prod):
            return [
                Pair(left, right)
                for k in range(1, size - 1)
                for left in self.of_size(a.left, k)
                for right in self.of_size(a.right, size - 1 - k)
            ]
        if isinstance(a, Arrow):
            if size == 2 and subtype(self._sig, self._closure, a.dom, a.cod, self._sub_memo):
                return [Lam("x", Var("x"))]
            return []
        if isinstance(a, Intersect):
            right = set(self.of_size(a.right, size))
            return [v for v in self.of_size(a.left, size) if v in right]
        return []


def find_witness(
    enumerator: ValueEnumerator, a: Type, residual: Pattern, max_size: int = 5
) -> Optional[Expr]:
    """
    The smallest value of type a matched by the residual pattern, if any is small enough
    """
    for value in enumerator.up_to(a, max_size):
        if match_value(residual, value) is not None:
            return value
    return None
