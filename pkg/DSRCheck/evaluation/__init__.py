"""
Call-by-value small-step evaluation.

Evaluation contexts are the congruence cases of `step`: the function position
before the argument, pair components left to right, the constructor argument,
the case scrutinee, and the inside of an annotation.
"""
from dataclasses import dataclass, replace
from typing import Iterator, Optional, Sequence

from DSRCheck.classes.syntax import (
    Anno,
    App,
    Arm,
    Case,
    Ctor,
    Declare,
    Expr,
    Lam,
    Pair,
    erase,
    is_value,
    strip_annotations,
    subst,
)
from DSRCheck.io.printer import print_expr
from DSRCheck.patterns import match_value

VALUE = "value"
STUCK = "stuck"
OUT_OF_FUEL = "out_of_fuel"

DEFAULT_FUEL = 100000


def step_matches(ms: Sequence[Arm], v: Expr) -> Optional[Expr]:
    """
    The body of the first arm matching v, under the match substitution
    """
    for arm in ms:
        theta = match_value(arm.pattern, v)
        if theta is not None:
            return subst(theta, arm.body)
    return None


def step(e: Expr) -> Optional[Expr]:
    """
    One reduction step, or None when e is a value or stuck
    """
    if isinstance(e, App):
        if not is_value(e.fn):
            fn = step(e.fn)
            return None if fn is None else replace(e, fn=fn)
        if not is_value(e.arg):
            arg = step(e.arg)
            return None if arg is None else replace(e, arg=arg)
        fn = strip_annotations(e.fn)
        if isinstance(fn, Lam):
            return subst({fn.var: e.arg}, fn.body)
        return None
    if isinstance(e, Pair):
        if not is_value(e.left):
            left = step(e.left)
            return None if left is None else replace(e, left=left)
        if not is_value(e.right):
            right = step(e.right)
            return None if right is None else replace(e, right=right)
        return None
    if isinstance(e, Ctor):
        if is_value(e.arg):
            return None
        arg = step(e.arg)
        return None if arg is None else replace(e, arg=arg)
    if isinstance(e, Case):
        if not is_value(e.scrutinee):
            scrutinee = step(e.scrutinee)
            return None if scrutinee is None else replace(e, scrutinee=scrutinee)
        return step_matches(e.arms, e.scrutinee)
    if isinstance(e, Declare):
        return e.body
    if isinstance(e, Anno):
        if is_value(e.body):
            return None
        body = step(e.body)
        return None if body is None else replace(e, body=body)
    return None


def iter_steps(e: Expr, fuel: Optional[int] = None) -> Iterator[Expr]:
    """
    Successive states starting from e itself, at most fuel steps
    """
    yield e
    taken = 0
    while fuel is None or taken < fuel:
        following = step(e)
        if following is None:
            return
        e = following
        taken += 1
        yield e


@dataclass(frozen=True)
class Outcome:
    kind: str
    expr: Expr
    steps: int

    @property
    def is_value(self) -> bool:
        return self.kind == VALUE

    def asdict(self):
        return {"kind": self.kind, "expr": print_expr(self.expr), "steps": self.steps}


def evaluate(e: Expr, fuel: int = DEFAULT_FUEL, erase_annotations: bool = False) -> Outcome:
    """
    Step at most fuel times and classify the final state
    """
    if fuel < 0:
        raise ValueError(f"fuel must be nonnegative, got {fuel}")
    if erase_annotations:
        e = erase(e)
    steps = 0
    while True:
        if is_value(e):
            return Outcome(VALUE, e, steps)
        if steps >= fuel:
            return Outcome(OUT_OF_FUEL, e, steps)
        following = step(e)
        if following is None:
            return Outcome(STUCK, e, steps)
        e = following
        steps += 1
