"""
Independent oracles for the checker.

`DeclarativeOracle` decides the declarative type-assignment judgment (with
subsumption and value-restricted intersection introduction) by bounded,
mostly syntax-directed proof search on annotation-free terms. Verdicts are
three-valued: YES and NO are definitive, UNKNOWN means the search bound or
the candidate-type universe was exhausted. On YES it also produces an
annotated term that the bidirectional checker accepts.
"""
import logging
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from DSRCheck.classes.diagnostic import IllTypedScrutinyError
from DSRCheck.classes.syntax import (
    EMPTY_CONTEXT,
    UNIT,
    WILD,
    Anno,
    App,
    Arm,
    Arrow,
    Case,
    Context,
    Ctor,
    Declare,
    Expr,
    Intersect,
    Lam,
    Pair,
    Prod,
    Sort,
    Type,
    UnitType,
    UnitVal,
    Var,
    conjuncts,
    is_value,
    pattern_vars,
)
from DSRCheck.patterns import complement, intersect, normalize, pat_intersect, pat_type
from DSRCheck.sorts import check_extension, type_wf, underlying
from DSRCheck.typecheck import CheckSession

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

Verdict = Tuple[str, Optional[Expr]]

_NO: Verdict = (NO, None)
_UNKNOWN: Verdict = (UNKNOWN, None)


def enum_values(session: CheckSession, a: Type, max_size: int) -> List[Expr]:
    """
    Closed values of a up to max_size, each confirmed by the checker
    """
    return [v for v in session.enumerator.up_to(a, max_size) if session.check(EMPTY_CONTEXT, v, a) is None]


def ctor_has_type(session: CheckSession, c: str, arg: Type, sort: str) -> bool:
    return any(
        decl_arg == arg and session.closure(result, sort) for decl_arg, result in session.ctor_types(c)
    )


def subst_typing(session: CheckSession, theta: Mapping[str, Expr], gamma: Context) -> bool:
    """
    Whether theta maps every variable of gamma to a closed term of its type
    """
    return all(x in theta and session.check(EMPTY_CONTEXT, theta[x], a) is None for x, a in gamma)


def type_universe(session: CheckSession) -> List[Type]:
    """
    Well-formed types of structural depth at most two, plus same-datatype sort intersections
    """
    sig = session.sig
    sorts = sorted(sig.sort_names())
    atoms: List[Type] = [UNIT] + [Sort(s) for s in sorts]
    for i, s in enumerate(sorts):
        for t in sorts[i + 1 :]:
            if sig.datatype_of(s) == sig.datatype_of(t) and not session.closure(s, t) and not session.closure(t, s):
                atoms.append(Intersect(Sort(s), Sort(t)))
    universe = list(atoms)
    for left, right in product(atoms, repeat=2):
        universe.append(Prod(left, right))
        universe.append(Arrow(left, right))
    return universe


def _shape_fits(e: Expr, a: Type) -> bool:
    while isinstance(e, Anno):
        e = e.body
    if isinstance(a, Intersect):
        return _shape_fits(e, a.left) and _shape_fits(e, a.right)
    if isinstance(e, Lam):
        return isinstance(a, Arrow)
    if isinstance(e, Pair):
        return isinstance(a, Prod)
    if isinstance(e, Ctor):
        return isinstance(a, Sort)
    if isinstance(e, UnitVal):
        return isinstance(a, UnitType)
    return True


def _flat(a: Type) -> bool:
    """
    No intersection nested under a product
    """
    if isinstance(a, Prod):
        return not isinstance(a.left, Intersect) and not isinstance(a.right, Intersect) and _flat(a.left) and _flat(a.right)
    if isinstance(a, Intersect):
        return _flat(a.left) and _flat(a.right)
    return True


def _meet(types: Sequence[Type]) -> Type:
    result = types[0]
    for a in types[1:]:
        if a != result:
            result = Intersect(result, a)
    return result


def merge_annotations(e1: Expr, e2: Expr) -> Expr:
    """
    Union of two decorations of the same erased term; annotation lists are concatenated without duplicates
    """
    if isinstance(e1, Anno) and isinstance(e2, Anno):
        types = list(e1.types)
        types.extend(a for a in e2.types if a not in types)
        return Anno(merge_annotations(e1.body, e2.body), tuple(types), e1.loc)
    if isinstance(e1, Anno):
        return Anno(merge_annotations(e1.body, e2), e1.types, e1.loc)
    if isinstance(e2, Anno):
        return Anno(merge_annotations(e1, e2.body), e2.types, e2.loc)
    if isinstance(e1, Lam):
        return Lam(e1.var, merge_annotations(e1.body, e2.body), e1.loc)
    if isinstance(e1, App):
        return App(merge_annotations(e1.fn, e2.fn), merge_annotations(e1.arg, e2.arg), e1.loc)
    if isinstance(e1, Pair):
        return Pair(merge_annotations(e1.left, e2.left), merge_annotations(e1.right, e2.right), e1.loc)
    if isinstance(e1, Ctor):
        return Ctor(e1.ctor, merge_annotations(e1.arg, e2.arg), e1.loc)
    if isinstance(e1, Case):
        arms = tuple(
            Arm(a1.pattern, merge_annotations(a1.body, a2.body)) for a1, a2 in zip(e1.arms, e2.arms)
        )
        return Case(merge_annotations(e1.scrutinee, e2.scrutinee), arms, e1.loc)
    if isinstance(e1, Declare):
        return Declare(e1.ext, merge_annotations(e1.body, e2.body), e1.loc)
    return e1


def _any(verdicts) -> Verdict:
    """
    First YES wins; NO only when every candidate says NO
    """
    outcome = NO
    for verdict, term in verdicts:
        if verdict == YES:
            return verdict, term
        if verdict == UNKNOWN:
            outcome = UNKNOWN
    return outcome, None


class DeclarativeOracle:
    """
    Bounded proof search for the declarative typing judgment under one session
    """

    def __init__(self, session: CheckSession):
        self._session = session
        self._memo: Dict = {}
        self._universe: Optional[List[Type]] = None
        self._inner: Dict = {}
        klass = self.__class__
        self._logger = logging.getLogger(f"{klass.__module__}.{klass.__name__}")

    @property
    def session(self) -> CheckSession:
        """
        Session getter
        """
        return self._session

    @property
    def universe(self) -> List[Type]:
        if self._universe is None:
            self._universe = type_universe(self._session)
        return self._universe

    def typable(self, gamma: Context, e: Expr, a: Type, depth: int) -> str:
        return self.derive(gamma, e, a, depth)[0]

    def derive(self, gamma: Context, e: Expr, a: Type, depth: int) -> Verdict:
        """
        Verdict and, on YES, an annotated version of e accepted by the bidirectional checker
        """
        if depth <= 0:
            return _UNKNOWN
        key = (gamma, e, a, depth)
        if key not in self._memo:
            self._memo[key] = self._derive(gamma, e, a, depth)
        return self._memo[key]

    def _subtype(self, a: Type, b: Type) -> bool:
        return self._session.subtype(a, b)

    def _derive(self, gamma: Context, e: Expr, a: Type, depth: int) -> Verdict:
        session = self._session
        if isinstance(e, Anno):
            return self.derive(gamma, e.body, a, depth)
        if isinstance(a, Intersect) and is_value(e):
            left, left_term = self.derive(gamma, e, a.left, depth)
            if left == NO:
                return _NO
            right, right_term = self.derive(gamma, e, a.right, depth)
            if right == NO:
                return _NO
            if left == YES and right == YES:
                return YES, merge_annotations(left_term, right_term)
            return _UNKNOWN
        if isinstance(e, Var):
            found = gamma.lookup(e.name)
            if found is not None and self._subtype(found, a):
                return YES, e
            return _NO
        if isinstance(e, UnitVal):
            return (YES, e) if self._subtype(UNIT, a) else _NO
        if isinstance(e, Lam):
            if not isinstance(a, Arrow):
                return _NO
            verdict, body = self.derive(gamma.extend(e.var, a.dom), e.body, a.cod, depth - 1)
            return (YES, Lam(e.var, body, e.loc)) if verdict == YES else (verdict, None)
        if isinstance(e, Pair):
            return self._derive_pair(gamma, e, a, depth)
        if isinstance(e, Ctor):
            return self._derive_ctor(gamma, e, a, depth)
        if isinstance(e, App):
            return self._derive_app(gamma, e, a, depth)
        if isinstance(e, Case):
            return self._derive_case(gamma, e, a, depth)
        if isinstance(e, Declare):
            if check_extension(session.sig, e.ext, session.ursig) or not type_wf(session.sig, a):
                return _NO
            verdict, body = self._extended(e.ext).derive(gamma, e.body, a, depth - 1)
            return (YES, Declare(e.ext, body, e.loc)) if verdict == YES else (verdict, None)
        return _NO

    def _extended(self, ext) -> "DeclarativeOracle":
        if ext not in self._inner:
            self._inner[ext] = DeclarativeOracle(self._session.extended(ext))
        return self._inner[ext]

    def _derive_pair(self, gamma: Context, e: Pair, a: Type, depth: int) -> Verdict:
        parts = conjuncts(a)
        if not all(isinstance(part, Prod) for part in parts):
            return _NO
        left_type = _meet([part.left for part in parts])
        right_type = _meet([part.right for part in parts])
        left, left_term = self.derive(gamma, e.left, left_type, depth - 1)
        if left == NO:
            return _NO
        right, right_term = self.derive(gamma, e.right, right_type, depth - 1)
        if right == NO:
            return _NO
        if left == YES and right == YES:
            term = Pair(left_term, right_term, e.loc)
            if not is_value(e):
                term = Anno(term, (Prod(left_type, right_type),))
            return YES, term
        return _UNKNOWN

    def _derive_ctor(self, gamma: Context, e: Ctor, a: Type, depth: int) -> Verdict:
        parts = conjuncts(a)
        if not all(isinstance(part, Sort) for part in parts):
            return _NO
        candidates = []
        for arg, result in self._session.ctor_types(e.ctor):
            if all(self._session.closure(result, part.name) for part in parts):
                candidates.append((arg, result))
        outcomes = []
        for arg, result in candidates:
            verdict, term = self.derive(gamma, e.arg, arg, depth - 1)
            if verdict == YES:
                term = Ctor(e.ctor, term, e.loc)
                if not is_value(e):
                    term = Anno(term, (Sort(result),))
            outcomes.append((verdict, term))
        return _any(outcomes)

    def _derive_app(self, gamma: Context, e: App, a: Type, depth: int) -> Verdict:
        if isinstance(e.fn, Var):
            head = gamma.lookup(e.fn.name)
            if head is None:
                return _NO
            outcomes = []
            for part in conjuncts(head):
                if isinstance(part, Arrow) and self._subtype(part.cod, a):
                    verdict, arg = self.derive(gamma, e.arg, part.dom, depth - 1)
                    outcomes.append((verdict, App(e.fn, arg, e.loc) if verdict == YES else None))
            return _any(outcomes)
        found = False
        for dom in self.universe:
            if not _shape_fits(e.arg, dom):
                continue
            verdict, arg = self.derive(gamma, e.arg, dom, depth - 1)
            if verdict != YES:
                continue
            fn_type = Arrow(dom, a)
            verdict, fn = self.derive(gamma, e.fn, fn_type, depth - 1)
            if verdict == YES:
                return YES, App(Anno(fn, (fn_type,)), arg, e.loc)
            found = True
        self._logger.debug("no function type found for %r (tried=%s)", e, found)
        return _UNKNOWN

    def _derive_case(self, gamma: Context, e: Case, d: Type, depth: int) -> Verdict:
        scrutinee = e.scrutinee
        if isinstance(scrutinee, Var):
            bound = gamma.lookup(scrutinee.name)
            if bound is None:
                return _NO
            candidates = [part for part in conjuncts(bound)]
            definitive = all(_flat(part) for part in candidates)
            outcomes = [self._derive_matches(gamma, e, scrutinee, a, d, depth) for a in candidates]
            verdict, term = _any(outcomes)
            if verdict == YES or definitive:
                return verdict, term
            return _UNKNOWN
        for a in self.universe:
            if isinstance(a, Intersect) or not _shape_fits(scrutinee, a):
                continue
            verdict, decorated = self.derive(gamma, scrutinee, a, depth - 1)
            if verdict != YES:
                continue
            verdict, term = self._derive_matches(gamma, e, Anno(decorated, (a,)), a, d, depth)
            if verdict == YES:
                return verdict, term
        return _UNKNOWN

    def _derive_matches(
        self, gamma: Context, e: Case, scrutinee: Expr, a: Type, d: Type, depth: int
    ) -> Verdict:
        session = self._session
        tau = underlying(session.sig, a)
        for arm in e.arms:
            names = pattern_vars(arm.pattern)
            if not pat_type(session.ursig, arm.pattern, tau) or len(names) != len(set(names)):
                return _NO
        residual = WILD
        arms: List[Arm] = []
        unknown = False
        try:
            for arm in e.arms:
                tracks = intersect(session.sig, session.closure, a, pat_intersect(residual, arm.pattern))
                body: Optional[Expr] = None
                for track in tracks:
                    verdict, term = self.derive(gamma.concat(track.bindings), arm.body, d, depth - 1)
                    if verdict == NO:
                        return _NO
                    if verdict == UNKNOWN:
                        unknown = True
                    elif body is None:
                        body = term
                    else:
                        body = merge_annotations(body, term)
                arms.append(Arm(arm.pattern, arm.body if body is None else body))
                residual = normalize(pat_intersect(residual, complement(session.ursig, tau, arm.pattern)))
            if intersect(session.sig, session.closure, a, residual):
                return _NO
        except IllTypedScrutinyError:
            return _NO
        if unknown:
            return _UNKNOWN
        return YES, Case(scrutinee, tuple(arms), e.loc)


def declarative_typable(session: CheckSession, gamma: Context, e: Expr, a: Type, depth: int) -> str:
    """
    YES, NO or UNKNOWN for the declarative judgment gamma |- e : a within the search depth
    """
    return DeclarativeOracle(session).typable(gamma, e, a, depth)


def annotate(session: CheckSession, gamma: Context, e: Expr, a: Type, depth: int) -> Optional[Expr]:
    """
    An annotated term erasing to e that checks against a, when the declarative search finds a derivation
    """
    verdict, term = DeclarativeOracle(session).derive(gamma, e, a, depth)
    return term if verdict == YES else None
