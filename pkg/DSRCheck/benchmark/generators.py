"""
Seeded generators for signatures, types, patterns and typed terms.

Every generator takes a seed or a `numpy.random.Generator`, so a trial is
reproducible from its seed alone.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from DSRCheck.classes.diagnostic import Diagnostic
from DSRCheck.classes.syntax import (
    EMPTY_CONTEXT,
    UNIT,
    UNIT_PAT,
    UNIT_VAL,
    U_UNIT,
    WILD,
    Anno,
    App,
    Arm,
    Arrow,
    AsPat,
    Block,
    Case,
    Context,
    Ctor,
    CtorDecl,
    CtorPat,
    Declare,
    Expr,
    Intersect,
    Lam,
    OrPat,
    Pair,
    PairPat,
    Pattern,
    Prod,
    Signature,
    Sort,
    SortDecl,
    Subsort,
    Type,
    UArrow,
    UCtorDecl,
    UData,
    UnitType,
    UnrefinedSignature,
    UnrefinedType,
    UProd,
    UUnit,
    Var,
)
from DSRCheck.sorts import check_extension, inversion, sig_wf, underlying
from DSRCheck.sorts.closure import SubsortClosure
from DSRCheck.typecheck import CheckSession

LOGGER = logging.getLogger(__name__)

DATATYPE_NAMES = ("nat", "tree", "bits")
CTOR_NAMES = ("Z", "S", "Leaf", "Node", "Empty", "One", "Zero", "Pack")


@dataclass(frozen=True)
class GenBounds:
    """
    Size limits for generated signatures and terms
    """

    term_size: int = 9
    value_size: int = 6
    type_depth: int = 3
    blocks: int = 4
    sorts: int = 6
    ctor_typings: int = 6
    attempts: int = 20


@dataclass
class GeneratedSignature:
    ursig: UnrefinedSignature
    sig: Signature
    accepted: bool
    diagnostics: List[Diagnostic] = field(default_factory=list)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _pick(rng: np.random.Generator, items: Sequence):
    return items[int(rng.integers(len(items)))]


def gen_ursig(rng: np.random.Generator) -> UnrefinedSignature:
    """
    One or two datatypes, each with a nullary base constructor
    """
    count = int(rng.integers(1, 3))
    names = list(DATATYPE_NAMES[:count])
    ctor_names = list(CTOR_NAMES)
    rng.shuffle(ctor_names)
    decls: List[UCtorDecl] = []
    for name in names:
        decls.append(UCtorDecl(ctor_names.pop(), U_UNIT, name))
        for _ in range(int(rng.integers(1, 3))):
            choice = rng.random()
            if choice < 0.5:
                arg: UnrefinedType = UData(name)
            elif choice < 0.8:
                arg = UProd(UData(name), UData(_pick(rng, names)))
            else:
                arg = UData(_pick(rng, names))
            decls.append(UCtorDecl(ctor_names.pop(), arg, name))
    return UnrefinedSignature(tuple(names), tuple(decls))


def _refine(rng: np.random.Generator, tau: UnrefinedType, by_datatype, fallback) -> Optional[Type]:
    if isinstance(tau, UUnit):
        return UNIT
    if isinstance(tau, UData):
        sorts = by_datatype.get(tau.name) or fallback.get(tau.name)
        if not sorts:
            return None
        return Sort(_pick(rng, sorts))
    if isinstance(tau, UProd):
        left = _refine(rng, tau.left, by_datatype, fallback)
        right = _refine(rng, tau.right, by_datatype, fallback)
        return None if left is None or right is None else Prod(left, right)
    return None


def _sorts_by_datatype(sig: Signature, extra: Sequence[SortDecl] = ()) -> dict:
    table: dict = {}
    for block in sig.blocks:
        for decl in block.sorts:
            table.setdefault(decl.refines, []).append(decl.sort)
    for decl in extra:
        table.setdefault(decl.refines, []).append(decl.sort)
    return table


def gen_block(
    rng: np.random.Generator,
    ursig: UnrefinedSignature,
    prefix: Signature,
    names: List[str],
    bounds: GenBounds,
    safe: bool,
) -> Block:
    """
    A candidate block over prefix; safe blocks only add sorts below a covered prefix sort
    """
    old = _sorts_by_datatype(prefix)
    datatypes = list(ursig.datatypes)
    budget = max(1, min(2, bounds.sorts - len(prefix.sort_names())))
    sorts = []
    for _ in range(min(len(names), int(rng.integers(1, budget + 1)))):
        sorts.append(SortDecl(names.pop(0), _pick(rng, datatypes)))
    fresh = _sorts_by_datatype(Signature(), sorts)
    items: List = []
    for decl in sorts:
        supers = old.get(decl.refines, [])
        if safe and supers:
            top = _pick(rng, supers)
            items.append(Subsort(decl.sort, top))
            for ctor in prefix.ctor_decls():
                if ctor.result == top and rng.random() < 0.6:
                    items.append(CtorDecl(ctor.ctor, ctor.arg, decl.sort))
            continue
        if not safe and supers and rng.random() < 0.5:
            other = _pick(rng, supers)
            items.append(Subsort(other, decl.sort) if rng.random() < 0.5 else Subsort(decl.sort, other))
        for ctor in ursig.constructors_of(decl.refines):
            if rng.random() < (0.9 if safe else 0.6):
                arg = _refine(rng, ctor.arg, fresh if rng.random() < 0.5 else old, fresh)
                if arg is not None:
                    items.append(CtorDecl(ctor.ctor, arg, decl.sort))
    if len(sorts) == 2 and sorts[0].refines == sorts[1].refines and rng.random() < 0.5:
        items.append(Subsort(sorts[1].sort, sorts[0].sort))
    ctor_count = len(prefix.ctor_decls())
    kept: List = []
    for item in items:
        if isinstance(item, CtorDecl):
            if ctor_count >= bounds.ctor_typings:
                continue
            ctor_count += 1
        if item not in kept:
            kept.append(item)
    return Block(tuple(sorts), tuple(kept))


def gen_signature(seed, bounds: GenBounds = GenBounds()) -> GeneratedSignature:
    """
    A random unrefined signature and a candidate signature over it, with its well-formedness verdict
    """
    rng = _rng(seed)
    ursig = gen_ursig(rng)
    names = [f"s{i}" for i in range(bounds.sorts)]
    sig = Signature()
    for index in range(int(rng.integers(1, bounds.blocks + 1))):
        if not names:
            break
        # the first block starts from nothing, later ones mostly extend safely
        safe = index == 0 or rng.random() < 0.75
        sig = sig.extend(Signature((gen_block(rng, ursig, sig, names, bounds, safe),)))
    diagnostics = sig_wf(sig, ursig)
    if diagnostics:
        LOGGER.debug("generated signature rejected: %s", diagnostics[0])
    return GeneratedSignature(ursig, sig, not diagnostics, diagnostics)


def gen_extension(
    rng: np.random.Generator,
    ursig: UnrefinedSignature,
    sig: Signature,
    prefix: str = "n",
    safe: Optional[bool] = None,
) -> Signature:
    """
    A one-block candidate extension of sig whose sort names start with prefix
    """
    taken = set(sig.sort_names())
    names = [f"{prefix}{i}" for i in range(1, 8) if f"{prefix}{i}" not in taken][:2]
    if safe is None:
        safe = rng.random() < 0.75
    wide = GenBounds(sorts=len(sig.sort_names()) + 2, ctor_typings=len(sig.ctor_decls()) + 3)
    return Signature((gen_block(rng, ursig, sig, list(names), wide, safe),))


def gen_accepted_signature(seed, bounds: GenBounds = GenBounds()) -> Optional[GeneratedSignature]:
    rng = _rng(seed)
    for _ in range(bounds.attempts):
        generated = gen_signature(rng, bounds)
        if generated.accepted and generated.sig.blocks:
            return generated
    return None


def gen_type(
    rng: np.random.Generator, sig: Signature, depth: int, tau: Optional[UnrefinedType] = None
) -> Optional[Type]:
    """
    A well-formed type, refining tau when given
    """
    by_datatype = _sorts_by_datatype(sig)
    if tau is not None:
        return _gen_refining(rng, by_datatype, tau, depth)
    choice = rng.random()
    if depth <= 1 or choice < 0.45:
        if not by_datatype or rng.random() < 0.15:
            return UNIT
        sorts = by_datatype[_pick(rng, sorted(by_datatype))]
        first = Sort(_pick(rng, sorts))
        if len(sorts) > 1 and rng.random() < 0.15:
            second = Sort(_pick(rng, sorts))
            return first if second == first else Intersect(first, second)
        return first
    left = gen_type(rng, sig, depth - 1)
    right = gen_type(rng, sig, depth - 1)
    if choice < 0.7:
        return Arrow(left, right)
    if choice < 0.9:
        return Prod(left, right)
    dom2 = gen_type(rng, sig, depth - 1, tau=underlying(sig, left))
    if dom2 is None or dom2 == left:
        return Arrow(left, right)
    return Intersect(Arrow(left, right), Arrow(dom2, right))


def _gen_refining(rng, by_datatype, tau: UnrefinedType, depth: int) -> Optional[Type]:
    if isinstance(tau, UUnit):
        return UNIT
    if isinstance(tau, UData):
        sorts = by_datatype.get(tau.name)
        return Sort(_pick(rng, sorts)) if sorts else None
    left_tau, right_tau = (tau.dom, tau.cod) if isinstance(tau, UArrow) else (tau.left, tau.right)
    left = _gen_refining(rng, by_datatype, left_tau, depth - 1)
    right = _gen_refining(rng, by_datatype, right_tau, depth - 1)
    if left is None or right is None:
        return None
    return Arrow(left, right) if isinstance(tau, UArrow) else Prod(left, right)


def gen_supertype(rng: np.random.Generator, sig: Signature, closure: SubsortClosure, a: Type) -> Type:
    """
    A type above a, built with the structural rules only
    """
    if isinstance(a, Sort):
        return Sort(_pick(rng, sorted(closure.supersorts(a.name) | {a.name})))
    if isinstance(a, Intersect):
        choice = rng.random()
        if choice < 0.4:
            return gen_supertype(rng, sig, closure, a.left)
        if choice < 0.8:
            return gen_supertype(rng, sig, closure, a.right)
        return Intersect(gen_supertype(rng, sig, closure, a.left), gen_supertype(rng, sig, closure, a.right))
    if isinstance(a, Prod):
        return Prod(gen_supertype(rng, sig, closure, a.left), gen_supertype(rng, sig, closure, a.right))
    if isinstance(a, Arrow):
        return Arrow(gen_subtype(rng, sig, closure, a.dom), gen_supertype(rng, sig, closure, a.cod))
    return a


def gen_subtype(rng: np.random.Generator, sig: Signature, closure: SubsortClosure, a: Type) -> Type:
    """
    A type below a; arrow domains are widened and an extra conjunct may be added
    """
    if isinstance(a, Sort):
        below = sorted(closure.subsorts(a.name) | {a.name})
        narrowed = Sort(_pick(rng, below))
    elif isinstance(a, Intersect):
        narrowed = Intersect(gen_subtype(rng, sig, closure, a.left), gen_subtype(rng, sig, closure, a.right))
    elif isinstance(a, Prod):
        narrowed = Prod(gen_subtype(rng, sig, closure, a.left), gen_subtype(rng, sig, closure, a.right))
    elif isinstance(a, Arrow):
        narrowed = Arrow(gen_supertype(rng, sig, closure, a.dom), gen_subtype(rng, sig, closure, a.cod))
    else:
        return a
    tau = underlying(sig, a)
    if tau is not None and rng.random() < 0.5:
        extra = _gen_refining(rng, _sorts_by_datatype(sig), tau, 1)
        if extra is not None and extra != narrowed:
            return Intersect(narrowed, extra)
    return narrowed


def gen_pattern(
    rng: np.random.Generator, ursig: UnrefinedSignature, tau: UnrefinedType, depth: int, names: List[str]
) -> Pattern:
    """
    A pattern suitable for tau; as-variables are drawn from names without repetition
    """
    choice = rng.random()
    if depth <= 0 or choice < 0.2:
        return WILD
    if choice < 0.3 and names:
        return AsPat(names.pop(0), gen_pattern(rng, ursig, tau, depth - 1, names))
    if choice < 0.4:
        return OrPat(gen_pattern(rng, ursig, tau, depth - 1, names), gen_pattern(rng, ursig, tau, depth - 1, []))
    if isinstance(tau, UUnit):
        return UNIT_PAT
    if isinstance(tau, UProd):
        return PairPat(
            gen_pattern(rng, ursig, tau.left, depth - 1, names), gen_pattern(rng, ursig, tau.right, depth - 1, names)
        )
    if isinstance(tau, UData):
        ctors = ursig.constructors_of(tau.name)
        if not ctors:
            return WILD
        ctor = _pick(rng, ctors)
        return CtorPat(ctor.ctor, gen_pattern(rng, ursig, ctor.arg, depth - 1, names))
    return WILD


class TermGenerator:
    """
    Generation by typing rule: each choice mirrors a checking or synthesis rule,
    and the result is re-checked before it is emitted
    """

    def __init__(self, session: CheckSession, rng: np.random.Generator, bounds: GenBounds = GenBounds()):
        self._session = session
        self._rng = rng
        self._bounds = bounds
        self._counter = 0
        klass = self.__class__
        self._logger = logging.getLogger(f"{klass.__module__}.{klass.__name__}")

    def generate(self, a: Type, gamma: Context = EMPTY_CONTEXT) -> Optional[Expr]:
        for attempt in range(self._bounds.attempts):
            e = self._gen(gamma, a, self._bounds.term_size, self._session)
            if e is not None and self._session.check(gamma, e, a) is None:
                return e
            self._logger.debug("attempt %d rejected", attempt)
        return None

    def _fresh(self, base: str) -> str:
        self._counter += 1
        return f"{base}{self._counter}"

    def _value(self, session: CheckSession, a: Type) -> Optional[Expr]:
        values = session.enumerator.up_to(a, self._bounds.value_size)
        return _pick(self._rng, values) if values else None

    def _gen(self, gamma: Context, a: Type, size: int, session: CheckSession) -> Optional[Expr]:
        rng = self._rng
        candidates = [x for x, b in gamma if session.subtype(b, a)]
        if size <= 1:
            if candidates:
                return Var(_pick(rng, candidates))
            return UNIT_VAL if isinstance(a, UnitType) else self._value(session, a)
        choice = rng.random()
        if candidates and choice < 0.15:
            return Var(_pick(rng, candidates))
        if choice < 0.25:
            return self._gen_app(gamma, a, size, session)
        if choice < 0.32:
            return self._gen_anno(gamma, a, size, session)
        if choice < 0.38:
            return self._gen_declare(gamma, a, size, session)
        if choice < 0.44:
            return self._gen_coercion(gamma, a, size, session)
        if choice < 0.5:
            return self._gen_var_app(gamma, a, size, session)
        return self._gen_intro(gamma, a, size, session)

    def _gen_intro(self, gamma: Context, a: Type, size: int, session: CheckSession) -> Optional[Expr]:
        rng = self._rng
        if isinstance(a, UnitType):
            return UNIT_VAL
        if isinstance(a, Prod):
            left = self._gen(gamma, a.left, size // 2, session)
            right = self._gen(gamma, a.right, size // 2, session)
            return None if left is None or right is None else Pair(left, right)
        if isinstance(a, Sort):
            decls = inversion(session.sig, session.closure, a.name)
            if not decls:
                return None
            decl = _pick(rng, decls)
            arg = self._gen(gamma, decl.arg, size - 1, session)
            return None if arg is None else Ctor(decl.ctor, arg)
        if isinstance(a, Arrow):
            x = self._fresh("x")
            inner = gamma.extend(x, a.dom)
            if isinstance(a.dom, Sort) and rng.random() < 0.4:
                return self._gen_case_lam(x, inner, a, size, session)
            body = self._gen(inner, a.cod, size - 1, session)
            return None if body is None else Lam(x, body)
        if isinstance(a, Intersect):
            value = self._value(session, a)
            if value is not None:
                return value
            return self._gen_intro(gamma, a.left, size, session)
        return None

    def _gen_case_lam(self, x: str, gamma: Context, a: Arrow, size: int, session: CheckSession) -> Optional[Expr]:
        ctors: List[str] = []
        for decl in inversion(session.sig, session.closure, a.dom.name):
            if decl.ctor not in ctors:
                ctors.append(decl.ctor)
        if not ctors:
            return None
        arms = []
        budget = max(1, (size - 2) // max(1, len(ctors)))
        for ctor in ctors:
            y = self._fresh("y")
            body = self._gen(gamma.extend(y, a.dom), a.cod, budget, session)
            if body is None:
                return None
            arms.append(Arm(AsPat(y, CtorPat(ctor, WILD)), body))
        return Lam(x, Case(Var(x), tuple(arms)))

    def _gen_app(self, gamma: Context, a: Type, size: int, session: CheckSession) -> Optional[Expr]:
        dom = gen_type(self._rng, session.sig, 2)
        if dom is None:
            return None
        x = self._fresh("x")
        body = self._gen(gamma.extend(x, dom), a, size // 2, session)
        arg = self._gen(gamma, dom, size // 2, session)
        if body is None or arg is None:
            return None
        return App(Anno(Lam(x, body), (Arrow(dom, a),)), arg)

    def _gen_var_app(self, gamma: Context, a: Type, size: int, session: CheckSession) -> Optional[Expr]:
        options: List[Tuple[str, Arrow]] = []
        for x, b in gamma:
            stack = [b]
            while stack:
                part = stack.pop()
                if isinstance(part, Intersect):
                    stack.extend([part.left, part.right])
                elif isinstance(part, Arrow) and session.subtype(part.cod, a):
                    options.append((x, part))
        if not options:
            return self._gen_intro(gamma, a, size, session)
        x, arrow = _pick(self._rng, options)
        arg = self._gen(gamma, arrow.dom, size - 1, session)
        return None if arg is None else App(Var(x), arg)

    def _gen_anno(self, gamma: Context, a: Type, size: int, session: CheckSession) -> Optional[Expr]:
        body = self._gen_intro(gamma, a, size - 1, session)
        if body is None:
            return None
        types = [a]
        extra = gen_type(self._rng, session.sig, 2)
        if extra is not None and extra != a and self._rng.random() < 0.5:
            types.insert(int(self._rng.integers(2)), extra)
        return Anno(body, tuple(types))

    def _gen_declare(self, gamma: Context, a: Type, size: int, session: CheckSession) -> Optional[Expr]:
        decls = session.sig.ctor_decls()
        if not decls:
            return None
        base = _pick(self._rng, decls)
        name = self._fresh("n")
        while name in session.sig.sort_names():
            name = self._fresh("n")
        refines = session.sig.datatype_of(base.result)
        block = Block((SortDecl(name, refines),), (Subsort(name, base.result), CtorDecl(base.ctor, base.arg, name)))
        ext = Signature((block,))
        if check_extension(session.sig, ext, session.ursig):
            return None
        inner = session.extended(ext)
        arg = self._gen(gamma, base.arg, max(1, size // 3), inner)
        body = self._gen(gamma, a, size // 2, inner)
        if arg is None or body is None:
            return None
        scrutinee = Anno(Ctor(base.ctor, arg), (Sort(name),))
        return Declare(ext, Case(scrutinee, (Arm(WILD, body),)))

    def _gen_coercion(self, gamma: Context, a: Type, size: int, session: CheckSession) -> Optional[Expr]:
        """
        A term at some type the session considers a subtype of a
        """
        if not isinstance(a, Arrow) or not isinstance(a.dom, Sort):
            return self._gen_intro(gamma, a, size, session)
        datatype = session.sig.datatype_of(a.dom.name)
        doms = [s for s in session.sig.sort_names() if session.sig.datatype_of(s) == datatype]
        options = [Arrow(Sort(s), a.cod) for s in doms if session.subtype(Arrow(Sort(s), a.cod), a)]
        narrower = _pick(self._rng, options)
        fn = self._gen_intro(gamma, narrower, size - 1, session)
        return None if fn is None else Anno(fn, (narrower,))


def gen_typed_term(seed, session: CheckSession, a: Type, bounds: GenBounds = GenBounds()) -> Optional[Expr]:
    """
    A closed term checking against a, or None when every attempt failed
    """
    if isinstance(a, UnitType) and bounds.term_size <= 1:
        return UNIT_VAL
    return TermGenerator(session, _rng(seed), bounds).generate(a)


def gen_raw_term(rng: np.random.Generator, session: CheckSession, size: int, names: Tuple[str, ...] = ()) -> Expr:
    """
    An annotation-free term built without regard to types
    """
    choice = rng.random()
    ctors = [decl.ctor for decl in session.ursig.ctors]
    if size <= 1 or choice < 0.2:
        if names and rng.random() < 0.6:
            return Var(_pick(rng, names))
        if ctors and rng.random() < 0.5:
            return Ctor(_pick(rng, ctors), UNIT_VAL)
        return UNIT_VAL
    if choice < 0.4 and ctors:
        return Ctor(_pick(rng, ctors), gen_raw_term(rng, session, size - 1, names))
    if choice < 0.55:
        x = f"x{len(names) + 1}"
        return Lam(x, gen_raw_term(rng, session, size - 1, names + (x,)))
    if choice < 0.7:
        return App(gen_raw_term(rng, session, size // 2, names), gen_raw_term(rng, session, size // 2, names))
    if choice < 0.8:
        return Pair(gen_raw_term(rng, session, size // 2, names), gen_raw_term(rng, session, size // 2, names))
    scrutinee = gen_raw_term(rng, session, size // 3, names)
    if not ctors:
        return Case(scrutinee, (Arm(WILD, gen_raw_term(rng, session, size // 3, names)),))
    ctor = _pick(rng, ctors)
    y = f"y{len(names) + 1}"
    arms = (
        Arm(CtorPat(ctor, AsPat(y, WILD)), gen_raw_term(rng, session, size // 3, names + (y,))),
        Arm(WILD, gen_raw_term(rng, session, size // 3, names)),
    )
    return Case(scrutinee, arms)
