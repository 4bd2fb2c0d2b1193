"""
Bidirectional typechecker.

Checking pushes a known type into an expression, synthesis reads one off
variables, annotations and applications. Choice points (annotation lists,
constructor typings, intersection arms, scrutinee types) are explored as lazy
candidate streams in a fixed order with backtracking. Case expressions are
checked arm by arm under every track of the scrutinee type intersected with
the arm pattern, and the residual pattern must be empty at the end.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from DSRCheck.classes.diagnostic import (
    Diagnostic,
    IllTypedScrutinyError,
    NoSynthesisError,
    Span,
    TypeCheckError,
    UndeclaredSortError,
)
from DSRCheck.classes.syntax import (
    EMPTY_CONTEXT,
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
    Pattern,
    Prod,
    Program,
    Signature,
    Sort,
    Track,
    Type,
    UnitType,
    UnitVal,
    UnrefinedSignature,
    Var,
    is_value,
    pattern_vars,
)
from DSRCheck.io.printer import print_context, print_expr, print_pattern, print_type
from DSRCheck.patterns import complement, intersect, normalize, optimize_tracks, pat_intersect, pat_type
from DSRCheck.patterns.inhabitants import ValueEnumerator, find_witness
from DSRCheck.sorts import check_extension, sig_wf, subsort_closure, type_wf, underlying
from DSRCheck.sorts.closure import SubsortClosure
from DSRCheck.sorts.subtyping import subtype

SNIPPET = 60


def _show(e: Expr) -> str:
    text = print_expr(e)
    return text if len(text) <= SNIPPET else text[: SNIPPET - 3] + "..."


def _projections(a: Type) -> Iterator[Type]:
    yield a
    if isinstance(a, Intersect):
        yield from _projections(a.left)
        yield from _projections(a.right)


def _synthesizing(e: Expr) -> bool:
    return isinstance(e, (Var, App, Anno))


@dataclass
class _Scope:
    sig: Signature
    closure: SubsortClosure
    enumerator: ValueEnumerator
    sub_memo: Dict = field(default_factory=dict)


@dataclass(frozen=True)
class CaseCoverage:
    """
    What the checker learned about one case expression at one scrutinee type
    """

    span: Optional[Span]
    scrutinee: Type
    arms: Tuple[Tuple[Pattern, Tuple[Track, ...]], ...]
    residual: Pattern
    exhaustive: bool

    def asdict(self) -> Dict:
        return {
            "line": self.span.line if self.span else None,
            "col": self.span.column if self.span else None,
            "scrutinee": print_type(self.scrutinee),
            "arms": [
                {
                    "pattern": print_pattern(pattern),
                    "tracks": [
                        {
                            "bindings": [[x, print_type(a)] for x, a in track.bindings],
                            "residual": print_type(track.residual),
                        }
                        for track in tracks
                    ],
                }
                for pattern, tracks in self.arms
            ],
            "residual": print_pattern(self.residual),
            "exhaustive": self.exhaustive,
        }


class CheckSession:
    """
    Typechecking state for one unrefined signature and one well-formed signature
    """

    def __init__(
        self,
        ursig: UnrefinedSignature,
        sig: Signature,
        optimize: bool = False,
        memoize: bool = True,
        subtyping: Callable[..., bool] = subtype,
        witness_size: int = 5,
    ):
        self._ursig = ursig
        self._sig = sig
        self._optimize = optimize
        self._memoize = memoize
        self._subtyping = subtyping
        self._witness_size = witness_size
        self._scopes: Dict[Signature, _Scope] = {}
        self._check_memo: Dict = {}
        self._synth_memo: Dict = {}
        self._coverage: Dict = {}
        self._root = self._scope(sig)
        klass = self.__class__
        self._logger = logging.getLogger(f"{klass.__module__}.{klass.__name__}")

    @property
    def ursig(self) -> UnrefinedSignature:
        """
        Unrefined signature getter
        """
        return self._ursig

    @property
    def sig(self) -> Signature:
        """
        Signature getter
        """
        return self._sig

    @property
    def closure(self) -> SubsortClosure:
        """
        Subsort closure of the session signature
        """
        return self._root.closure

    @property
    def enumerator(self) -> ValueEnumerator:
        """
        Value enumerator of the session signature
        """
        return self._root.enumerator

    @property
    def options(self) -> Dict[str, bool]:
        return {"optimize_tracks": self._optimize, "memoize": self._memoize}

    @property
    def coverage(self) -> List[CaseCoverage]:
        """
        Case expressions visited so far, in the order first seen
        """
        return list(self._coverage.values())

    def extended(self, ext: Signature) -> "CheckSession":
        """
        A fresh session with the same options under sig extended by ext
        """
        return CheckSession(
            self._ursig,
            self._sig.extend(ext),
            self._optimize,
            self._memoize,
            self._subtyping,
            self._witness_size,
        )

    def _scope(self, sig: Signature) -> _Scope:
        if sig not in self._scopes:
            closure = subsort_closure(sig)
            self._scopes[sig] = _Scope(sig, closure, ValueEnumerator(sig, closure))
        return self._scopes[sig]

    # ------------------------------------------------------------ public

    def subtype(self, a: Type, b: Type) -> bool:
        return self._subtype(self._root, a, b)

    def ctor_types(self, c: str) -> List[Tuple[Type, str]]:
        """
        Declared typings of a constructor, in signature order
        """
        return self._ctor_types(self._root, c)

    def check(self, gamma: Context, e: Expr, a: Type) -> Optional[Diagnostic]:
        """
        None when e checks against a, else the diagnostic of the failing obligation
        """
        return self._check(self._root, gamma, e, a)

    def synth(self, gamma: Context, e: Expr) -> List[Type]:
        """
        Every synthesized type in backtracking order; raises TypeCheckError when there is none
        """
        trail: List[Diagnostic] = []
        types = list(self._synth_stream(self._root, gamma, e, trail))
        if not types:
            failure = self._first(trail, e, "NO_SYNTH", "no type can be synthesized")
            if failure.code == NoSynthesisError.code:
                raise NoSynthesisError(failure)
            raise TypeCheckError(failure)
        return types

    def check_matches(
        self, gamma: Context, a: Type, residual: Pattern, ms: Sequence[Arm], d: Type
    ) -> Optional[Diagnostic]:
        return self._check_matches(self._root, gamma, a, residual, tuple(ms), d, None)

    # ------------------------------------------------------------ helpers

    def _subtype(self, scope: _Scope, a: Type, b: Type) -> bool:
        return self._subtyping(scope.sig, scope.closure, a, b, scope.sub_memo)

    @staticmethod
    def _ctor_types(scope: _Scope, c: str) -> List[Tuple[Type, str]]:
        return [(decl.arg, decl.result) for decl in scope.sig.ctor_decls() if decl.ctor == c]

    @staticmethod
    def _first(trail: List[Diagnostic], e: Expr, code: str, message: str) -> Diagnostic:
        if trail:
            return trail[0].with_span(e.loc)
        return Diagnostic(code, message, e.loc)

    @staticmethod
    def _mismatch(rule: str, e: Expr, message: str, **extra) -> Diagnostic:
        return Diagnostic("TYPE_MISMATCH", f"{rule}: {message}", e.loc, extra=extra or None)

    # ------------------------------------------------------------ checking

    def _check(self, scope: _Scope, gamma: Context, e: Expr, a: Type) -> Optional[Diagnostic]:
        if not self._memoize:
            return self._check_rules(scope, gamma, e, a)
        key = (scope.sig, gamma, e, a)
        if key not in self._check_memo:
            self._check_memo[key] = self._check_rules(scope, gamma, e, a)
        return self._check_memo[key]

    def _check_rules(self, scope: _Scope, gamma: Context, e: Expr, a: Type) -> Optional[Diagnostic]:
        if isinstance(a, Intersect) and is_value(e):
            failure = self._check(scope, gamma, e, a.left)
            if failure is None:
                failure = self._check(scope, gamma, e, a.right)
                if failure is None:
                    return None
            if _synthesizing(e) and self._check_sub(scope, gamma, e, a) is None:
                return None
            return failure
        if isinstance(e, Lam):
            if not isinstance(a, Arrow):
                return self._mismatch("ChkArrI", e, f"function {_show(e)} checked against {print_type(a)}")
            return self._check(scope, gamma.extend(e.var, a.dom), e.body, a.cod)
        if isinstance(e, Pair):
            if not isinstance(a, Prod):
                return self._mismatch("ChkProdI", e, f"pair {_show(e)} checked against {print_type(a)}")
            return self._check(scope, gamma, e.left, a.left) or self._check(scope, gamma, e.right, a.right)
        if isinstance(e, UnitVal):
            if isinstance(a, UnitType):
                return None
            return self._mismatch("ChkUnitI", e, f"() checked against {print_type(a)}")
        if isinstance(e, Ctor):
            if not isinstance(a, Sort):
                return self._mismatch("ChkDataI", e, f"constructor {e.ctor} checked against {print_type(a)}")
            return self._check_ctor(scope, gamma, e, a)
        if isinstance(e, Case):
            return self._check_case(scope, gamma, e, a)
        if isinstance(e, Declare):
            return self._check_declare(scope, gamma, e, a)
        return self._check_sub(scope, gamma, e, a)

    def _check_sub(self, scope: _Scope, gamma: Context, e: Expr, a: Type) -> Optional[Diagnostic]:
        trail: List[Diagnostic] = []
        tried: List[Type] = []
        for b in self._synth_stream(scope, gamma, e, trail):
            if self._subtype(scope, b, a):
                return None
            self._logger.debug("ChkSub: %s rejected against %s", print_type(b), print_type(a))
            tried.append(b)
        if not tried:
            return self._first(trail, e, "NO_SYNTH", f"SynAnno: {_show(e)} needs an annotation")
        shown = ", ".join(print_type(b) for b in tried)
        return self._mismatch(
            "ChkSub", e, f"{_show(e)} synthesizes {shown}, which is not a subtype of {print_type(a)}",
            expected=print_type(a), synthesized=[print_type(b) for b in tried],
        )

    def _check_ctor(self, scope: _Scope, gamma: Context, e: Ctor, a: Sort) -> Optional[Diagnostic]:
        candidates = [
            (arg, result) for arg, result in self._ctor_types(scope, e.ctor) if scope.closure(result, a.name)
        ]
        if not candidates:
            return Diagnostic(
                "NO_CTOR_TYPING",
                f"ChkDataI: no typing of {e.ctor} produces a subsort of {a.name}",
                e.loc,
                extra={"ctor": e.ctor, "sort": a.name},
            )
        failures = []
        for arg, result in candidates:
            failure = self._check(scope, gamma, e.arg, arg)
            if failure is None:
                return None
            self._logger.debug("ChkDataI: %s : %s -> %s rejected", e.ctor, print_type(arg), result)
            failures.append(failure)
        return failures[0]

    def _check_case(self, scope: _Scope, gamma: Context, e: Case, d: Type) -> Optional[Diagnostic]:
        trail: List[Diagnostic] = []
        failures: List[Diagnostic] = []
        synthesized = False
        for a in self._synth_stream(scope, gamma, e.scrutinee, trail):
            synthesized = True
            if isinstance(a, Intersect):
                # its projections come next in the stream
                continue
            try:
                failure = self._check_matches(scope, gamma, a, WILD, e.arms, d, e)
            except IllTypedScrutinyError as err:
                self._logger.warning(err, exc_info=True)
                failure = err.diagnostic.with_span(e.loc)
            if failure is None:
                return None
            self._logger.debug("ChkDataE: scrutinee type %s rejected", print_type(a))
            failures.append(failure)
        if not synthesized:
            return self._first(trail, e.scrutinee, "NO_SYNTH", "ChkDataE: the scrutinee needs an annotation")
        if failures:
            return failures[0]
        return self._mismatch("ChkDataE", e, "the scrutinee only synthesizes intersection types")

    def _check_declare(self, scope: _Scope, gamma: Context, e: Declare, a: Type) -> Optional[Diagnostic]:
        problems = check_extension(scope.sig, e.ext, self._ursig)
        if problems:
            self._logger.info("declare rejected: %s", problems[0])
            first = problems[0].with_span(e.loc)
            if len(problems) > 1:
                extra = dict(first.extra or {})
                extra["others"] = [problem.asdict() for problem in problems[1:]]
                first = Diagnostic(first.code, first.message, first.span, first.severity, extra)
            return first
        if not type_wf(scope.sig, a):
            return Diagnostic(
                "SCOPE_ESCAPE",
                f"TypeDeclare: {print_type(a)} is not well-formed outside the declaration",
                e.loc,
                extra={"type": print_type(a)},
            )
        inner = self._scope(scope.sig.extend(e.ext))
        return self._check(inner, gamma, e.body, a)

    def _check_matches(
        self,
        scope: _Scope,
        gamma: Context,
        a: Type,
        residual: Pattern,
        ms: Tuple[Arm, ...],
        d: Type,
        case: Optional[Case],
    ) -> Optional[Diagnostic]:
        where = case.loc if case is not None else None
        tau = underlying(scope.sig, a)
        for arm in ms:
            if not pat_type(self._ursig, arm.pattern, tau):
                return Diagnostic(
                    "PATTERN_TYPE",
                    f"TypeMs: pattern {print_pattern(arm.pattern)} does not fit scrutinee type {print_type(a)}",
                    where,
                )
            names = pattern_vars(arm.pattern)
            if len(names) != len(set(names)):
                return Diagnostic(
                    "DUP_ASVAR", f"TypeMs: pattern {print_pattern(arm.pattern)} binds a variable twice", where
                )
        report = []
        for arm in ms:
            tracks = intersect(scope.sig, scope.closure, a, pat_intersect(residual, arm.pattern))
            if self._optimize:
                tracks = optimize_tracks(scope.closure, tracks)
            report.append((arm.pattern, tuple(tracks)))
            for track in tracks:
                failure = self._check(scope, gamma.concat(track.bindings), arm.body, d)
                if failure is not None:
                    self._logger.debug(
                        "TypeMs: arm %s fails under %s", print_pattern(arm.pattern), print_context(track.bindings)
                    )
                    return failure
            residual = normalize(pat_intersect(residual, complement(self._ursig, tau, arm.pattern)))
        remaining = intersect(scope.sig, scope.closure, a, residual)
        if case is not None:
            key = (case.loc, case, a, gamma)
            self._coverage.setdefault(key, CaseCoverage(where, a, tuple(report), residual, not remaining))
        if not remaining:
            return None
        witness = find_witness(scope.enumerator, a, residual, self._witness_size)
        message = f"TypeMsEmpty: case over {print_type(a)} is not exhaustive, {print_pattern(residual)} is not covered"
        if witness is not None:
            message += f", for example {print_expr(witness)}"
        return Diagnostic(
            "NONEXHAUSTIVE",
            message,
            where,
            extra={
                "residual": print_pattern(residual),
                "witness": print_expr(witness) if witness is not None else None,
                "scrutinee": print_type(a),
            },
        )

    # ------------------------------------------------------------ synthesis

    def _synth_stream(
        self, scope: _Scope, gamma: Context, e: Expr, trail: List[Diagnostic]
    ) -> Iterator[Type]:
        if not self._memoize:
            yield from self._synth_rules(scope, gamma, e, trail)
            return
        key = (scope.sig, gamma, e)
        if key not in self._synth_memo:
            failures: List[Diagnostic] = []
            self._synth_memo[key] = (list(self._synth_rules(scope, gamma, e, failures)), failures)
        types, failures = self._synth_memo[key]
        trail.extend(failures)
        yield from types

    def _synth_rules(
        self, scope: _Scope, gamma: Context, e: Expr, trail: List[Diagnostic]
    ) -> Iterator[Type]:
        seen = set()
        for base in self._synth_base(scope, gamma, e, trail):
            for a in _projections(base):
                if a not in seen:
                    seen.add(a)
                    yield a

    def _synth_base(
        self, scope: _Scope, gamma: Context, e: Expr, trail: List[Diagnostic]
    ) -> Iterator[Type]:
        if isinstance(e, Var):
            a = gamma.lookup(e.name)
            if a is None:
                trail.append(Diagnostic("UNBOUND_VAR", f"SynVar: unbound variable {e.name}", e.loc))
                return
            yield a
        elif isinstance(e, Anno):
            for a in e.types:
                if not type_wf(scope.sig, a) and not isinstance(e.body, Declare):
                    trail.append(
                        Diagnostic("ILLFORMED_TYPE", f"SynAnno: {print_type(a)} is not a well-formed type", e.loc)
                    )
                    continue
                failure = self._check(scope, gamma, e.body, a)
                if failure is None:
                    yield a
                else:
                    self._logger.debug("SynAnno: %s rejected", print_type(a))
                    trail.append(failure)
        elif isinstance(e, App):
            for f in self._synth_stream(scope, gamma, e.fn, trail):
                if isinstance(f, Intersect):
                    continue
                if not isinstance(f, Arrow):
                    trail.append(
                        self._mismatch("SynArrE", e, f"{_show(e.fn)} synthesizes {print_type(f)}, not a function type")
                    )
                    continue
                failure = self._check(scope, gamma, e.arg, f.dom)
                if failure is None:
                    yield f.cod
                else:
                    self._logger.debug("SynArrE: %s rejected", print_type(f))
                    trail.append(failure)
        else:
            trail.append(
                Diagnostic("NO_SYNTH", f"SynAnno: {_show(e)} cannot synthesize a type without an annotation", e.loc)
            )


@dataclass
class ProgramCheck:
    """
    Outcome of checking a whole program
    """

    diagnostics: List[Diagnostic]
    types: List[Type] = field(default_factory=list)
    session: Optional[CheckSession] = None

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)


def run_program_check(
    prog: Program,
    goal: Optional[Type] = None,
    optimize: bool = False,
    memoize: bool = True,
    subtyping: Callable[..., bool] = subtype,
) -> ProgramCheck:
    """
    Signature well-formedness first; the main expression is only checked under a well-formed signature
    """
    diagnostics = sig_wf(prog.sig, prog.ursig)
    if diagnostics:
        return ProgramCheck(sorted(diagnostics, key=Diagnostic.sort_key))
    try:
        session = CheckSession(prog.ursig, prog.sig, optimize=optimize, memoize=memoize, subtyping=subtyping)
    except UndeclaredSortError as err:
        return ProgramCheck([err.diagnostic])
    if goal is not None:
        if not type_wf(prog.sig, goal):
            failure = Diagnostic("ILLFORMED_TYPE", f"goal {print_type(goal)} is not a well-formed type", prog.main.loc)
            return ProgramCheck([failure], session=session)
        failure = session.check(EMPTY_CONTEXT, prog.main, goal)
        if failure is not None:
            return ProgramCheck([failure.with_span(prog.main.loc)], session=session)
        return ProgramCheck([], [goal], session)
    try:
        types = session.synth(EMPTY_CONTEXT, prog.main)
    except TypeCheckError as err:
        return ProgramCheck([err.diagnostic.with_span(prog.main.loc)], session=session)
    return ProgramCheck([], types, session)


def check_program(prog: Program, goal: Optional[Type] = None, **options) -> List[Diagnostic]:
    """
    All diagnostics for a program, empty when it typechecks
    """
    return run_program_check(prog, goal, **options).diagnostics
