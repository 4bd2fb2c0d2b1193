"""
Executable metatheory: every lemma and theorem about the checker is run as a
randomized property over generated signatures, types and terms, plus the
shipped corpus. Each trial is seeded from the suite seed and its index.
"""
import logging
import os
import time
from dataclasses import dataclass, field
from os.path import abspath, dirname, join
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from DSRCheck.benchmark.generators import (
    GenBounds,
    gen_accepted_signature,
    gen_extension,
    gen_pattern,
    gen_raw_term,
    gen_supertype,
    gen_type,
    gen_typed_term,
)
from DSRCheck.benchmark.oracles import NO, UNKNOWN, YES, DeclarativeOracle, enum_values, subst_typing
from DSRCheck.classes.syntax import (
    EMPTY_CONTEXT,
    Anno,
    App,
    Arrow,
    Case,
    Ctor,
    Declare,
    Expr,
    Intersect,
    Lam,
    Pair,
    Prod,
    Program,
    Signature,
    Sort,
    Type,
    UData,
    UnrefinedSignature,
    declared_extensions,
    erase,
    is_value,
)
from DSRCheck.evaluation import OUT_OF_FUEL, STUCK, VALUE, evaluate, iter_steps, step
from DSRCheck.io.parser import parse_expr, parse_program, parse_signature
from DSRCheck.io.printer import print_expr, print_pattern, print_signature, print_type
from DSRCheck.patterns import complement, intersect, match_value, normalize, pat_intersect
from DSRCheck.sorts import check_extension, lenient_closure, sig_wf, underlying
from DSRCheck.sorts.subtyping import covariant_arrow_subtype, subtype
from DSRCheck.typecheck import CheckSession, TypeCheckError

LOGGER = logging.getLogger(__name__)

CORPUS_DIR = join(dirname(dirname(dirname(abspath(__file__)))), "data", "programs")

REPORT_COLUMNS = ["property", "requested", "trials", "failures", "discarded", "gave_up", "seconds", "counterexample"]


@dataclass
class SuiteConfig:
    """
    Knobs of the metatheory suite; the defaults keep a full run within a few minutes
    """

    trials: int = 500
    max_discard_ratio: int = 10
    seed: int = 0
    term_size: int = 9
    value_size: int = 6
    type_depth: int = 3
    oracle_depth: int = 12
    fuel: int = 200
    timeout: float = 5.0
    only: Optional[List[str]] = None
    corrupt_subtyping: bool = False
    corpus_dir: str = CORPUS_DIR
    progress: bool = True

    @property
    def bounds(self) -> GenBounds:
        return GenBounds(term_size=self.term_size, value_size=self.value_size, type_depth=self.type_depth)


class Discard(Exception):
    """
    This exception indicates that a trial's premises do not hold
    """


@dataclass
class CorpusEntry:
    name: str
    program: Program


def load_corpus(directory: str = CORPUS_DIR) -> List[CorpusEntry]:
    """
    Every parsable program of the corpus directory, sorted by file name
    """
    entries = []
    if not os.path.isdir(directory):
        LOGGER.warning("corpus directory %s not found", directory)
        return entries
    for name in sorted(os.listdir(directory)):
        if not name.endswith(".dsr"):
            continue
        with open(join(directory, name), encoding="utf-8") as obj:
            parsed = parse_program(obj.read())
        if isinstance(parsed, Program):
            entries.append(CorpusEntry(name, parsed))
    return entries


@dataclass
class _Typed:
    session: CheckSession
    term: Expr
    type: Type
    origin: str


@dataclass
class _Suite:
    """
    Shared state of one suite run: configuration, corpus and cached sessions
    """

    config: SuiteConfig
    corpus: List[CorpusEntry] = field(default_factory=list)
    sessions: Dict = field(default_factory=dict)
    oracles: Dict = field(default_factory=dict)
    checked: List[_Typed] = field(default_factory=list)
    well_formed: List[CorpusEntry] = field(default_factory=list)

    @property
    def subtyping(self) -> Callable[..., bool]:
        return covariant_arrow_subtype if self.config.corrupt_subtyping else subtype

    def session(self, ursig: UnrefinedSignature, sig: Signature, **options) -> CheckSession:
        key = (ursig, sig, tuple(sorted(options.items())))
        if key not in self.sessions:
            self.sessions[key] = CheckSession(ursig, sig, subtyping=self.subtyping, **options)
        return self.sessions[key]

    def oracle(self, session: CheckSession) -> DeclarativeOracle:
        if id(session) not in self.oracles:
            self.oracles[id(session)] = DeclarativeOracle(session)
        return self.oracles[id(session)]

    def well_formed_corpus(self) -> List[CorpusEntry]:
        """
        Corpus programs with a well-formed signature
        """
        return [entry for entry in self.corpus if not sig_wf(entry.program.sig, entry.program.ursig)]

    def checked_corpus(self) -> List[_Typed]:
        """
        Corpus programs whose main expression synthesizes a type
        """
        found = []
        for entry in self.well_formed:
            session = self.session(entry.program.ursig, entry.program.sig)
            try:
                types = session.synth(EMPTY_CONTEXT, entry.program.main)
            except TypeCheckError:
                continue
            found.append(_Typed(session, entry.program.main, types[0], entry.name))
        return found

    def world(self, rng: np.random.Generator) -> Tuple[UnrefinedSignature, Signature]:
        corpus = self.well_formed
        if corpus and rng.random() < 0.25:
            entry = corpus[int(rng.integers(len(corpus)))]
            return entry.program.ursig, entry.program.sig
        generated = gen_accepted_signature(rng, self.config.bounds)
        if generated is None:
            raise Discard("no accepted signature")
        return generated.ursig, generated.sig

    def typed(self, rng: np.random.Generator, trial: int) -> _Typed:
        """
        A closed term with a type it checks against; corpus programs come first
        """
        corpus = self.checked
        if trial < len(corpus):
            return corpus[trial]
        ursig, sig = self.world(rng)
        session = self.session(ursig, sig)
        a = gen_type(rng, sig, self.config.type_depth)
        e = gen_typed_term(rng, session, a, self.config.bounds)
        if e is None:
            raise Discard("no term generated")
        return _Typed(session, e, a, "generated")

    def prepare(self):
        self.well_formed = self.well_formed_corpus()
        self.checked = self.checked_corpus()

    def datatype_sort(self, rng: np.random.Generator, ursig: UnrefinedSignature, sig: Signature) -> Tuple[str, str]:
        sorts = sig.sort_names()
        if not sorts:
            raise Discard("signature without sorts")
        sort = sorts[int(rng.integers(len(sorts)))]
        return sig.datatype_of(sort), sort


def _subterms(e: Expr):
    yield e
    if isinstance(e, Lam):
        yield from _subterms(e.body)
    elif isinstance(e, App):
        yield from _subterms(e.fn)
        yield from _subterms(e.arg)
    elif isinstance(e, Pair):
        yield from _subterms(e.left)
        yield from _subterms(e.right)
    elif isinstance(e, Ctor):
        yield from _subterms(e.arg)
    elif isinstance(e, Case):
        yield from _subterms(e.scrutinee)
        for arm in e.arms:
            yield from _subterms(arm.body)
    elif isinstance(e, (Declare, Anno)):
        yield from _subterms(e.body)


def _deep_flat(a: Type) -> bool:
    """
    No intersection directly under a product component, at any depth
    """
    if isinstance(a, Prod):
        return (
            not isinstance(a.left, Intersect)
            and not isinstance(a.right, Intersect)
            and _deep_flat(a.left)
            and _deep_flat(a.right)
        )
    if isinstance(a, Arrow):
        return _deep_flat(a.dom) and _deep_flat(a.cod)
    if isinstance(a, Intersect):
        return _deep_flat(a.left) and _deep_flat(a.right)
    return True


def _value_and_pattern(suite: _Suite, rng, names=()) -> Tuple[CheckSession, Type, Expr, object, UData]:
    ursig, sig = suite.world(rng)
    datatype, sort = suite.datatype_sort(rng, ursig, sig)
    session = suite.session(ursig, sig)
    values = session.enumerator.up_to(Sort(sort), suite.config.value_size)
    if not values:
        raise Discard("uninhabited sort")
    v = values[int(rng.integers(len(values)))]
    tau = UData(datatype)
    p = gen_pattern(rng, ursig, tau, 3, list(names))
    return session, Sort(sort), v, p, tau


# ---------------------------------------------------------------- properties


def prop_dichotomy(suite: _Suite, rng, trial: int) -> Optional[str]:
    session, _, v, p, tau = _value_and_pattern(suite, rng)
    inside = match_value(p, v) is not None
    outside = match_value(complement(session.ursig, tau, p), v) is not None
    if inside == outside:
        return f"{print_expr(v)} against {print_pattern(p)}: matched={inside}, complement matched={outside}"
    return None


def prop_pattern_intersection(suite: _Suite, rng, trial: int) -> Optional[str]:
    session, _, v, p, tau = _value_and_pattern(suite, rng)
    q = gen_pattern(rng, session.ursig, tau, 3, [])
    both = match_value(p, v) is not None and match_value(q, v) is not None
    if (match_value(pat_intersect(p, q), v) is not None) != both:
        return f"{print_expr(v)} against {print_pattern(p)} and {print_pattern(q)}"
    return None


def prop_normalize(suite: _Suite, rng, trial: int) -> Optional[str]:
    _, _, v, p, _ = _value_and_pattern(suite, rng, ("x", "y"))
    if (match_value(normalize(p), v) is None) != (match_value(p, v) is None):
        return f"{print_expr(v)}: {print_pattern(p)} vs normalized {print_pattern(normalize(p))}"
    return None


def prop_intersect(suite: _Suite, rng, trial: int) -> Optional[str]:
    session, a, v, p, _ = _value_and_pattern(suite, rng, ("x", "y", "z"))
    if session.check(EMPTY_CONTEXT, v, a) is not None:
        raise Discard("enumerated value does not check")
    theta = match_value(p, v)
    if theta is None:
        raise Discard("value does not match")
    tracks = intersect(session.sig, session.closure, a, p)
    for track in tracks:
        if not session.subtype(track.residual, a):
            return f"track {print_type(track.residual)} of {print_pattern(p)} is not below {print_type(a)}"
    for track in tracks:
        if session.check(EMPTY_CONTEXT, v, track.residual) is None and subst_typing(session, theta, track.bindings):
            return None
    return f"{print_expr(v)} : {print_type(a)} matches {print_pattern(p)} but fits no track"


def prop_intersect_strengthening(suite: _Suite, rng, trial: int) -> Optional[str]:
    ursig, sig = suite.world(rng)
    datatype, sort = suite.datatype_sort(rng, ursig, sig)
    ext = gen_extension(rng, ursig, sig, prefix="w")
    if check_extension(sig, ext, ursig):
        raise Discard("extension rejected")
    base = suite.session(ursig, sig)
    wider = suite.session(ursig, sig.extend(ext))
    p = gen_pattern(rng, ursig, UData(datatype), 3, ["x", "y"])
    old = intersect(sig, base.closure, Sort(sort), p)
    for track in intersect(wider.sig, wider.closure, Sort(sort), p):
        names = track.bindings.as_dict()
        if not any(
            wider.subtype(track.residual, other.residual)
            and other.bindings.as_dict().keys() == names.keys()
            and all(wider.subtype(names[x], other.bindings.as_dict()[x]) for x in names)
            for other in old
        ):
            return f"track {print_type(track.residual)} under extension {print_signature(ext)} is not below any old track"
    return None


def prop_subtyping_reflexive(suite: _Suite, rng, trial: int) -> Optional[str]:
    ursig, sig = suite.world(rng)
    a = gen_type(rng, sig, suite.config.type_depth)
    session = suite.session(ursig, sig)
    return None if session.subtype(a, a) else f"{print_type(a)} is not a subtype of itself"


def prop_subtyping_transitive(suite: _Suite, rng, trial: int) -> Optional[str]:
    ursig, sig = suite.world(rng)
    session = suite.session(ursig, sig)
    a = gen_type(rng, sig, suite.config.type_depth)
    b = gen_supertype(rng, sig, session.closure, a)
    c = gen_supertype(rng, sig, session.closure, b)
    for lower, upper in ((a, b), (b, c)):
        if not session.subtype(lower, upper):
            return f"{print_type(upper)} was built above {print_type(lower)} but is not a supertype"
    if session.subtype(a, c):
        return None
    return f"{print_type(a)} <= {print_type(b)} <= {print_type(c)} but not {print_type(a)} <= {print_type(c)}"


def prop_weakening(suite: _Suite, rng, trial: int) -> Optional[str]:
    typed = suite.typed(rng, trial)
    session = typed.session
    ext = gen_extension(rng, session.ursig, session.sig, prefix="w")
    if check_extension(session.sig, ext, session.ursig):
        raise Discard("extension rejected")
    wider = suite.session(session.ursig, session.sig.extend(ext))
    failure = wider.check(EMPTY_CONTEXT, typed.term, typed.type)
    if failure is None:
        return None
    return f"{print_expr(typed.term)} : {print_type(typed.type)} lost under {print_signature(ext)}: {failure}"


def prop_interleaving(suite: _Suite, rng, trial: int) -> Optional[str]:
    ursig, sig = suite.world(rng)
    later = gen_extension(rng, ursig, sig, prefix="m")
    middle = gen_extension(rng, ursig, sig, prefix="o")
    if check_extension(sig, later, ursig) or check_extension(sig, middle, ursig):
        raise Discard("extension rejected")
    problems = sig_wf(sig.extend(middle).extend(later), ursig)
    if problems:
        return f"{print_signature(middle)} then {print_signature(later)}: {problems[0]}"
    return None


def _preserves_subsorting(base: Signature, ext: Signature) -> bool:
    old = set(base.sort_names())
    return lenient_closure(base.extend(ext)).pairs(old) == lenient_closure(base).pairs(old)


def prop_non_adjacent(suite: _Suite, rng, trial: int) -> Optional[str]:
    ursig, sig = suite.world(rng)
    second = gen_extension(rng, ursig, sig, prefix="m", safe=rng.random() < 0.5)
    third = gen_extension(rng, ursig, sig, prefix="o", safe=rng.random() < 0.5)
    if not (_preserves_subsorting(sig, second) and _preserves_subsorting(sig, third)):
        raise Discard("premises do not hold")
    if _preserves_subsorting(sig.extend(second), third):
        return None
    return f"{print_signature(third)} breaks subsorting after {print_signature(second)}"


def _unique(signatures: List[Signature]) -> List[Signature]:
    found: List[Signature] = []
    for sig in signatures:
        if sig not in found:
            found.append(sig)
    return found


def prop_preservation(suite: _Suite, rng, trial: int) -> Optional[str]:
    typed = suite.typed(rng, trial)
    session = typed.session
    exts = _unique(declared_extensions(typed.term))
    for state in list(iter_steps(typed.term, suite.config.fuel))[1:]:
        remaining = declared_extensions(state)
        sig = session.sig
        for ext in exts:
            if ext not in remaining:
                sig = sig.extend(ext)
        if sig_wf(sig, session.ursig):
            raise Discard("collected extensions clash")
        current = suite.session(session.ursig, sig)
        if current.check(EMPTY_CONTEXT, state, typed.type) is None:
            continue
        verdict = suite.oracle(current).typable(EMPTY_CONTEXT, erase(state), typed.type, suite.config.oracle_depth)
        if verdict == UNKNOWN:
            raise Discard("oracle undecided")
        if verdict == NO:
            return f"{typed.origin}: {print_expr(state)} no longer has type {print_type(typed.type)}"
    return None


def prop_progress(suite: _Suite, rng, trial: int) -> Optional[str]:
    typed = suite.typed(rng, trial)
    outcome = evaluate(typed.term, suite.config.fuel)
    if outcome.kind == STUCK:
        return f"{typed.origin}: {print_expr(typed.term)} : {print_type(typed.type)} gets stuck at {print_expr(outcome.expr)}"
    return None


def prop_values_dont_step(suite: _Suite, rng, trial: int) -> Optional[str]:
    typed = suite.typed(rng, trial)
    for sub in _subterms(typed.term):
        if is_value(sub) and step(sub) is not None:
            return f"value {print_expr(sub)} steps"
    return None


def prop_step_determinism(suite: _Suite, rng, trial: int) -> Optional[str]:
    typed = suite.typed(rng, trial)
    first = list(iter_steps(typed.term, suite.config.fuel))
    second = list(iter_steps(typed.term, suite.config.fuel))
    return None if first == second else f"{print_expr(typed.term)} has two different traces"


def prop_erased_evaluation(suite: _Suite, rng, trial: int) -> Optional[str]:
    typed = suite.typed(rng, trial)
    annotated = evaluate(typed.term, suite.config.fuel)
    erased = evaluate(typed.term, suite.config.fuel, erase_annotations=True)
    if OUT_OF_FUEL in (annotated.kind, erased.kind):
        raise Discard("out of fuel")
    if annotated.kind != erased.kind:
        return f"{print_expr(typed.term)}: {annotated.kind} with annotations, {erased.kind} without"
    if annotated.kind == VALUE and erase(annotated.expr) != erased.expr:
        return f"{print_expr(typed.term)}: {print_expr(annotated.expr)} vs {print_expr(erased.expr)}"
    return None


def prop_bidirectional_soundness(suite: _Suite, rng, trial: int) -> Optional[str]:
    typed = suite.typed(rng, trial)
    oracle = suite.oracle(typed.session)
    verdict = oracle.typable(EMPTY_CONTEXT, erase(typed.term), typed.type, suite.config.oracle_depth)
    if verdict == UNKNOWN:
        raise Discard("oracle undecided")
    if verdict == NO:
        return f"{typed.origin}: {print_expr(typed.term)} checks against {print_type(typed.type)} but its erasure has no derivation"
    return None


def prop_annotatability(suite: _Suite, rng, trial: int) -> Optional[str]:
    typed = suite.typed(rng, trial)
    erased = erase(typed.term)
    verdict, decorated = suite.oracle(typed.session).derive(
        EMPTY_CONTEXT, erased, typed.type, suite.config.oracle_depth
    )
    if verdict != YES:
        raise Discard("no derivation found")
    failure = typed.session.check(EMPTY_CONTEXT, decorated, typed.type)
    if failure is None:
        return None
    return f"{print_expr(erased)} annotated as {print_expr(decorated)} fails: {failure}"


def prop_oracle_agreement(suite: _Suite, rng, trial: int) -> Optional[str]:
    ursig, sig = suite.world(rng)
    session = suite.session(ursig, sig)
    e = gen_raw_term(rng, session, suite.config.term_size)
    a = gen_type(rng, sig, suite.config.type_depth)
    verdict, decorated = suite.oracle(session).derive(EMPTY_CONTEXT, e, a, suite.config.oracle_depth)
    checks = session.check(EMPTY_CONTEXT, e, a) is None
    if checks and verdict == NO:
        return f"{print_expr(e)} checks against {print_type(a)} but the oracle says no"
    if verdict == YES:
        failure = session.check(EMPTY_CONTEXT, decorated, a)
        if failure is not None:
            return f"oracle derivation for {print_expr(e)} : {print_type(a)} does not check: {failure}"
        return None
    if not checks and verdict != NO:
        raise Discard("undecided")
    return None


def prop_decidability(suite: _Suite, rng, trial: int) -> Optional[str]:
    ursig, sig = suite.world(rng)
    session = CheckSession(ursig, sig, subtyping=suite.subtyping)
    e = gen_raw_term(rng, session, suite.config.term_size)
    a = gen_type(rng, sig, suite.config.type_depth)
    started = time.perf_counter()
    session.check(EMPTY_CONTEXT, e, a)
    try:
        session.synth(EMPTY_CONTEXT, e)
    except TypeCheckError:
        pass
    elapsed = time.perf_counter() - started
    if elapsed > suite.config.timeout:
        return f"{print_expr(e)} against {print_type(a)} took {elapsed:.2f}s"
    return None


def _differential(suite: _Suite, rng, trial: int, **options) -> Optional[str]:
    typed = suite.typed(rng, trial)
    session = typed.session
    other = CheckSession(session.ursig, session.sig, subtyping=suite.subtyping, **options)
    raw = gen_raw_term(rng, session, suite.config.term_size)
    for e, a in ((typed.term, typed.type), (raw, typed.type)):
        expected = session.check(EMPTY_CONTEXT, e, a) is None
        if (other.check(EMPTY_CONTEXT, e, a) is None) != expected:
            return f"{print_expr(e)} : {print_type(a)} accepted={expected} by default, not with {options}"
    return None


def prop_memo_differential(suite: _Suite, rng, trial: int) -> Optional[str]:
    return _differential(suite, rng, trial, memoize=False)


def prop_optimize_differential(suite: _Suite, rng, trial: int) -> Optional[str]:
    return _differential(suite, rng, trial, optimize=True)


def prop_subsumption(suite: _Suite, rng, trial: int) -> Optional[str]:
    typed = suite.typed(rng, trial)
    session = typed.session
    wider = gen_type(rng, session.sig, suite.config.type_depth, tau=underlying(session.sig, typed.type))
    if wider is None or not _deep_flat(typed.type) or not session.subtype(typed.type, wider):
        raise Discard("no flat supertype drawn")
    failure = session.check(EMPTY_CONTEXT, typed.term, wider)
    if failure is None:
        return None
    return f"{print_expr(typed.term)} checks against {print_type(typed.type)} but not {print_type(wider)}: {failure}"


def prop_enum_values(suite: _Suite, rng, trial: int) -> Optional[str]:
    ursig, sig = suite.world(rng)
    _, sort = suite.datatype_sort(rng, ursig, sig)
    session = suite.session(ursig, sig)
    for v in enum_values(session, Sort(sort), suite.config.value_size):
        if not is_value(v) or evaluate(v, 0).kind != VALUE:
            return f"enumerated {print_expr(v)} is not a value"
    return None


def prop_printer_roundtrip(suite: _Suite, rng, trial: int) -> Optional[str]:
    typed = suite.typed(rng, trial)
    text = print_expr(typed.term)
    if parse_expr(text) != typed.term:
        return f"{text} does not parse back to the same term"
    sig_text = print_signature(typed.session.sig)
    if parse_signature(sig_text) != typed.session.sig:
        return f"signature {sig_text} does not parse back"
    return None


PROPERTIES: Dict[str, Callable[[_Suite, np.random.Generator, int], Optional[str]]] = {
    "dichotomy": prop_dichotomy,
    "pattern_intersection": prop_pattern_intersection,
    "normalize_semantics": prop_normalize,
    "intersect": prop_intersect,
    "intersect_strengthening": prop_intersect_strengthening,
    "subtyping_reflexivity": prop_subtyping_reflexive,
    "subtyping_transitivity": prop_subtyping_transitive,
    "weakening": prop_weakening,
    "interleaving": prop_interleaving,
    "non_adjacent_preservation": prop_non_adjacent,
    "preservation": prop_preservation,
    "progress": prop_progress,
    "values_dont_step": prop_values_dont_step,
    "step_determinism": prop_step_determinism,
    "erased_evaluation": prop_erased_evaluation,
    "bidirectional_soundness": prop_bidirectional_soundness,
    "annotatability": prop_annotatability,
    "oracle_agreement": prop_oracle_agreement,
    "decidability": prop_decidability,
    "memo_differential": prop_memo_differential,
    "optimize_differential": prop_optimize_differential,
    "subsumption_coherence": prop_subsumption,
    "enum_values": prop_enum_values,
    "printer_roundtrip": prop_printer_roundtrip,
}


def run_property(suite: _Suite, name: str) -> Dict:
    """
    Draw trials until the requested number is decided or the discard budget is spent
    """
    prop = PROPERTIES[name]
    config = suite.config
    budget = config.trials * (config.max_discard_ratio + 1)
    decided, failures, discarded = 0, 0, 0
    counterexample = None
    started = time.perf_counter()
    draw = 0
    while decided < config.trials and draw < budget:
        rng = np.random.default_rng([config.seed, draw, sorted(PROPERTIES).index(name)])
        try:
            outcome = prop(suite, rng, draw)
        except Discard:
            discarded += 1
            draw += 1
            continue
        decided += 1
        if outcome is not None:
            failures += 1
            if counterexample is None:
                counterexample = outcome
                LOGGER.warning("%s failed on trial %d: %s", name, draw, outcome)
        draw += 1
    gave_up = decided < config.trials
    if gave_up:
        LOGGER.warning("%s gave up after %d discarded trials (%d of %d decided)", name, discarded, decided, config.trials)
    return {
        "property": name,
        "requested": config.trials,
        "trials": decided,
        "failures": failures,
        "discarded": discarded,
        "gave_up": gave_up,
        "seconds": round(time.perf_counter() - started, 3),
        "counterexample": counterexample,
    }


def run_metatheory_suite(config: SuiteConfig = SuiteConfig()) -> pd.DataFrame:
    """
    Run every selected property and report trials, failures and the first counterexample of each
    """
    names = list(PROPERTIES) if not config.only else list(config.only)
    unknown = [name for name in names if name not in PROPERTIES]
    if unknown:
        raise KeyError(f"unknown properties: {', '.join(unknown)}")
    suite = _Suite(config, load_corpus(config.corpus_dir))
    suite.prepare()
    rows = []
    for name in tqdm(names, desc="properties", disable=not config.progress):
        rows.append(run_property(suite, name))
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)
