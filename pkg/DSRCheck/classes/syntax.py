"""
Abstract syntax of the core language: unrefined types and signatures, refined
types, signatures made of blocks, expressions, patterns, contexts and tracks.

Every node is an immutable value with structural equality. Expression nodes
may carry a source span in `loc`, which never takes part in equality.
"""
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Set, Tuple, Union

from DSRCheck.classes.diagnostic import Span

# ---------------------------------------------------------------- unrefined


@dataclass(frozen=True)
class UUnit:
    pass


@dataclass(frozen=True)
class UArrow:
    dom: "UnrefinedType"
    cod: "UnrefinedType"


@dataclass(frozen=True)
class UProd:
    left: "UnrefinedType"
    right: "UnrefinedType"


@dataclass(frozen=True)
class UData:
    name: str


UnrefinedType = Union[UUnit, UArrow, UProd, UData]


@dataclass(frozen=True)
class UCtorDecl:
    """
    c : arg -> result in the unrefined signature
    """

    ctor: str
    arg: UnrefinedType
    result: str


@dataclass(frozen=True)
class UnrefinedSignature:
    datatypes: Tuple[str, ...] = ()
    ctors: Tuple[UCtorDecl, ...] = ()

    @cached_property
    def _by_name(self) -> Dict[str, UCtorDecl]:
        return {decl.ctor: decl for decl in self.ctors}

    def ctor(self, name: str) -> Optional[UCtorDecl]:
        """
        The unique declaration of a constructor, or None
        """
        return self._by_name.get(name)

    def constructors_of(self, datatype: str) -> List[UCtorDecl]:
        """
        Constructors of a datatype in declaration order
        """
        return [decl for decl in self.ctors if decl.result == datatype]


# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class UnitType:
    pass


@dataclass(frozen=True)
class Arrow:
    dom: "Type"
    cod: "Type"


@dataclass(frozen=True)
class Prod:
    left: "Type"
    right: "Type"


@dataclass(frozen=True)
class Sort:
    name: str


@dataclass(frozen=True)
class Intersect:
    left: "Type"
    right: "Type"


Type = Union[UnitType, Arrow, Prod, Sort, Intersect]

UNIT = UnitType()
U_UNIT = UUnit()


def conjuncts(a: Type) -> List[Type]:
    """
    Flatten nested intersections, left to right
    """
    if isinstance(a, Intersect):
        return conjuncts(a.left) + conjuncts(a.right)
    return [a]


def type_depth(a: Type) -> int:
    """
    Structural depth; intersections do not add a level
    """
    if isinstance(a, Arrow):
        return 1 + max(type_depth(a.dom), type_depth(a.cod))
    if isinstance(a, Prod):
        return 1 + max(type_depth(a.left), type_depth(a.right))
    if isinstance(a, Intersect):
        return max(type_depth(a.left), type_depth(a.right))
    return 1


def sorts_of_type(a: Type) -> Set[str]:
    """
    Sort names mentioned in a type
    """
    if isinstance(a, Sort):
        return {a.name}
    if isinstance(a, Arrow):
        return sorts_of_type(a.dom) | sorts_of_type(a.cod)
    if isinstance(a, (Prod, Intersect)):
        return sorts_of_type(a.left) | sorts_of_type(a.right)
    return set()


# ---------------------------------------------------------------- signatures


@dataclass(frozen=True)
class SortDecl:
    sort: str
    refines: str
    loc: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Subsort:
    sub: str
    sup: str
    loc: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class CtorDecl:
    ctor: str
    arg: Type
    result: str
    loc: Optional[Span] = field(default=None, compare=False, repr=False)


BlockItem = Union[Subsort, CtorDecl]


@dataclass(frozen=True, eq=False)
class Block:
    """
    One declaration unit S<K>: fresh sorts with subsortings and constructor typings.
    Equality ignores the order of items.
    """

    sorts: Tuple[SortDecl, ...]
    items: Tuple[BlockItem, ...] = ()
    loc: Optional[Span] = field(default=None, repr=False)

    @property
    def sort_names(self) -> List[str]:
        """
        Declared sort names in order
        """
        return [decl.sort for decl in self.sorts]

    @property
    def subsorts(self) -> List[Subsort]:
        return [item for item in self.items if isinstance(item, Subsort)]

    @property
    def ctor_decls(self) -> List[CtorDecl]:
        return [item for item in self.items if isinstance(item, CtorDecl)]

    def __eq__(self, obj: object) -> bool:
        if isinstance(obj, Block):
            return self.sorts == obj.sorts and frozenset(self.items) == frozenset(obj.items)
        return False

    def __hash__(self) -> int:
        return hash((self.sorts, frozenset(self.items)))


@dataclass(frozen=True)
class Signature:
    blocks: Tuple[Block, ...] = ()

    @cached_property
    def _refinements(self) -> Dict[str, str]:
        table: Dict[str, str] = {}
        for block in self.blocks:
            for decl in block.sorts:
                table.setdefault(decl.sort, decl.refines)
        return table

    def sort_names(self) -> List[str]:
        """
        Declared sorts in declaration order
        """
        return list(self._refinements)

    def datatype_of(self, sort: str) -> Optional[str]:
        """
        The datatype refined by a sort, or None for an undeclared sort
        """
        return self._refinements.get(sort)

    def ctor_decls(self) -> List[CtorDecl]:
        """
        Constructor typings in block order then item order
        """
        return [decl for block in self.blocks for decl in block.ctor_decls]

    def subsorts(self) -> List[Subsort]:
        return [edge for block in self.blocks for edge in block.subsorts]

    def extend(self, ext: "Signature") -> "Signature":
        if not ext.blocks:
            return self
        return Signature(self.blocks + ext.blocks)


EMPTY_SIGNATURE = Signature()


# ---------------------------------------------------------------- patterns


@dataclass(frozen=True)
class Wild:
    pass


@dataclass(frozen=True)
class EmptyPat:
    pass


@dataclass(frozen=True)
class UnitPat:
    pass


@dataclass(frozen=True)
class CtorPat:
    ctor: str
    arg: "Pattern"


@dataclass(frozen=True)
class PairPat:
    left: "Pattern"
    right: "Pattern"


@dataclass(frozen=True)
class AsPat:
    var: str
    pattern: "Pattern"


@dataclass(frozen=True)
class OrPat:
    left: "Pattern"
    right: "Pattern"


Pattern = Union[Wild, EmptyPat, UnitPat, CtorPat, PairPat, AsPat, OrPat]

WILD = Wild()
EMPTY = EmptyPat()
UNIT_PAT = UnitPat()


def pattern_vars(p: Pattern) -> List[str]:
    """
    As-variables of a pattern, left to right, repetitions kept
    """
    if isinstance(p, AsPat):
        return [p.var] + pattern_vars(p.pattern)
    if isinstance(p, CtorPat):
        return pattern_vars(p.arg)
    if isinstance(p, (PairPat, OrPat)):
        return pattern_vars(p.left) + pattern_vars(p.right)
    return []


def rename_pattern(p: Pattern, renaming: Mapping[str, str]) -> Pattern:
    if isinstance(p, AsPat):
        return AsPat(renaming.get(p.var, p.var), rename_pattern(p.pattern, renaming))
    if isinstance(p, CtorPat):
        return CtorPat(p.ctor, rename_pattern(p.arg, renaming))
    if isinstance(p, PairPat):
        return PairPat(rename_pattern(p.left, renaming), rename_pattern(p.right, renaming))
    if isinstance(p, OrPat):
        return OrPat(rename_pattern(p.left, renaming), rename_pattern(p.right, renaming))
    return p


# ---------------------------------------------------------------- expressions


@dataclass(frozen=True)
class Var:
    name: str
    loc: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Lam:
    var: str
    body: "Expr"
    loc: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class App:
    fn: "Expr"
    arg: "Expr"
    loc: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Pair:
    left: "Expr"
    right: "Expr"
    loc: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class UnitVal:
    loc: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Ctor:
    ctor: str
    arg: "Expr"
    loc: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Arm:
    pattern: Pattern
    body: "Expr"


Matches = Tuple[Arm, ...]


@dataclass(frozen=True)
class Case:
    scrutinee: "Expr"
    arms: Matches
    loc: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Declare:
    ext: Signature
    body: "Expr"
    loc: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Anno:
    body: "Expr"
    types: Tuple[Type, ...]
    loc: Optional[Span] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.types:
            raise ValueError("an annotation carries at least one type")


Expr = Union[Var, Lam, App, Pair, UnitVal, Ctor, Case, Declare, Anno]

UNIT_VAL = UnitVal()

Substitution = Mapping[str, Expr]


# ---------------------------------------------------------------- contexts


@dataclass(frozen=True)
class Context:
    """
    Ordered typing assumptions; the rightmost binding of a name wins
    """

    bindings: Tuple[Tuple[str, Type], ...] = ()

    def extend(self, var: str, a: Type) -> "Context":
        return Context(self.bindings + ((var, a),))

    def concat(self, other: "Context") -> "Context":
        if not other.bindings:
            return self
        return Context(self.bindings + other.bindings)

    def lookup(self, var: str) -> Optional[Type]:
        for name, a in reversed(self.bindings):
            if name == var:
                return a
        return None

    def names(self) -> List[str]:
        return [name for name, _ in self.bindings]

    def as_dict(self) -> Dict[str, Type]:
        return dict(self.bindings)

    def __iter__(self) -> Iterator[Tuple[str, Type]]:
        return iter(self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)


EMPTY_CONTEXT = Context()


@dataclass(frozen=True)
class Track:
    """
    One result of intersecting a type with a pattern: as-variable typings and the residual type
    """

    bindings: Context
    residual: Type
    ext: Signature = EMPTY_SIGNATURE


# ---------------------------------------------------------------- operations


def is_value(e: Expr) -> bool:
    if isinstance(e, (Var, Lam, UnitVal)):
        return True
    if isinstance(e, Pair):
        return is_value(e.left) and is_value(e.right)
    if isinstance(e, Ctor):
        return is_value(e.arg)
    if isinstance(e, Anno):
        return is_value(e.body)
    return False


def free_vars(e: Expr) -> FrozenSet[str]:
    if isinstance(e, Var):
        return frozenset({e.name})
    if isinstance(e, Lam):
        return free_vars(e.body) - {e.var}
    if isinstance(e, App):
        return free_vars(e.fn) | free_vars(e.arg)
    if isinstance(e, Pair):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, Ctor):
        return free_vars(e.arg)
    if isinstance(e, Case):
        result = free_vars(e.scrutinee)
        for arm in e.arms:
            result |= free_vars(arm.body) - set(pattern_vars(arm.pattern))
        return result
    if isinstance(e, (Declare, Anno)):
        return free_vars(e.body)
    return frozenset()


def fresh_name(base: str, avoid) -> str:
    stem = base.rstrip("0123456789") or "x"
    index = 1
    while f"{stem}{index}" in avoid:
        index += 1
    return f"{stem}{index}"


def subst(theta: Substitution, e: Expr) -> Expr:
    """
    Capture-avoiding simultaneous substitution, binders are renamed when needed
    """
    if not theta:
        return e
    if isinstance(e, Var):
        return theta.get(e.name, e)
    if isinstance(e, Lam):
        inner = {x: v for x, v in theta.items() if x != e.var}
        if not inner:
            return e
        captured = _range_vars(inner)
        if e.var in captured:
            avoid = captured | free_vars(e.body) | set(inner)
            new_var = fresh_name(e.var, avoid)
            inner[e.var] = Var(new_var)
            return replace(e, var=new_var, body=subst(inner, e.body))
        return replace(e, body=subst(inner, e.body))
    if isinstance(e, App):
        return replace(e, fn=subst(theta, e.fn), arg=subst(theta, e.arg))
    if isinstance(e, Pair):
        return replace(e, left=subst(theta, e.left), right=subst(theta, e.right))
    if isinstance(e, Ctor):
        return replace(e, arg=subst(theta, e.arg))
    if isinstance(e, Case):
        arms = tuple(_subst_arm(theta, arm) for arm in e.arms)
        return replace(e, scrutinee=subst(theta, e.scrutinee), arms=arms)
    if isinstance(e, Declare):
        return replace(e, body=subst(theta, e.body))
    if isinstance(e, Anno):
        return replace(e, body=subst(theta, e.body))
    return e


def _range_vars(theta: Substitution) -> Set[str]:
    result: Set[str] = set()
    for value in theta.values():
        result |= free_vars(value)
    return result


def _subst_arm(theta: Substitution, arm: Arm) -> Arm:
    bound = set(pattern_vars(arm.pattern))
    inner = {x: v for x, v in theta.items() if x not in bound}
    if not inner:
        return arm
    clashes = bound & _range_vars(inner)
    if not clashes:
        return Arm(arm.pattern, subst(inner, arm.body))
    avoid = _range_vars(inner) | free_vars(arm.body) | bound | set(inner)
    renaming: Dict[str, str] = {}
    for var in sorted(clashes):
        renaming[var] = fresh_name(var, avoid)
        avoid.add(renaming[var])
    for old, new in renaming.items():
        inner[old] = Var(new)
    return Arm(rename_pattern(arm.pattern, renaming), subst(inner, arm.body))


def erase(e: Expr) -> Expr:
    """
    Remove every annotation, recursively
    """
    if isinstance(e, Anno):
        return erase(e.body)
    if isinstance(e, Lam):
        return replace(e, body=erase(e.body))
    if isinstance(e, App):
        return replace(e, fn=erase(e.fn), arg=erase(e.arg))
    if isinstance(e, Pair):
        return replace(e, left=erase(e.left), right=erase(e.right))
    if isinstance(e, Ctor):
        return replace(e, arg=erase(e.arg))
    if isinstance(e, Case):
        arms = tuple(Arm(arm.pattern, erase(arm.body)) for arm in e.arms)
        return replace(e, scrutinee=erase(e.scrutinee), arms=arms)
    if isinstance(e, Declare):
        return replace(e, body=erase(e.body))
    return e


def strip_annotations(v: Expr) -> Expr:
    """
    Peel annotations off the head of a term
    """
    while isinstance(v, Anno):
        v = v.body
    return v


def expr_size(e: Expr) -> int:
    if isinstance(e, Lam):
        return 1 + expr_size(e.body)
    if isinstance(e, App):
        return 1 + expr_size(e.fn) + expr_size(e.arg)
    if isinstance(e, Pair):
        return 1 + expr_size(e.left) + expr_size(e.right)
    if isinstance(e, Ctor):
        return 1 + expr_size(e.arg)
    if isinstance(e, Case):
        return 1 + expr_size(e.scrutinee) + sum(expr_size(arm.body) for arm in e.arms)
    if isinstance(e, (Declare, Anno)):
        return expr_size(e.body)
    return 1


def declared_extensions(e: Expr) -> List[Signature]:
    """
    Signature extensions of every `declare` inside e, in left-to-right order
    """
    found: List[Signature] = []

    def visit(node: Expr):
        if isinstance(node, Declare):
            found.append(node.ext)
            visit(node.body)
        elif isinstance(node, Lam):
            visit(node.body)
        elif isinstance(node, App):
            visit(node.fn)
            visit(node.arg)
        elif isinstance(node, Pair):
            visit(node.left)
            visit(node.right)
        elif isinstance(node, Ctor):
            visit(node.arg)
        elif isinstance(node, Case):
            visit(node.scrutinee)
            for arm in node.arms:
                visit(arm.body)
        elif isinstance(node, Anno):
            visit(node.body)

    visit(e)
    return found


@dataclass(frozen=True)
class Program:
    """
    A parsed source file: datatype declarations, top-level signature blocks and the main expression
    """

    ursig: UnrefinedSignature
    sig: Signature
    main: Expr
