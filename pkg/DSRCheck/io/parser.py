"""
Parser for `.dsr` programs.

    program  = data-decl* block-decl* "in" expr
    data d { C : utype; ... }
    block (s of d, ...) { s <= t; C : A -> s; C : s; ... }

Constructors are capitalised, every other name is lower case, `#` starts a
comment. In types `&` binds tighter than `->` and `*` tighter than `&`.
"""
import logging
from functools import lru_cache
from typing import List, Set, Union

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from DSRCheck.classes.diagnostic import Diagnostic, DSRCheckError, ParseError, Span
from DSRCheck.classes.syntax import (
    EMPTY,
    UNIT,
    UNIT_PAT,
    U_UNIT,
    WILD,
    Anno,
    App,
    Arm,
    Arrow,
    AsPat,
    Block,
    Case,
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
    Program,
    Signature,
    Sort,
    SortDecl,
    Subsort,
    Type,
    UArrow,
    UCtorDecl,
    UData,
    UnitVal,
    UnrefinedSignature,
    UProd,
    Var,
)

LOGGER = logging.getLogger(__name__)

GRAMMAR = r"""
start: data_decl* block_decl* "in" expr
blocks: block_decl*
expr_start: expr
type_start: type
pattern_start: pattern

data_decl: "data" LNAME "{" data_ctor* "}"
data_ctor: CTOR ":" utype ";"?

?utype: uprod "->" utype -> uarrow
      | uprod
?uprod: uprod "*" uatom -> uprod_type
      | uatom
?uatom: "unit" -> uunit
      | LNAME -> udata
      | "(" utype ")"

block_decl: "block" "(" sort_decl ("," sort_decl)* ")" "{" block_item* "}"
sort_decl: LNAME "of" LNAME
?block_item: LNAME "<=" LNAME ";"? -> subsort_item
           | CTOR ":" type ";"? -> ctor_item

?type: sect "->" type -> arrow
     | sect
?sect: sect "&" prod -> intersect
     | prod
?prod: prod "*" tatom -> prod_type
     | tatom
?tatom: "unit" -> unit_type
      | LNAME -> sort
      | "(" type ")"

?expr: "fn" LNAME "=>" expr -> lam
     | "case" expr "of" "{" arms? "}" -> case
     | "declare" block_decl+ "in" expr -> declare
     | app
arms: arm (";" arm)* ";"?
arm: pattern "=>" expr
?app: app atom -> app
    | atom
?atom: LNAME -> var
     | "(" ")" -> unit_val
     | CTOR "(" expr? ")" -> ctor
     | "(" expr ")"
     | "(" expr "," expr ")" -> pair
     | "(" expr ":" type ("," type)* ")" -> anno

?pattern: pattern "|" as_pat -> or_pat
        | as_pat
?as_pat: LNAME "as" as_pat -> as_binding
       | patom
?patom: "_" -> wild
      | "!" -> empty_pat
      | "(" ")" -> unit_pat
      | CTOR "(" pattern? ")" -> ctor_pat
      | "(" pattern "," pattern ")" -> pair_pat
      | "(" pattern ")"
      | LNAME -> var_pat

CTOR: /[A-Z][A-Za-z0-9_']*/
LNAME: /[a-z][A-Za-z0-9_']*/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(
        GRAMMAR,
        parser="lalr",
        start=["start", "blocks", "expr_start", "type_start", "pattern_start"],
        propagate_positions=True,
    )


def _span(meta) -> Span:
    if getattr(meta, "empty", True):
        return None
    return Span(meta.line, meta.column, max(1, meta.end_pos - meta.start_pos))


def _token_span(token: Token) -> Span:
    return Span(token.line, token.column, len(token))


@v_args(meta=True)
class ToSyntax(Transformer):
    """
    Builds syntax trees from the parse tree, attaching spans
    """

    # unrefined types
    def uunit(self, meta, children):
        return U_UNIT

    def udata(self, meta, children):
        return UData(str(children[0]))

    def uarrow(self, meta, children):
        return UArrow(children[0], children[1])

    def uprod_type(self, meta, children):
        return UProd(children[0], children[1])

    # refined types
    def unit_type(self, meta, children):
        return UNIT

    def sort(self, meta, children):
        return Sort(str(children[0]))

    def arrow(self, meta, children):
        return Arrow(children[0], children[1])

    def intersect(self, meta, children):
        return Intersect(children[0], children[1])

    def prod_type(self, meta, children):
        return Prod(children[0], children[1])

    # declarations
    def data_ctor(self, meta, children):
        return (str(children[0]), children[1], _token_span(children[0]))

    def data_decl(self, meta, children):
        name = children[0]
        return (str(name), children[1:], _token_span(name))

    def sort_decl(self, meta, children):
        return SortDecl(str(children[0]), str(children[1]), _span(meta))

    def subsort_item(self, meta, children):
        return Subsort(str(children[0]), str(children[1]), _span(meta))

    def ctor_item(self, meta, children):
        name, declared = children
        if isinstance(declared, Sort):
            return CtorDecl(str(name), UNIT, declared.name, _span(meta))
        if isinstance(declared, Arrow) and isinstance(declared.cod, Sort):
            return CtorDecl(str(name), declared.dom, declared.cod.name, _span(meta))
        raise ParseError(f"constructor typing for {name} must end in a sort", _token_span(name))

    def block_decl(self, meta, children):
        sorts = tuple(child for child in children if isinstance(child, SortDecl))
        items = tuple(child for child in children if isinstance(child, (Subsort, CtorDecl)))
        seen: Set[str] = set()
        for decl in sorts:
            if decl.sort in seen:
                raise ParseError(f"sort {decl.sort} declared twice in one block", decl.loc)
            seen.add(decl.sort)
        return Block(sorts, items, _span(meta))

    def blocks(self, meta, children):
        return Signature(tuple(children))

    # expressions
    def var(self, meta, children):
        return Var(str(children[0]), _span(meta))

    def unit_val(self, meta, children):
        return UnitVal(_span(meta))

    def lam(self, meta, children):
        return Lam(str(children[0]), children[1], _span(meta))

    def app(self, meta, children):
        return App(children[0], children[1], _span(meta))

    def pair(self, meta, children):
        return Pair(children[0], children[1], _span(meta))

    def ctor(self, meta, children):
        arg = children[1] if len(children) > 1 else UnitVal(_span(meta))
        return Ctor(str(children[0]), arg, _span(meta))

    def arm(self, meta, children):
        return Arm(children[0], children[1])

    def arms(self, meta, children):
        return tuple(children)

    def case(self, meta, children):
        arms = children[1] if len(children) > 1 else ()
        return Case(children[0], arms, _span(meta))

    def declare(self, meta, children):
        return Declare(Signature(tuple(children[:-1])), children[-1], _span(meta))

    def anno(self, meta, children):
        return Anno(children[0], tuple(children[1:]), _span(meta))

    # patterns
    def wild(self, meta, children):
        return WILD

    def empty_pat(self, meta, children):
        return EMPTY

    def unit_pat(self, meta, children):
        return UNIT_PAT

    def var_pat(self, meta, children):
        return AsPat(str(children[0]), WILD)

    def as_binding(self, meta, children):
        return AsPat(str(children[0]), children[1])

    def ctor_pat(self, meta, children):
        arg = children[1] if len(children) > 1 else UNIT_PAT
        return CtorPat(str(children[0]), arg)

    def pair_pat(self, meta, children):
        return PairPat(children[0], children[1])

    def or_pat(self, meta, children):
        return OrPat(children[0], children[1])

    def start(self, meta, children):
        return children

    def expr_start(self, meta, children):
        return children[0]

    type_start = expr_start
    pattern_start = expr_start


def _end_span(text: str) -> Span:
    """
    Position of the last non-blank character, where an unexpected end of input is reported
    """
    body = text.rstrip()
    if not body:
        return Span(1, 1)
    lines = body.split("\n")
    return Span(len(lines), len(lines[-1]))


def _describe_terminal(name: str) -> str:
    try:
        pattern = _parser().get_terminal(name).pattern
    except KeyError:
        return name.lower()
    return repr(pattern.value) if pattern.type == "str" else name.lower()


def _syntax_error(text: str, err: UnexpectedInput) -> Diagnostic:
    line, column = getattr(err, "line", -1), getattr(err, "column", -1)
    span = Span(line, column) if line and line > 0 else _end_span(text)
    if isinstance(err, UnexpectedToken):
        if err.token.type == "$END":
            message = "unexpected end of input"
        else:
            message = f"unexpected {err.token.type.lower()} {str(err.token)!r}"
        expected = sorted(_describe_terminal(name) for name in err.expected)[:8]
        if expected:
            message += f", expected one of: {', '.join(expected)}"
    elif isinstance(err, UnexpectedCharacters):
        message = f"unexpected character {text[err.pos_in_stream]!r}"
    elif isinstance(err, UnexpectedEOF):
        message = "unexpected end of input"
    else:
        message = str(err).strip().split("\n")[0]
    return Diagnostic("PARSE", message, span)


def _parse(text: str, start: str):
    try:
        tree = _parser().parse(text, start=start)
        return ToSyntax().transform(tree)
    except VisitError as err:
        if isinstance(err.orig_exc, DSRCheckError):
            raise err.orig_exc
        raise


def _build_ursig(data_decls, diagnostics: List[Diagnostic]) -> UnrefinedSignature:
    datatypes: List[str] = []
    for name, _, span in data_decls:
        if name in datatypes:
            diagnostics.append(Diagnostic("DUPDATA", f"datatype {name} is declared twice", span))
        else:
            datatypes.append(name)
    ctors: List[UCtorDecl] = []
    seen: Set[str] = set()
    for name, members, _ in data_decls:
        for ctor, arg, span in members:
            if ctor in seen:
                diagnostics.append(Diagnostic("DUPCTOR", f"constructor {ctor} is declared twice", span))
                continue
            seen.add(ctor)
            missing = sorted(_data_names(arg) - set(datatypes))
            if missing:
                diagnostics.append(
                    Diagnostic("PARSE", f"constructor {ctor} mentions undeclared datatype {missing[0]}", span)
                )
            ctors.append(UCtorDecl(ctor, arg, name))
    return UnrefinedSignature(tuple(datatypes), tuple(ctors))


def _data_names(tau) -> Set[str]:
    if isinstance(tau, UData):
        return {tau.name}
    if isinstance(tau, UArrow):
        return _data_names(tau.dom) | _data_names(tau.cod)
    if isinstance(tau, UProd):
        return _data_names(tau.left) | _data_names(tau.right)
    return set()


def parse_program(text: str) -> Union[Program, List[Diagnostic]]:
    """
    Parse a whole program; returns the diagnostics instead when the text is malformed
    """
    try:
        children = _parse(text, "start")
    except UnexpectedInput as err:
        return [_syntax_error(text, err)]
    except DSRCheckError as err:
        return [err.diagnostic]
    data_decls = [child for child in children if isinstance(child, tuple)]
    blocks = tuple(child for child in children if isinstance(child, Block))
    diagnostics: List[Diagnostic] = []
    ursig = _build_ursig(data_decls, diagnostics)
    if diagnostics:
        LOGGER.info("program rejected with %d diagnostics", len(diagnostics))
        return diagnostics
    return Program(ursig, Signature(blocks), children[-1])


def _parse_fragment(text: str, start: str):
    try:
        return _parse(text, start)
    except UnexpectedInput as err:
        diagnostic = _syntax_error(text, err)
        raise ParseError(diagnostic.message, diagnostic.span)


def parse_expr(text: str) -> Expr:
    """
    Parse a single expression, raising ParseError
    """
    return _parse_fragment(text, "expr_start")


def parse_type(text: str) -> Type:
    return _parse_fragment(text, "type_start")


def parse_pattern(text: str) -> Pattern:
    return _parse_fragment(text, "pattern_start")


def parse_signature(text: str) -> Signature:
    """
    Parse a sequence of blocks
    """
    return _parse_fragment(text, "blocks")
