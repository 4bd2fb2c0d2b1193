"""
Canonical rendering of programs, such that parsing the output gives back the same syntax tree
"""
from typing import List

from DSRCheck.classes.syntax import (
    Anno,
    App,
    Arrow,
    AsPat,
    Block,
    Case,
    Context,
    Ctor,
    CtorDecl,
    CtorPat,
    Declare,
    EmptyPat,
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
    Subsort,
    Track,
    Type,
    UArrow,
    UData,
    UnitPat,
    UnitType,
    UnitVal,
    UnrefinedSignature,
    UnrefinedType,
    UProd,
    UUnit,
    Var,
    Wild,
)

INDENT = "  "


def _wrap(text: str, needed: bool) -> str:
    return f"({text})" if needed else text


def print_utype(tau: UnrefinedType, level: int = 0) -> str:
    if isinstance(tau, UUnit):
        return "unit"
    if isinstance(tau, UData):
        return tau.name
    if isinstance(tau, UArrow):
        return _wrap(f"{print_utype(tau.dom, 1)} -> {print_utype(tau.cod, 0)}", level > 0)
    if isinstance(tau, UProd):
        return _wrap(f"{print_utype(tau.left, 2)} * {print_utype(tau.right, 3)}", level > 2)
    raise TypeError(f"not an unrefined type: {tau!r}")


def print_type(a: Type, level: int = 0) -> str:
    """
    Levels: 0 arrow, 1 intersection, 2 product, 3 atom
    """
    if isinstance(a, UnitType):
        return "unit"
    if isinstance(a, Sort):
        return a.name
    if isinstance(a, Arrow):
        return _wrap(f"{print_type(a.dom, 1)} -> {print_type(a.cod, 0)}", level > 0)
    if isinstance(a, Intersect):
        return _wrap(f"{print_type(a.left, 1)} & {print_type(a.right, 2)}", level > 1)
    if isinstance(a, Prod):
        return _wrap(f"{print_type(a.left, 2)} * {print_type(a.right, 3)}", level > 2)
    raise TypeError(f"not a type: {a!r}")


def print_pattern(p: Pattern, level: int = 0) -> str:
    if isinstance(p, Wild):
        return "_"
    if isinstance(p, EmptyPat):
        return "!"
    if isinstance(p, UnitPat):
        return "()"
    if isinstance(p, CtorPat):
        if isinstance(p.arg, UnitPat):
            return f"{p.ctor}()"
        return f"{p.ctor}({print_pattern(p.arg)})"
    if isinstance(p, PairPat):
        return f"({print_pattern(p.left)}, {print_pattern(p.right)})"
    if isinstance(p, AsPat):
        if isinstance(p.pattern, Wild):
            return p.var
        return _wrap(f"{p.var} as {print_pattern(p.pattern, 1)}", level > 1)
    if isinstance(p, OrPat):
        return _wrap(f"{print_pattern(p.left, 0)} | {print_pattern(p.right, 1)}", level > 0)
    raise TypeError(f"not a pattern: {p!r}")


def print_item(item) -> str:
    if isinstance(item, Subsort):
        return f"{item.sub} <= {item.sup};"
    if isinstance(item, CtorDecl):
        return f"{item.ctor} : {print_type(Arrow(item.arg, Sort(item.result)))};"
    raise TypeError(f"not a block item: {item!r}")


def print_block(block: Block, separator: str = " ", indent: str = "") -> str:
    sorts = ", ".join(f"{decl.sort} of {decl.refines}" for decl in block.sorts)
    items = [print_item(item) for item in block.items]
    if not items:
        return f"{indent}block ({sorts}) {{ }}"
    if separator == "\n":
        body = "".join(f"\n{indent}{INDENT}{item}" for item in items)
        return f"{indent}block ({sorts}) {{{body}\n{indent}}}"
    return f"{indent}block ({sorts}) {{ {' '.join(items)} }}"


def print_signature(sig: Signature) -> str:
    return "\n".join(print_block(block, "\n") for block in sig.blocks)


def print_expr(e: Expr, level: int = 0) -> str:
    """
    Levels: 0 binders (fn, case, declare), 1 application, 2 atom
    """
    if isinstance(e, Var):
        return e.name
    if isinstance(e, UnitVal):
        return "()"
    if isinstance(e, Lam):
        return _wrap(f"fn {e.var} => {print_expr(e.body, 0)}", level > 0)
    if isinstance(e, App):
        return _wrap(f"{print_expr(e.fn, 1)} {print_expr(e.arg, 2)}", level > 1)
    if isinstance(e, Pair):
        return f"({print_expr(e.left)}, {print_expr(e.right)})"
    if isinstance(e, Ctor):
        if isinstance(e.arg, UnitVal):
            return f"{e.ctor}()"
        return f"{e.ctor}({print_expr(e.arg)})"
    if isinstance(e, Case):
        arms = "; ".join(f"{print_pattern(arm.pattern)} => {print_expr(arm.body)}" for arm in e.arms)
        arms = f" {arms} " if arms else " "
        return _wrap(f"case {print_expr(e.scrutinee, 1)} of {{{arms}}}", level > 0)
    if isinstance(e, Declare):
        blocks = " ".join(print_block(block) for block in e.ext.blocks)
        return _wrap(f"declare {blocks} in {print_expr(e.body, 0)}", level > 0)
    if isinstance(e, Anno):
        types = ", ".join(print_type(a) for a in e.types)
        return f"({print_expr(e.body)} : {types})"
    raise TypeError(f"not an expression: {e!r}")


def print_ursig(ursig: UnrefinedSignature) -> str:
    chunks: List[str] = []
    for datatype in ursig.datatypes:
        ctors = ursig.constructors_of(datatype)
        if not ctors:
            chunks.append(f"data {datatype} {{ }}")
            continue
        body = ";".join(f"\n{INDENT}{decl.ctor} : {print_utype(decl.arg)}" for decl in ctors)
        chunks.append(f"data {datatype} {{{body}\n}}")
    return "\n".join(chunks)


def print_program(program: Program) -> str:
    parts = [print_ursig(program.ursig), print_signature(program.sig), f"in\n{INDENT}{print_expr(program.main)}"]
    return "\n".join(part for part in parts if part) + "\n"


def print_context(gamma: Context) -> str:
    if not len(gamma):
        return "·"
    return ", ".join(f"{x}:{print_type(a, 1)}" for x, a in gamma)


def print_track(track: Track) -> str:
    return f"{print_context(track.bindings)} ⊢ {print_type(track.residual)}"
