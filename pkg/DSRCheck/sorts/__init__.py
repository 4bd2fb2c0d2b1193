"""
Refinement, type well-formedness, subsorting and signature well-formedness.

A signature is a sequence of blocks. Each block may introduce sorts below or
above existing ones, but it may neither change how old sorts relate to each
other nor add inhabitants to old sorts: every constructor typing whose
codomain lands under an old sort t must already be covered by a typing in
the prefix (the safe-extension check).
"""
import logging
from functools import lru_cache
from typing import List, Optional, Set

from DSRCheck.classes.diagnostic import Diagnostic, Span, UndeclaredSortError, UnknownCtorError
from DSRCheck.classes.syntax import (
    U_UNIT,
    Arrow,
    Block,
    BlockItem,
    CtorDecl,
    Intersect,
    Prod,
    Signature,
    Sort,
    Subsort,
    Type,
    UArrow,
    UData,
    UnitType,
    UnrefinedSignature,
    UnrefinedType,
    UProd,
    sorts_of_type,
)
from DSRCheck.sorts.closure import SubsortClosure
from DSRCheck.sorts.subtyping import subtype

LOGGER = logging.getLogger(__name__)


def dom(sig: Signature) -> Set[str]:
    """
    Sorts declared anywhere in the signature
    """
    return set(sig.sort_names())


@lru_cache(maxsize=512)
def subsort_closure(sig: Signature) -> SubsortClosure:
    """
    Decide s <= t under sig; raises UndeclaredSortError when an edge leaves dom(sig)
    """
    declared = dom(sig)
    for edge in sig.subsorts():
        for sort in (edge.sub, edge.sup):
            if sort not in declared:
                raise UndeclaredSortError(f"subsort edge mentions undeclared sort {sort}", edge.loc)
    return SubsortClosure(sig.sort_names(), [(e.sub, e.sup) for e in sig.subsorts()])


def lenient_closure(sig: Signature) -> SubsortClosure:
    """
    Closure that silently drops edges leaving dom(sig); used while diagnosing a signature
    """
    declared = dom(sig)
    edges = [(e.sub, e.sup) for e in sig.subsorts() if e.sub in declared and e.sup in declared]
    return SubsortClosure(sig.sort_names(), edges)


def underlying(sig: Signature, a: Type) -> Optional[UnrefinedType]:
    """
    The unique unrefined type refined by a, or None when there is none
    """
    if isinstance(a, UnitType):
        return U_UNIT
    if isinstance(a, Sort):
        datatype = sig.datatype_of(a.name)
        return UData(datatype) if datatype is not None else None
    if isinstance(a, Arrow):
        dom_, cod = underlying(sig, a.dom), underlying(sig, a.cod)
        return UArrow(dom_, cod) if dom_ is not None and cod is not None else None
    if isinstance(a, Prod):
        left, right = underlying(sig, a.left), underlying(sig, a.right)
        return UProd(left, right) if left is not None and right is not None else None
    if isinstance(a, Intersect):
        left, right = underlying(sig, a.left), underlying(sig, a.right)
        return left if left is not None and left == right else None
    return None


def refines(sig: Signature, a: Type, tau: UnrefinedType) -> bool:
    return underlying(sig, a) == tau


def type_wf(sig: Signature, a: Type) -> bool:
    """
    Sorts are in scope and both arms of every intersection refine the same unrefined type
    """
    return underlying(sig, a) is not None


def contype_wf(
    sig: Signature, c: str, arg: Type, result: str, ursig: UnrefinedSignature
) -> bool:
    """
    Whether arg -> result is a well-formed refinement of c's unrefined type
    """
    decl = ursig.ctor(c)
    if decl is None:
        raise UnknownCtorError(f"constructor {c} is not declared in any datatype")
    if sig.datatype_of(result) is None or not type_wf(sig, arg):
        return False
    return underlying(sig, arg) == decl.arg and sig.datatype_of(result) == decl.result


def safe_con_at(
    prefix: Signature,
    block: Block,
    c: str,
    arg: Type,
    result: str,
    t: str,
    closure: Optional[SubsortClosure] = None,
) -> bool:
    """
    Whether c : arg -> result is already covered at the old sort t by a typing in prefix
    """
    extended = prefix.extend(Signature((block,)))
    closure = closure or lenient_closure(extended)
    memo = {}
    for decl in prefix.ctor_decls():
        if decl.ctor != c:
            continue
        if (
            closure(decl.result, t)
            and closure(result, decl.result)
            # covariant: the new typing must not accept more arguments
            and subtype(extended, closure, arg, decl.arg, memo)
        ):
            return True
    return False


def block_elem_ok(
    prefix: Signature, block: Block, item: BlockItem, ursig: UnrefinedSignature
) -> bool:
    scope = dom(prefix) | set(block.sort_names)
    if isinstance(item, Subsort):
        return item.sub in scope and item.sup in scope
    if item.result not in block.sort_names:
        return False
    extended = prefix.extend(Signature((block,)))
    try:
        if not contype_wf(extended, item.ctor, item.arg, item.result, ursig):
            return False
    except UnknownCtorError:
        return False
    closure = lenient_closure(extended)
    return all(
        safe_con_at(prefix, block, item.ctor, item.arg, item.result, t, closure)
        for t in prefix.sort_names()
        if closure(item.result, t)
    )


def sig_wf(sig: Signature, ursig: UnrefinedSignature) -> List[Diagnostic]:
    """
    Check every block against its prefix; returns all violations, empty when well-formed
    """
    return _check_blocks(Signature(), sig.blocks, ursig)


def check_extension(base: Signature, ext: Signature, ursig: UnrefinedSignature) -> List[Diagnostic]:
    """
    Check only the blocks of ext, assuming base is already well-formed
    """
    return _check_blocks(base, ext.blocks, ursig)


def _diag(code: str, message: str, *locs: Optional[Span], **extra) -> Diagnostic:
    span = next((loc for loc in locs if loc is not None), None)
    return Diagnostic(code, message, span, extra=extra or None)


def _check_blocks(base: Signature, blocks, ursig: UnrefinedSignature) -> List[Diagnostic]:
    diagnostics: List[Diagnostic] = []
    prefix = base
    for block in blocks:
        prefix_sorts = prefix.sort_names()
        prefix_dom = set(prefix_sorts)
        new_sorts: Set[str] = set()
        for decl in block.sorts:
            if decl.sort in prefix_dom or decl.sort in new_sorts:
                diagnostics.append(
                    _diag("DUPSORT", f"SigBlock: sort {decl.sort} is already declared", decl.loc, block.loc, sort=decl.sort)
                )
            new_sorts.add(decl.sort)
            if decl.refines not in ursig.datatypes:
                diagnostics.append(
                    _diag(
                        "UNKNOWN_DATATYPE",
                        f"SigBlock: sort {decl.sort} refines undeclared datatype {decl.refines}",
                        decl.loc,
                        block.loc,
                        datatype=decl.refines,
                    )
                )
        extended = prefix.extend(Signature((block,)))
        scope = prefix_dom | new_sorts

        for edge in block.subsorts:
            missing = [s for s in (edge.sub, edge.sup) if s not in scope]
            if missing:
                diagnostics.append(
                    _diag("SCOPE", f"BlockSubsort: {', '.join(missing)} not in scope", edge.loc, block.loc)
                )
            elif extended.datatype_of(edge.sub) != extended.datatype_of(edge.sup):
                diagnostics.append(
                    _diag(
                        "SUBSORT_MISMATCH",
                        f"BlockSubsort: {edge.sub} <= {edge.sup} relates sorts of different datatypes",
                        edge.loc,
                        block.loc,
                    )
                )

        before = lenient_closure(prefix)
        after = lenient_closure(extended)
        for sub in prefix_sorts:
            for sup in prefix_sorts:
                if after(sub, sup) and not before(sub, sup):
                    diagnostics.append(
                        _diag(
                            "SUBSORT_BACKPATCH",
                            f"SigBlock: block makes {sub} <= {sup} hold between previously declared sorts",
                            block.loc,
                            sub=sub,
                            sup=sup,
                        )
                    )

        for decl in block.ctor_decls:
            diagnostics.extend(_check_ctor_decl(prefix, block, extended, after, decl, scope, ursig))

        if diagnostics:
            LOGGER.info("signature block %s rejected", block.sort_names)
        prefix = extended
    return diagnostics


def _check_ctor_decl(
    prefix: Signature,
    block: Block,
    extended: Signature,
    closure: SubsortClosure,
    decl: CtorDecl,
    scope: Set[str],
    ursig: UnrefinedSignature,
) -> List[Diagnostic]:
    where = (decl.loc, block.loc)
    if decl.result not in block.sort_names:
        return [
            _diag(
                "SCOPE",
                f"BlockCon: {decl.ctor} must target a sort of its own block, not {decl.result}",
                *where,
                ctor=decl.ctor,
            )
        ]
    if ursig.ctor(decl.ctor) is None:
        return [_diag("UNKNOWN_CTOR", f"ContypeArr: constructor {decl.ctor} is not declared", *where, ctor=decl.ctor)]
    missing = sorted(sorts_of_type(decl.arg) - scope)
    if missing:
        return [_diag("SCOPE", f"BlockCon: {', '.join(missing)} not in scope", *where, ctor=decl.ctor)]
    if not contype_wf(extended, decl.ctor, decl.arg, decl.result, ursig):
        return [
            _diag(
                "CTOR_MISMATCH",
                f"ContypeArr: typing of {decl.ctor} does not refine its unrefined type",
                *where,
                ctor=decl.ctor,
            )
        ]
    problems = []
    for t in prefix.sort_names():
        if closure(decl.result, t) and not safe_con_at(
            prefix, block, decl.ctor, decl.arg, decl.result, t, closure
        ):
            problems.append(
                _diag(
                    "UNSAFE_CTOR",
                    f"SafeConAt: {decl.ctor} would add new inhabitants to {t}",
                    *where,
                    ctor=decl.ctor,
                    sort=t,
                )
            )
    return problems


def inversion(sig: Signature, closure: SubsortClosure, sort: str) -> List[CtorDecl]:
    """
    Every constructor typing able to build a value of the given sort
    """
    return [decl for decl in sig.ctor_decls() if closure(decl.result, sort)]
