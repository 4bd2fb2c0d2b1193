"""
The `sortc` command line.

    sortc check FILE [--goal TYPE] [--optimize] [--no-memo]
    sortc run FILE [--fuel N] [--trace] [--erase]
    sortc sig FILE [--closure] [--inversion]
    sortc coverage FILE [--optimize]

Every subcommand accepts --json and -v. Exit codes: 0 ok, 1 type error,
2 parse error, 3 signature error, 64 usage error, 66 unreadable input.
"""
import argparse
import logging
import os
import sys
from typing import Dict, List, Optional, Sequence, Tuple

import jsonschema

from DSRCheck import __version__
from DSRCheck.classes.diagnostic import WARNING, Diagnostic, ParseError, exit_code
from DSRCheck.classes.syntax import Program, Type, erase
from DSRCheck.evaluation import DEFAULT_FUEL, OUT_OF_FUEL, STUCK, evaluate, iter_steps
from DSRCheck.io.parser import parse_program, parse_type
from DSRCheck.io.printer import print_expr, print_item, print_signature, print_track, print_type
from DSRCheck.sorts import inversion, sig_wf, subsort_closure
from DSRCheck.typecheck import ProgramCheck, run_program_check
from DSRCheck.utility import SEVERITY_COLORS, dumps_json, load_json, paint, read_text, use_color

LOGGER = logging.getLogger(__name__)

USAGE_ERROR = 64
NO_INPUT = 66

SCHEMA_PATH = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data", "schema", "sortc-output.schema.json"
)

Outcome = Tuple[List[Diagnostic], Optional[Dict]]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit machine-readable output.")
    common.add_argument("-v", "--verbose", action="count", default=0, help="Log more (repeatable).")

    parser = _Parser(prog="sortc", description="Typechecker for datasort refinements")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    check = commands.add_parser("check", parents=[common], help="Typecheck a program.")
    check.add_argument("file", help="A .dsr program.")
    check.add_argument("--goal", type=str, default=None, help="Check the main expression against this type.")
    check.add_argument("--optimize", action="store_true", help="Prune subsumed case tracks.")
    check.add_argument("--no-memo", action="store_true", help="Disable memoization of check and synth.")

    run = commands.add_parser("run", parents=[common], help="Typecheck then evaluate a program.")
    run.add_argument("file", help="A .dsr program.")
    run.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="Maximum number of steps.")
    run.add_argument("--trace", action="store_true", help="Print every intermediate state.")
    run.add_argument("--erase", action="store_true", help="Erase annotations before evaluating.")

    sig = commands.add_parser("sig", parents=[common], help="Check and show the signature of a program.")
    sig.add_argument("file", help="A .dsr program.")
    sig.add_argument("--closure", action="store_true", help="Print the subsort closure as an edge list.")
    sig.add_argument("--inversion", action="store_true", help="Print the constructors inhabiting each sort.")

    coverage = commands.add_parser("coverage", parents=[common], help="Show residual patterns and case tracks.")
    coverage.add_argument("file", help="A .dsr program.")
    coverage.add_argument("--optimize", action="store_true", help="Prune subsumed case tracks.")

    args = parser.parse_args(argv)
    if getattr(args, "fuel", 0) < 0:
        parser.error("--fuel must be nonnegative")
    return args


def _load(filename: str) -> Tuple[Optional[Program], List[Diagnostic]]:
    try:
        text = read_text(filename)
    except UnicodeDecodeError as err:
        LOGGER.info("%s is not UTF-8", filename, exc_info=True)
        return None, [Diagnostic("PARSE", f"input is not valid UTF-8: {err.reason} at byte {err.start}")]
    parsed = parse_program(text)
    if isinstance(parsed, list):
        return None, sorted(parsed, key=Diagnostic.sort_key)
    return parsed, []


def _goal(text: Optional[str]) -> Tuple[Optional[Type], List[Diagnostic]]:
    if text is None:
        return None, []
    try:
        return parse_type(text), []
    except ParseError as err:
        return None, [Diagnostic(err.diagnostic.code, f"in --goal: {err.diagnostic.message}")]


def _types(check: ProgramCheck) -> Dict:
    return {"types": [print_type(a) for a in check.types]}


def cmd_check(args: argparse.Namespace) -> Outcome:
    prog, diagnostics = _load(args.file)
    if prog is None:
        return diagnostics, None
    goal, diagnostics = _goal(args.goal)
    if diagnostics:
        return diagnostics, None
    check = run_program_check(prog, goal, optimize=args.optimize, memoize=not args.no_memo)
    LOGGER.info("checked %s with %d diagnostics", args.file, len(check.diagnostics))
    return check.diagnostics, _types(check) if check.ok else None


def cmd_run(args: argparse.Namespace) -> Outcome:
    prog, diagnostics = _load(args.file)
    if prog is None:
        return diagnostics, None
    check = run_program_check(prog)
    if not check.ok:
        return check.diagnostics, None
    outcome = evaluate(prog.main, args.fuel, erase_annotations=args.erase)
    result = {"outcome": outcome.asdict(), "types": _types(check)["types"]}
    if args.trace:
        start = erase(prog.main) if args.erase else prog.main
        result["trace"] = [print_expr(state) for state in iter_steps(start, args.fuel)]
    if outcome.kind == STUCK:
        diagnostics = [Diagnostic(STUCK.upper(), f"evaluation is stuck at {print_expr(outcome.expr)}", prog.main.loc)]
    elif outcome.kind == OUT_OF_FUEL:
        message = f"no value after {outcome.steps} steps"
        diagnostics = [Diagnostic(OUT_OF_FUEL.upper(), message, prog.main.loc, WARNING)]
    return diagnostics, result


def cmd_sig(args: argparse.Namespace) -> Outcome:
    prog, diagnostics = _load(args.file)
    if prog is None:
        return diagnostics, None
    diagnostics = sorted(sig_wf(prog.sig, prog.ursig), key=Diagnostic.sort_key)
    if diagnostics:
        return diagnostics, None
    closure = subsort_closure(prog.sig)
    result = {
        "sorts": [{"name": name, "datatype": prog.sig.datatype_of(name)} for name in prog.sig.sort_names()],
        "edges": [list(pair) for pair in closure.pairs()],
        "ctors": [
            {"ctor": decl.ctor, "arg": print_type(decl.arg), "result": decl.result}
            for decl in prog.sig.ctor_decls()
        ],
        "text": print_signature(prog.sig),
    }
    if args.inversion:
        result["inversion"] = {
            name: [print_item(decl) for decl in inversion(prog.sig, closure, name)]
            for name in prog.sig.sort_names()
        }
    return [], result


def cmd_coverage(args: argparse.Namespace) -> Outcome:
    prog, diagnostics = _load(args.file)
    if prog is None:
        return diagnostics, None
    check = run_program_check(prog, optimize=args.optimize)
    if check.session is None:
        return check.diagnostics, None
    recorded = sorted(check.session.coverage, key=lambda case: (case.span.line, case.span.column) if case.span else (0, 0))
    cases = [case.asdict() for case in recorded]
    tracks = [[[print_track(track) for track in arm_tracks] for _, arm_tracks in case.arms] for case in recorded]
    for case, rendered in zip(cases, tracks):
        for arm, lines in zip(case["arms"], rendered):
            arm["text"] = lines
    return check.diagnostics, {"cases": cases}


COMMANDS = {
    "check": cmd_check,
    "run": cmd_run,
    "sig": cmd_sig,
    "coverage": cmd_coverage,
}


def payload(command: str, diagnostics: List[Diagnostic], result: Optional[Dict]) -> Dict:
    """
    The --json document; diagnostics ordered by span then code
    """
    ordered = sorted(diagnostics, key=Diagnostic.sort_key)
    return {
        "version": __version__,
        "command": command,
        "ok": exit_code(ordered) == 0,
        "diagnostics": [d.asdict() for d in ordered],
        "result": result,
    }


def validate_payload(document: Dict) -> None:
    """
    Validate a --json document against the shipped schema, raising jsonschema.ValidationError
    """
    if not os.path.exists(SCHEMA_PATH):
        LOGGER.warning("output schema not found at %s, skipping validation", SCHEMA_PATH)
        return
    jsonschema.validate(document, load_json(SCHEMA_PATH))


def _render_diagnostic(filename: str, diagnostic: Diagnostic, color: bool) -> str:
    where = f"{diagnostic.span.line}:{diagnostic.span.column}:" if diagnostic.span else ""
    severity = paint(diagnostic.severity, SEVERITY_COLORS.get(diagnostic.severity, ""), color)
    return f"{filename}:{where} {severity} [{diagnostic.code}] {diagnostic.message}"


def _render_result(args: argparse.Namespace, result: Dict) -> List[str]:
    if args.command == "check":
        return [f"main : {a}" for a in result["types"]]
    if args.command == "run":
        lines = [f"{index:>4}  {state}" for index, state in enumerate(result.get("trace", []))]
        outcome = result["outcome"]
        if outcome["kind"] == "value":
            lines.append(outcome["expr"])
        return lines
    if args.command == "sig":
        if args.closure:
            lines = [f"{sub} <= {sup}" for sub, sup in result["edges"]]
        else:
            lines = [result["text"]] if result["text"] else []
        for name, decls in result.get("inversion", {}).items():
            lines.append(f"{name}: {' '.join(decls) if decls else '(no constructors)'}")
        return lines
    lines = []
    for case in result["cases"]:
        status = "exhaustive" if case["exhaustive"] else f"residual {case['residual']}"
        lines.append(f"case at {case['line']}:{case['col']} : {case['scrutinee']} ({status})")
        for arm in case["arms"]:
            lines.append(f"  {arm['pattern']}")
            lines.extend(f"    {track}" for track in arm["text"])
    return lines


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        diagnostics, result = COMMANDS[args.command](args)
    except OSError as err:
        print(f"sortc: cannot read {args.file}: {err.strerror or err}", file=sys.stderr)
        return NO_INPUT
    code = exit_code(diagnostics)

    if args.json:
        document = payload(args.command, diagnostics, result)
        validate_payload(document)
        print(dumps_json(document))
        return code

    color = use_color(sys.stderr)
    for diagnostic in sorted(diagnostics, key=Diagnostic.sort_key):
        print(_render_diagnostic(args.file, diagnostic, color), file=sys.stderr)
    if result is not None:
        for line in _render_result(args, result):
            print(line)
    if code == 0 and args.command == "check":
        print(paint("ok", SEVERITY_COLORS["ok"], color), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
