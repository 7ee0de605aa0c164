#!/usr/bin/env python3
"""
kovacic-aim - Command Line Interface
Classify, decompose and solve y'' = L(x) y for Laurent polynomials L, and
emit the spectral varieties of parametric families.

Results go to stdout (text or JSON), diagnostics to stderr.
"""

import argparse
import logging
import sys
import time
from typing import Callable, Dict, List, Optional

import pandas as pd

from kovacic_aim.aim import delta, delta_universal
from kovacic_aim.config import get_settings
from kovacic_aim.errors import KovacicError, NeedsExtensionError
from kovacic_aim.families import FAMILIES, get_family
from kovacic_aim.kovacic import Classification, Cover, Direct, EquationInput, Signs, classify, dalembert, decompose, pole_type
from kovacic_aim.params import ParamSpace
from kovacic_aim.parser import format_laurent, parse
from kovacic_aim.pipeline import VerdictStatus, list_candidates, solve, stratum_membership
from kovacic_aim.report import (
    CandidateRecord,
    DecompositionRecord,
    RunReport,
    VarietyRecord,
    VerdictRecord,
    stratum_records,
)
from kovacic_aim.variety import variety_equations

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_INTEGRABLE = 1
EXIT_INPUT_ERROR = 2
EXIT_NEEDS_EXTENSION = 3
EXIT_EMPTY_CLASS = 4

VERDICT_EXIT = {
    VerdictStatus.INTEGRABLE: EXIT_OK,
    VerdictStatus.NOT_INTEGRABLE_UP_TO: EXIT_NOT_INTEGRABLE,
    VerdictStatus.NEEDS_EXTENSION: EXIT_NEEDS_EXTENSION,
    VerdictStatus.EMPTY_CLASS: EXIT_EMPTY_CLASS,
}

CANDIDATE_COLUMNS = ["route", "s_inf", "s0", "d", "lambda", "omega", "outcome", "P"]


class Timer:
    """Wall-clock seconds per phase, reported only with --timings."""

    def __init__(self):
        self.phases: Dict[str, float] = {}

    def run(self, phase: str, fn: Callable, *args, **kwargs):
        start = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.phases[phase] = round(time.perf_counter() - start, 6)


# --- inputs -----------------------------------------------------------------

def _params(args) -> ParamSpace:
    return ParamSpace.parse_declaration(getattr(args, "params", None))


def _cover(text: str, params: ParamSpace) -> Cover:
    parts = text.split(";")
    if len(parts) != 3:
        raise KovacicError(f"--cover expects three expressions 'R;B;A', got {len(parts)}")
    R, B, A = (parse(part, params) for part in parts)
    return Cover(R=R, B=B, A=A)


def _equation(args) -> EquationInput:
    params = _params(args)
    if getattr(args, "cover", None):
        return _cover(args.cover, params)
    return Direct(parse(args.expr, params))


def _inputs(args, *names: str) -> Dict[str, str]:
    given = {}
    for name in names:
        value = getattr(args, name, None)
        if value is not None and value is not False:
            given[name] = str(value)
    return given


def _output_format(args) -> str:
    if args.json:
        return "json"
    return args.format or get_settings().output_format


# --- text rendering -----------------------------------------------------------

def _print_candidates(records: List[CandidateRecord]) -> None:
    if not records:
        print("⚠️ No candidates")
        return
    rows = [r.model_dump(by_alias=True) for r in records]
    df = pd.DataFrame(rows, columns=CANDIDATE_COLUMNS).fillna("")
    df = df.loc[:, [c for c in CANDIDATE_COLUMNS if (df[c] != "").any()]]
    print(df.to_string(index=False))


def _print_report(report: RunReport) -> None:
    if report.classification and report.command == "classify":
        marker = "❌" if report.classification == Classification.C4.value else "✅"
        print(f"{marker} class {report.classification}")
    elif report.classification:
        print(f"🔍 class {report.classification}")
    if report.decomposition:
        dec = report.decomposition
        print(f"📊 case {dec.case} decomposition (p = {dec.p}, c = {dec.c})")
        for name in ("A", "B", "R", "a", "b", "q"):
            value = getattr(dec, name)
            if value is not None:
                print(f"  {name} = {value}")
    if report.obstruction is not None:
        print(report.obstruction)
    if report.candidates:
        print("📊 Candidates")
        _print_candidates(report.candidates)
    if report.verdict:
        _print_verdict(report.verdict)
    if report.variety:
        _print_variety(report.variety)
    if report.stratum is not None:
        for item in report.stratum:
            print(f"{'✅' if item.member else '❌'} {item.signs}")
    if report.timings:
        print("⏱️ " + ", ".join(f"{k} {v:.3f}s" for k, v in report.timings.items()))


def _print_verdict(verdict: VerdictRecord) -> None:
    if verdict.status == VerdictStatus.INTEGRABLE.value:
        print(f"✅ Integrable: {len(verdict.solutions)} solution(s)")
        for sol in verdict.solutions:
            print(f"  {sol.description}")
    elif verdict.status == VerdictStatus.NOT_INTEGRABLE_UP_TO.value:
        print(f"❌ No Liouvillian solution with deg P <= {verdict.d_max}")
    elif verdict.status == VerdictStatus.EMPTY_CLASS.value:
        print(f"❌ {verdict.reason}")
    else:
        print(f"⚠️ Needs a field extension: {verdict.reason}")


def _print_variety(variety: VarietyRecord) -> None:
    print(f"📊 Stratum d = {variety.d}, signs {variety.signs}, lambda = {variety.lam}")
    for name, value in (variety.eliminated or {}).items():
        print(f"  {name} = {value}")
    print("condition_a:")
    for eq in variety.condition_a:
        print(f"  {eq} = 0")
    print("delta_coeffs:")
    for eq in variety.delta_coeffs:
        print(f"  {eq} = 0")
    if variety.empty:
        print("⚠️ The system contains a nonzero constant: the stratum is empty")


# --- subcommands --------------------------------------------------------------

def cmd_classify(args, timer: Timer):
    if args.expr is not None:
        r, m = pole_type(parse(args.expr, _params(args)))
    else:
        if args.r is None or args.m is None:
            raise KovacicError("classify needs --expr, or both --r and --m")
        r, m = args.r, args.m
    cls = classify(r, m)
    report = RunReport(command="classify", input=_inputs(args, "expr", "r", "m"), classification=cls.value)
    return report, EXIT_EMPTY_CLASS if cls is Classification.C4 else EXIT_OK


def cmd_decompose(args, timer: Timer):
    eq = _equation(args)
    if args.dalembert:
        eq = Direct(dalembert(eq.L))
    dec = timer.run("decompose", decompose, eq)
    report = RunReport(
        command="decompose",
        input=_inputs(args, "expr", "cover", "params", "dalembert"),
        decomposition=DecompositionRecord.from_decomposition(dec),
    )
    return report, EXIT_OK


def cmd_candidates(args, timer: Timer):
    eq = _equation(args)
    cls, listed = timer.run("candidates", list_candidates, eq, args.dmax)
    report = RunReport(
        command="candidates",
        input=_inputs(args, "expr", "cover", "dmax"),
        classification=cls.value if cls else None,
        candidates=[CandidateRecord.from_outcome(item) for item in listed],
    )
    return report, EXIT_OK


def cmd_delta(args, timer: Timer):
    if args.universal:
        value = str(timer.run("delta", delta_universal, args.d, args.cap))
    else:
        if args.f is None or args.g is None:
            raise KovacicError("delta needs --universal, or both --f and --g")
        params = _params(args)
        f, g = parse(args.f, params), parse(args.g, params)
        value = format_laurent(timer.run("delta", delta, f, g, args.d))
    report = RunReport(command="delta", input=_inputs(args, "universal", "f", "g", "params", "d"), obstruction=value)
    return report, EXIT_OK


def cmd_solve(args, timer: Timer):
    eq = _equation(args)
    verdict = timer.run("solve", solve, eq, args.dmax, args.workers)
    report = RunReport(
        command="solve",
        input=_inputs(args, "expr", "cover", "dmax"),
        classification=verdict.classification.value if verdict.classification else None,
        verdict=VerdictRecord.from_verdict(verdict),
        candidates=[CandidateRecord.from_outcome(item) for item in verdict.candidates_examined],
    )
    return report, VERDICT_EXIT[verdict.status]


def cmd_variety(args, timer: Timer):
    if args.family in FAMILIES or args.family.startswith("canonical_"):
        family = get_family(args.family).equation
    else:
        family = Direct(parse(args.family, _params(args)))
    system = timer.run("variety", variety_equations, family, args.d, Signs.parse(args.signs))
    for symbol in args.eliminate or []:
        system = system.eliminate(symbol)
    report = RunReport(
        command="variety",
        input=_inputs(args, "family", "params", "d", "signs"),
        variety=VarietyRecord.from_system(system),
    )
    return report, EXIT_OK


def cmd_stratum(args, timer: Timer):
    eq = _equation(args)
    membership = timer.run("stratum", stratum_membership, eq, args.d)
    report = RunReport(command="stratum", input=_inputs(args, "expr", "cover", "d"),
                       stratum=stratum_records(membership))
    return report, EXIT_OK


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], help="Output format (default: KOVACIC_OUTPUT or text)")
    common.add_argument("--json", action="store_true", help="Same as --format json")
    common.add_argument("--params", help="Declared parameters, e.g. 'k0,k1,r:inv'")
    common.add_argument("--cap", type=int, help="Largest order for universal obstructions")
    common.add_argument("--workers", type=int, help="Process pool size for candidate checks")
    common.add_argument("--timings", action="store_true", help="Report seconds per phase")
    common.add_argument("--verbose", "-v", action="count", default=0, help="-v for INFO, -vv for DEBUG on stderr")

    parser = argparse.ArgumentParser(prog="kovacic-aim",
                                     description="Liouvillian solutions of y'' = L(x) y for Laurent polynomials L")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="Class of a type (r, m)")
    p.add_argument("--r", type=int, help="Pole order at zero")
    p.add_argument("--m", type=int, help="Degree at infinity")
    p.add_argument("--expr", help="Read (r, m) from an expression instead")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("decompose", parents=[common], help="Split L into its square parts")
    _equation_arguments(p)
    p.add_argument("--dalembert", action="store_true", help="Decompose the D'Alembert transform of L")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("candidates", parents=[common], help="List candidates without solving")
    _equation_arguments(p)
    p.add_argument("--dmax", type=int, help="Largest degree of P (default: KOVACIC_DMAX or 25)")
    p.set_defaults(handler=cmd_candidates)

    p = sub.add_parser("delta", parents=[common], help="Obstruction of order d")
    p.add_argument("--universal", action="store_true", help="Universal obstruction in alpha, beta")
    p.add_argument("--f", help="Coefficient of P' in P'' = f P' + g P")
    p.add_argument("--g", help="Coefficient of P in P'' = f P' + g P")
    p.add_argument("--d", type=int, required=True, help="Order of the obstruction")
    p.set_defaults(handler=cmd_delta)

    p = sub.add_parser("solve", parents=[common], help="Decide integrability and build solutions")
    _equation_arguments(p)
    p.add_argument("--dmax", type=int, help="Largest degree of P (default: KOVACIC_DMAX or 25)")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("variety", parents=[common], help="Spectral variety of a parametric family")
    p.add_argument("--family", required=True,
                   help=f"Family name ({', '.join(sorted(FAMILIES))}, canonical_<n>_<m>) or an expression")
    p.add_argument("--d", type=int, required=True, help="Degree of the stratum")
    p.add_argument("--signs", required=True, help="s_inf then s0, e.g. '++'; a single sign in case 1")
    p.add_argument("--eliminate", action="append", metavar="SYMBOL", help="Solve a linear condition for SYMBOL")
    p.set_defaults(handler=cmd_variety)

    p = sub.add_parser("stratum", parents=[common], help="Stratum membership of a concrete equation")
    _equation_arguments(p)
    p.add_argument("--d", type=int, required=True, help="Degree of the stratum")
    p.set_defaults(handler=cmd_stratum)
    return parser


def _equation_arguments(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--expr", help="L(x), e.g. 'x^2 + 5 + 2*x^-2'")
    group.add_argument("--cover", help="Cover point 'R;B;A' with L = R^2 + B + A^2")


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("kovacic_aim").setLevel(level)


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    timer = Timer()
    logger.debug("running %s", args.command)
    try:
        report, code = args.handler(args, timer)
    except NeedsExtensionError as exc:
        print(f"⚠️ {exc}", file=sys.stderr)
        return EXIT_NEEDS_EXTENSION
    except KovacicError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if args.timings:
        report.timings = timer.phases
    if _output_format(args) == "json":
        print(report.to_json())
    else:
        _print_report(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
