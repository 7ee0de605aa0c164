from typing import Optional

from mcp.server.fastmcp import FastMCP

from kovacic_aim.aim import delta, delta_universal
from kovacic_aim.errors import KovacicError
from kovacic_aim.families import FAMILIES, get_family
from kovacic_aim.kovacic import Direct, Signs, classify
from kovacic_aim.params import ParamSpace
from kovacic_aim.parser import format_laurent, parse
from kovacic_aim.pipeline import solve
from kovacic_aim.report import CandidateRecord, RunReport, VarietyRecord, VerdictRecord
from kovacic_aim.variety import variety_equations

mcp = FastMCP("kovacic-aim")


def _failure(command: str, inputs: dict, exc: KovacicError) -> str:
    return RunReport(command=command, input={**inputs, "error": str(exc)}).to_json()


@mcp.tool()
def classify_type(r: int, m: int) -> str:
    """Class of the type (r, m) of y'' = L y.

    Args:
        r: Pole order of L at zero (at least 1)
        m: Degree of L at infinity (at least 0)

    Returns:
        JSON report whose classification is C1, C2, C3 or C4 (no Liouvillian solutions)
    """
    inputs = {"r": str(r), "m": str(m)}
    try:
        return RunReport(command="classify", input=inputs, classification=classify(r, m).value).to_json()
    except KovacicError as exc:
        return _failure("classify", inputs, exc)


@mcp.tool()
def solve_equation(expr: str, d_max: Optional[int] = None) -> str:
    """Decide whether y'' = L y has Liouvillian solutions and build them.

    Args:
        expr: L(x) as a Laurent polynomial, e.g. "x^2 + 5 + 2*x^-2"
        d_max: Largest degree of the polynomial factor to search

    Returns:
        JSON report with the verdict, the solutions and every candidate examined
    """
    inputs = {"expr": expr}
    try:
        verdict = solve(Direct(parse(expr)), d_max)
    except KovacicError as exc:
        return _failure("solve", inputs, exc)
    return RunReport(
        command="solve",
        input=inputs,
        classification=verdict.classification.value if verdict.classification else None,
        verdict=VerdictRecord.from_verdict(verdict),
        candidates=[CandidateRecord.from_outcome(item) for item in verdict.candidates_examined],
    ).to_json()


@mcp.tool()
def obstruction(d: int, f: Optional[str] = None, g: Optional[str] = None, params: Optional[str] = None) -> str:
    """Obstruction of order d to a polynomial solution of P'' = f P' + g P.

    Args:
        d: Order of the obstruction
        f: Coefficient of P'; leave f and g empty for the universal obstruction in alpha, beta
        g: Coefficient of P
        params: Declared parameters, e.g. "k0,k1,r:inv"

    Returns:
        JSON report whose obstruction field holds the polynomial
    """
    inputs = {k: v for k, v in {"d": str(d), "f": f, "g": g, "params": params}.items() if v is not None}
    try:
        if f is None and g is None:
            value = str(delta_universal(d))
        else:
            space = ParamSpace.parse_declaration(params)
            value = format_laurent(delta(parse(f or "0", space), parse(g or "0", space), d))
    except KovacicError as exc:
        return _failure("delta", inputs, exc)
    return RunReport(command="delta", input=inputs, obstruction=value).to_json()


@mcp.tool()
def spectral_variety(family: str, d: int, signs: str, params: Optional[str] = None) -> str:
    """Polynomial equations in the parameters for the degree-d stratum of a family.

    Args:
        family: A named family (biconfluent, hill, case1_generic, canonical_<n>_<m>, ...) or an expression
        d: Degree of the polynomial factor
        signs: s_inf then s0, e.g. "++"; a single sign in case 1
        params: Parameter declaration when family is an expression

    Returns:
        JSON report with the condition on the exponents and the obstruction coefficients
    """
    inputs = {k: v for k, v in {"family": family, "d": str(d), "signs": signs, "params": params}.items()
              if v is not None}
    try:
        if family in FAMILIES or family.startswith("canonical_"):
            eq = get_family(family).equation
        else:
            eq = Direct(parse(family, ParamSpace.parse_declaration(params)))
        system = variety_equations(eq, d, Signs.parse(signs))
    except KovacicError as exc:
        return _failure("variety", inputs, exc)
    return RunReport(command="variety", input=inputs, variety=VarietyRecord.from_system(system)).to_json()


if __name__ == "__main__":
    mcp.run(transport="stdio")
