"""
Serializable run reports shared by the CLI and the tool server.

Every polynomial is rendered with ``format_laurent`` and every parameter
polynomial with ``format_param``, so each string parses back to the value it
came from.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from kovacic_aim.kovacic import CandidateReport, Decomposition
from kovacic_aim.laurent import LaurentPolynomial
from kovacic_aim.params import Coefficient
from kovacic_aim.parser import format_laurent, format_param
from kovacic_aim.pipeline import CandidateOutcome, LiouvillianSolution, Verdict
from kovacic_aim.variety import SpectralSystem


def _sign(value: Optional[int]) -> Optional[str]:
    if value is None:
        return None
    return "+" if value > 0 else "-"


def _coefficient(value: Optional[Coefficient]) -> Optional[str]:
    return None if value is None else format_param(value)


def _poly(value: Optional[LaurentPolynomial]) -> Optional[str]:
    return None if value is None else format_laurent(value)


class CandidateRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    route: Optional[str] = Field(default=None, description="direct, or dalembert for the w = sqrt(x) equation")
    s_inf: str = Field(description="sign at infinity")
    s0: Optional[str] = Field(default=None, description="sign at zero (absent in case 1)")
    d: Optional[str] = Field(default=None, description="degree of P, possibly non-integer when inadmissible")
    lam: Optional[str] = Field(default=None, alias="lambda", description="exponent of the variable")
    omega: Optional[str] = Field(default=None, description="Laurent part of the exponential")
    outcome: str = Field(description="solution, no polynomial solution, or the inadmissibility reason")
    P: Optional[str] = Field(default=None, description="monic polynomial solution of the auxiliary equation")

    @classmethod
    def from_report(cls, report: CandidateReport, outcome: str, route: Optional[str] = None,
                    P: Optional[LaurentPolynomial] = None) -> "CandidateRecord":
        return cls(
            route=route,
            s_inf=_sign(report.signs.s_inf),
            s0=_sign(report.signs.s0),
            d=_coefficient(report.d),
            lam=_coefficient(report.lam),
            omega=_poly(report.omega),
            outcome=outcome,
            P=_poly(P),
        )

    @classmethod
    def from_outcome(cls, item: CandidateOutcome) -> "CandidateRecord":
        return cls.from_report(item.report, item.outcome, item.route.value, item.P)


class SolutionRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    variable: str = Field(description="x, or w = sqrt(x) for D'Alembert solutions")
    route: str
    signs: str
    d: int = Field(description="degree of P after normalization")
    lam: str = Field(alias="lambda", description="exponent of the variable")
    P: str
    omega: str
    antiderivative: str = Field(description="integral of omega with zero constant term")
    x_exponent: str = Field(description="power of x in front once written in x")
    description: str

    @classmethod
    def from_solution(cls, sol: LiouvillianSolution) -> "SolutionRecord":
        return cls(
            variable=sol.variable,
            route=sol.route.value,
            signs=str(sol.signs),
            d=sol.d,
            lam=format_param(sol.lam),
            P=format_laurent(sol.P),
            omega=format_laurent(sol.omega),
            antiderivative=format_laurent(sol.antiderivative),
            x_exponent=format_param(sol.x_exponent),
            description=sol.describe(),
        )


class VerdictRecord(BaseModel):
    status: str = Field(description="Integrable, NotIntegrableUpTo, EmptyClass or NeedsExtension")
    classification: Optional[str] = None
    d_max: Optional[int] = None
    reason: Optional[str] = None
    solutions: List[SolutionRecord] = Field(default_factory=list)

    @classmethod
    def from_verdict(cls, verdict: Verdict) -> "VerdictRecord":
        return cls(
            status=verdict.status.value,
            classification=verdict.classification.value if verdict.classification else None,
            d_max=verdict.d_max,
            reason=verdict.reason,
            solutions=[SolutionRecord.from_solution(s) for s in verdict.solutions],
        )


class DecompositionRecord(BaseModel):
    case: int
    A: str
    B: str
    R: Optional[str] = None
    a: Optional[str] = None
    b: Optional[str] = None
    p: int
    q: Optional[int] = None
    c: str = Field(description="leading coefficient of A")

    @classmethod
    def from_decomposition(cls, dec: Decomposition) -> "DecompositionRecord":
        return cls(
            case=dec.case,
            A=format_laurent(dec.A),
            B=format_laurent(dec.B),
            R=format_laurent(dec.R) if dec.case == 3 else None,
            a=format_param(dec.a) if dec.case in (1, 2) else None,
            b=format_param(dec.b) if dec.case == 2 else None,
            p=dec.p,
            q=dec.q if dec.case == 3 else None,
            c=format_param(dec.c),
        )


class VarietyRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    signs: str
    d: int
    lam: str = Field(alias="lambda", description="exponent written through the parameters")
    condition_a: List[str] = Field(description="arithmetic condition on the exponents")
    delta_coeffs: List[str] = Field(description="x-coefficients of the obstruction of the auxiliary equation")
    eliminated: Optional[Dict[str, str]] = Field(default=None, description="symbols solved for, with their values")
    empty: bool = Field(description="some equation is a nonzero constant")

    @classmethod
    def from_system(cls, system: SpectralSystem) -> "VarietyRecord":
        return cls(
            signs=str(system.signs),
            d=system.d,
            lam=format_param(system.lam),
            condition_a=[format_param(e) for e in system.condition_a],
            delta_coeffs=[format_param(e) for e in system.delta_coeffs],
            eliminated={name: format_param(v) for name, v in system.eliminated} or None,
            empty=system.is_empty,
        )


class StratumRecord(BaseModel):
    signs: str
    member: bool


class RunReport(BaseModel):
    command: str
    input: Dict[str, str] = Field(description="the inputs as given on the command line")
    classification: Optional[str] = None
    decomposition: Optional[DecompositionRecord] = None
    obstruction: Optional[str] = None
    verdict: Optional[VerdictRecord] = None
    candidates: List[CandidateRecord] = Field(default_factory=list)
    variety: Optional[VarietyRecord] = None
    stratum: Optional[List[StratumRecord]] = None
    timings: Optional[Dict[str, float]] = Field(default=None, description="seconds per phase, only on request")

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True, indent=2, by_alias=True)


def stratum_records(membership: List) -> List[StratumRecord]:
    return [StratumRecord(signs=str(s), member=inside) for s, inside in membership]

