"""
Integrability decisions and Liouvillian solutions for concrete equations.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from kovacic_aim.aim import poly_solution_monic
from kovacic_aim.config import get_settings
from kovacic_aim.errors import AuxiliaryMismatch, ConcreteModeRequired, NeedsExtensionError
from kovacic_aim.kovacic import (
    DOUBLE_SIGNS,
    SINGLE_SIGNS,
    Candidate,
    CandidateReport,
    Classification,
    Cover,
    Decomposition,
    Direct,
    EquationInput,
    Signs,
    aux_equation,
    classify,
    dalembert,
    decompose,
    decompose_dihedral,
    enumerate_candidates,
    pole_type,
)
from kovacic_aim.laurent import LaurentPolynomial
from kovacic_aim.parser import format_laurent

logger = logging.getLogger(__name__)

X_INV = LaurentPolynomial({-1: 1})


class Route(str, Enum):
    DIRECT = "direct"
    DALEMBERT = "dalembert"


class VerdictStatus(str, Enum):
    INTEGRABLE = "Integrable"
    NOT_INTEGRABLE_UP_TO = "NotIntegrableUpTo"
    EMPTY_CLASS = "EmptyClass"
    NEEDS_EXTENSION = "NeedsExtension"


PULLBACK_NOTE = "y(x) = x^(1/4) * ytilde(sqrt(x))"


@dataclass(frozen=True)
class LiouvillianSolution:
    """y = v^lam P(v) exp(int omega) in the variable v (x, or w = sqrt(x))."""

    variable: str
    lam: Fraction
    P: LaurentPolynomial
    omega: LaurentPolynomial
    antiderivative: LaurentPolynomial
    signs: Signs
    d: int
    route: Route
    pullback_note: Optional[str] = None

    @property
    def x_exponent(self) -> Fraction:
        """Power of x in front of the solution once written in x."""
        if self.variable == "x":
            return self.lam
        return Fraction(1, 4) + self.lam / 2

    def normalized(self) -> "LiouvillianSolution":
        """Move the power of the variable dividing P into lam."""
        k = self.P.order or 0
        if not k:
            return self
        return replace(self, lam=self.lam + k, P=self.P.shift(-k), d=self.d - k)

    def key(self):
        """Identity once written in x; a w solution with even P and exponent is an x solution."""
        if self.variable == "w" and _is_even(self.P) and _is_even(self.antiderivative):
            return "x", self.x_exponent, _halve(self.P), _halve(self.antiderivative)
        return self.variable, self.lam, self.P, self.antiderivative

    def describe(self) -> str:
        v = self.variable
        name = "y" if v == "x" else "ytilde"
        parts = []
        if self.lam:
            parts.append(f"{v}^({self.lam})")
        if self.P != 1:
            parts.append(f"({_in_variable(self.P, v)})")
        if self.antiderivative:
            parts.append(f"exp({_in_variable(self.antiderivative, v)})")
        text = f"{name}({v}) = " + (" * ".join(parts) or "1")
        if self.pullback_note:
            text += f"; {self.pullback_note}"
        return text


def _is_even(p: LaurentPolynomial) -> bool:
    return all(k % 2 == 0 for k, _ in p.items())


def _halve(p: LaurentPolynomial) -> LaurentPolynomial:
    return LaurentPolynomial({k // 2: c for k, c in p.items()})


def _in_variable(p: LaurentPolynomial, variable: str) -> str:
    text = format_laurent(p)
    return text if variable == "x" else text.replace("x", variable)


@dataclass(frozen=True)
class CandidateOutcome:
    route: Route
    report: CandidateReport
    outcome: str
    P: Optional[LaurentPolynomial] = None

    def sort_key(self):
        d = self.report.d if self.report.d is not None else Fraction(-1)
        return self.route.value, self.report.signs.sort_key(), d


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    classification: Optional[Classification] = None
    solutions: Tuple[LiouvillianSolution, ...] = ()
    d_max: Optional[int] = None
    reason: Optional[str] = None
    candidates_examined: Tuple[CandidateOutcome, ...] = ()

    @property
    def integrable(self) -> bool:
        return self.status is VerdictStatus.INTEGRABLE


def _routes(eq: EquationInput) -> Tuple[Optional[Classification], List[Route]]:
    if isinstance(eq, Cover):
        return None, [Route.DIRECT]
    r, m = pole_type(eq.L)
    cls = classify(r, m)
    if cls is Classification.C4:
        return cls, []
    if cls is Classification.C2:
        return cls, [Route.DALEMBERT]
    if cls is Classification.C3:
        return cls, [Route.DIRECT, Route.DALEMBERT]
    return cls, [Route.DIRECT]


def _route_decomposition(eq: EquationInput, route: Route) -> Decomposition:
    if route is Route.DIRECT:
        return decompose(eq)
    return decompose_dihedral(dalembert(eq.L))


def _check_candidate(dec: Decomposition, cand: Candidate) -> Optional[LaurentPolynomial]:
    aux = aux_equation(dec, cand)
    return poly_solution_monic(aux.f, aux.g, cand.d)


def _check_all(dec: Decomposition, cands: List[Candidate], workers: int) -> List[Optional[LaurentPolynomial]]:
    if workers <= 1 or len(cands) <= 1:
        return [_check_candidate(dec, c) for c in cands]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_check_candidate, [dec] * len(cands), cands))


def _solution(route: Route, cand: Candidate, P: LaurentPolynomial) -> LiouvillianSolution:
    w_route = route is Route.DALEMBERT
    return LiouvillianSolution(
        variable="w" if w_route else "x",
        lam=Fraction(cand.lam),
        P=P,
        omega=cand.omega,
        antiderivative=cand.omega.antiderivative(),
        signs=cand.signs,
        d=cand.d,
        route=route,
        pullback_note=PULLBACK_NOTE if w_route else None,
    ).normalized()


def solve(eq: EquationInput, d_max: Optional[int] = None, workers: Optional[int] = None) -> Verdict:
    """Decide integrability up to degree d_max and collect verified solutions."""
    settings = get_settings()
    d_max = settings.d_max if d_max is None else d_max
    workers = settings.workers if workers is None else workers
    if not eq.is_concrete:
        raise ConcreteModeRequired("solve")

    cls, routes = _routes(eq)
    if not routes:
        logger.info("class C4: empty spectral set")
        return Verdict(VerdictStatus.EMPTY_CLASS, classification=cls,
                       reason="class C4 has no Liouvillian solutions")

    examined: List[CandidateOutcome] = []
    found: Dict[tuple, LiouvillianSolution] = {}
    extension: Optional[str] = None
    for route in routes:
        try:
            dec = _route_decomposition(eq, route)
        except NeedsExtensionError as exc:
            logger.info("%s route needs a field extension: %s", route.value, exc)
            extension = str(exc)
            continue
        reports = enumerate_candidates(dec, d_max)
        admissible = [r for r in reports if r.admissible]
        results = _check_all(dec, [r.candidate() for r in admissible], workers)
        by_signs = {r.signs: P for r, P in zip(admissible, results)}
        for report in reports:
            if not report.admissible:
                examined.append(CandidateOutcome(route, report, f"inadmissible: {report.reason}"))
                continue
            P = by_signs[report.signs]
            if P is None:
                examined.append(CandidateOutcome(route, report, "no polynomial solution"))
                continue
            examined.append(CandidateOutcome(route, report, "solution", P))
            sol = _solution(route, report.candidate(), P)
            if not verify_solution(eq, sol):
                raise AuxiliaryMismatch(f"solution {sol.describe()} failed verification")
            found.setdefault(sol.key(), sol)

    examined.sort(key=CandidateOutcome.sort_key)
    solutions = tuple(sorted(found.values(), key=lambda s: (s.route.value, s.signs.sort_key(), s.d)))
    if solutions:
        status, reason = VerdictStatus.INTEGRABLE, None
    elif extension and not examined:
        status, reason = VerdictStatus.NEEDS_EXTENSION, extension
    else:
        status, reason = VerdictStatus.NOT_INTEGRABLE_UP_TO, None
    logger.info("verdict %s with %d solution(s)", status.value, len(solutions))
    return Verdict(status, classification=cls, solutions=solutions, d_max=d_max,
                   reason=reason, candidates_examined=tuple(examined))


def list_candidates(eq: EquationInput, d_max: Optional[int] = None) -> Tuple[Optional[Classification], List[CandidateOutcome]]:
    """Candidates of every route without running the oracle."""
    d_max = get_settings().d_max if d_max is None else d_max
    if not eq.is_concrete:
        raise ConcreteModeRequired("candidate enumeration")
    cls, routes = _routes(eq)
    listed: List[CandidateOutcome] = []
    failure: Optional[NeedsExtensionError] = None
    for route in routes:
        try:
            dec = _route_decomposition(eq, route)
        except NeedsExtensionError as exc:
            failure = exc
            continue
        for report in enumerate_candidates(dec, d_max):
            outcome = "admissible" if report.admissible else f"inadmissible: {report.reason}"
            listed.append(CandidateOutcome(route, report, outcome))
    if failure is not None and not listed:
        raise failure
    return cls, sorted(listed, key=CandidateOutcome.sort_key)


def _auxiliary_residual(L: LaurentPolynomial, sol: LiouvillianSolution) -> LaurentPolynomial:
    phi = sol.omega + X_INV.scale(sol.lam)
    dP = sol.P.derive()
    return dP.derive() + (phi * dP).scale(2) + (phi.derive() + phi * phi - L) * sol.P


def verify_pullback(L: LaurentPolynomial, sol: LiouvillianSolution) -> bool:
    """
    The log-derivative u of x^(1/4) ytilde(sqrt(x)) solves u' + u^2 = L.

    Checked in w = sqrt(x) as (U'P - UP') + 2w U^2 - 2w L(w^2) P^2 = 0,
    where U = u P = P/(4w^2) + (psi P + P')/(2w) and psi = lam/w + omega.
    """
    P = sol.P
    dP = P.derive()
    psi = sol.omega + X_INV.scale(sol.lam)
    U = P.shift(-2).scale(Fraction(1, 4)) + (psi * P + dP).shift(-1).scale(Fraction(1, 2))
    identity = U.derive() * P - U * dP + (U * U).shift(1).scale(2) - (L.compose_square() * P * P).shift(1).scale(2)
    return not identity


def verify_solution(eq: EquationInput, sol: LiouvillianSolution) -> bool:
    """Exact check of P'' + 2 phi P' + (phi' + phi^2 - L) P = 0 in the solution's variable."""
    L = eq.L
    if sol.variable == "x":
        return not _auxiliary_residual(L, sol)
    return not _auxiliary_residual(dalembert(L), sol) and verify_pullback(L, sol)


def stratum_membership(eq: EquationInput, d: int, route: Optional[Route] = None) -> List[Tuple[Signs, bool]]:
    """For each sign choice: does the degree-d candidate exist and have a monic solution?"""
    if not eq.is_concrete:
        raise ConcreteModeRequired("stratum membership")
    if isinstance(eq, Direct):
        r, m = pole_type(eq.L)
        if classify(r, m) is Classification.C4:
            return [(s, False) for s in DOUBLE_SIGNS]
        if route is None:
            route = Route.DALEMBERT if r == 2 and m % 2 else Route.DIRECT
    route = route or Route.DIRECT
    dec = _route_decomposition(eq, route)
    reports = {r.signs: r for r in enumerate_candidates(dec, d)}
    signs_list = SINGLE_SIGNS if dec.case == 1 else DOUBLE_SIGNS
    membership = []
    for signs in signs_list:
        report = reports[signs]
        inside = report.admissible and report.d == d and _check_candidate(dec, report.candidate()) is not None
        membership.append((signs, inside))
    logger.debug("stratum d=%d via %s: %s", d, route.value, [(str(s), b) for s, b in membership])
    return membership
