"""
Kovacic machinery for y'' = L(x) y with L a Laurent polynomial.

The pole order ``r`` at zero and the degree ``m`` at infinity fix the class
(``classify``). Classes C1 and C3 are handled by splitting L into square
parts at zero and infinity plus a residue (``decompose``); each sign choice
then gives one candidate exponent ``lam``, degree ``d`` and Laurent part
``omega`` (``enumerate_candidates``). A candidate is a Liouvillian solution
``x^lam P(x) exp(int omega)`` exactly when its auxiliary equation
``P'' = f P' + g P`` has a monic polynomial solution of degree ``d``.

Pole order two goes through ``dalembert`` (x = w^2), which turns the problem
into one of the same kind in ``w``.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from kovacic_aim.errors import (
    AuxiliaryMismatch,
    ConcreteModeRequired,
    InvalidEquation,
    NonSquareAtZero,
    NonSquareLeading,
    WrongPoleOrder,
)
from kovacic_aim.laurent import LaurentPolynomial
from kovacic_aim.params import Coefficient, ParamElement, is_rational, rational_sqrt

logger = logging.getLogger(__name__)

ZERO = LaurentPolynomial()
X_INV = LaurentPolynomial({-1: 1})
X_INV2 = LaurentPolynomial({-2: 1})


class Classification(str, Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"


def classify(r: int, m: int) -> Classification:
    """Class of the type (r, m); C4 means no Liouvillian solutions at all."""
    if r < 1 or m < 0:
        raise InvalidEquation(f"type ({r}, {m}) needs r >= 1 and m >= 0")
    if (r == 1 or (r >= 4 and r % 2 == 0)) and m % 2 == 0:
        return Classification.C1
    if r == 2:
        return Classification.C2 if m % 2 else Classification.C3
    return Classification.C4


def pole_type(L: LaurentPolynomial) -> Tuple[int, int]:
    """(r, m): pole order at zero and degree."""
    if not L:
        raise InvalidEquation("L is the zero polynomial")
    if L.order >= 0:
        raise InvalidEquation(f"L = {L} has no pole at x = 0; expected a pole of order at least 1")
    if L.degree < 0:
        raise InvalidEquation(f"L = {L} has no polynomial part; expected degree at least 0")
    return -L.order, L.degree


# --- inputs ---------------------------------------------------------------

@dataclass(frozen=True)
class Direct:
    L: LaurentPolynomial

    @property
    def r(self) -> int:
        return pole_type(self.L)[0]

    @property
    def m(self) -> int:
        return pole_type(self.L)[1]

    @property
    def is_concrete(self) -> bool:
        return self.L.is_concrete


@dataclass(frozen=True)
class Cover:
    """A point (R, B, A) of the cover space, with L = R^2 + B + A^2."""

    R: LaurentPolynomial
    B: LaurentPolynomial
    A: LaurentPolynomial

    @property
    def L(self) -> LaurentPolynomial:
        return self.R * self.R + self.B + self.A * self.A

    @property
    def is_concrete(self) -> bool:
        return all(p.is_concrete for p in (self.R, self.B, self.A))


EquationInput = Union[Direct, Cover]


# --- signs / candidates ---------------------------------------------------

@dataclass(frozen=True)
class Signs:
    s_inf: int
    s0: Optional[int] = None

    @classmethod
    def parse(cls, text: str) -> "Signs":
        text = text.strip()
        if len(text) not in (1, 2) or any(ch not in "+-" for ch in text):
            raise InvalidEquation(f"signs '{text}' must be one or two characters from '+' and '-'")
        values = [1 if ch == "+" else -1 for ch in text]
        return cls(values[0], values[1] if len(values) == 2 else None)

    def sort_key(self) -> Tuple[int, int]:
        return -self.s_inf, -(self.s0 or 0)

    def __str__(self) -> str:
        out = "+" if self.s_inf > 0 else "-"
        if self.s0 is not None:
            out += "+" if self.s0 > 0 else "-"
        return out


SINGLE_SIGNS = [Signs(1), Signs(-1)]
DOUBLE_SIGNS = [Signs(1, 1), Signs(1, -1), Signs(-1, 1), Signs(-1, -1)]


@dataclass(frozen=True)
class Candidate:
    """One solution shape x^lam P(x) exp(int omega) with deg P = d."""

    signs: Signs
    d: int
    lam: Coefficient
    omega: LaurentPolynomial

    @property
    def s_inf(self) -> int:
        return self.signs.s_inf

    @property
    def s0(self) -> Optional[int]:
        return self.signs.s0


@dataclass(frozen=True)
class CandidateReport:
    signs: Signs
    d: Optional[Fraction]
    lam: Optional[Coefficient]
    omega: Optional[LaurentPolynomial]
    reason: Optional[str] = None

    @property
    def admissible(self) -> bool:
        return self.reason is None

    def candidate(self) -> Candidate:
        if not self.admissible:
            raise InvalidEquation(f"candidate {self.signs} is inadmissible: {self.reason}")
        return Candidate(self.signs, int(self.d), self.lam, self.omega)


# --- decompositions -------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """
    case 1: L = a/x + B + A^2
    case 2: L = b/x^2 + a/x + B + A^2
    case 3: L = R^2 + B + A^2
    """

    case: int
    L: LaurentPolynomial
    A: LaurentPolynomial
    B: LaurentPolynomial
    p: int
    c: Coefficient
    a: Coefficient = Fraction(0)
    b: Coefficient = Fraction(0)
    R: LaurentPolynomial = field(default_factory=LaurentPolynomial)
    q: int = 0

    @property
    def b_top(self) -> Coefficient:
        """Coefficient of x^(p-1) in L - A^2."""
        return (self.L - self.A * self.A).coeff(self.p - 1)

    @property
    def b_below(self) -> Coefficient:
        """Coefficient of x^-(q+1) in B (case 3)."""
        return self.B.coeff(-(self.q + 1))

    @property
    def r_lead(self) -> Coefficient:
        return self.R.coeff(-self.q)

    @property
    def is_concrete(self) -> bool:
        return all(p.is_concrete for p in (self.L, self.A, self.B, self.R)) and is_rational(self.c)

    def reassemble(self) -> LaurentPolynomial:
        if self.case == 1:
            return self.B + self.A * self.A + X_INV.scale(self.a)
        if self.case == 2:
            return self.B + self.A * self.A + X_INV.scale(self.a) + X_INV2.scale(self.b)
        return self.R * self.R + self.B + self.A * self.A


def _divide(value, by: Coefficient):
    if isinstance(by, ParamElement):
        return value * by.inverse()
    return value * (1 / Fraction(by))


def _sqrt(value: Coefficient) -> Optional[Coefficient]:
    if isinstance(value, ParamElement):
        return value.sqrt()
    return rational_sqrt(value)


def decompose_inf(L: LaurentPolynomial, p: int) -> Tuple[LaurentPolynomial, LaurentPolynomial]:
    """Polynomial A of degree p matching L at orders 2p .. p; returns (A, L - A^2)."""
    if L.degree != 2 * p:
        raise InvalidEquation(f"degree of L is {L.degree}, expected {2 * p}")
    c = _sqrt(L.leading)
    if c is None or not c:
        raise NonSquareLeading(f"leading coefficient {L.leading} is not the square of a rational")
    a = {p: c}
    for k in range(1, p + 1):
        s = Fraction(0)
        for i in range(p - k + 1, p):
            s = s + a[i] * a[2 * p - k - i]
        a[p - k] = _divide(L.coeff(2 * p - k) - s, 2 * c)
    A = LaurentPolynomial(a)
    return A, L - A * A


def decompose_zero(L: LaurentPolynomial, q: int) -> Tuple[LaurentPolynomial, LaurentPolynomial]:
    """R supported on x^-q .. x^-2 with positive leading part; returns (R, L - R^2)."""
    if q < 2 or L.order != -2 * q:
        raise InvalidEquation(f"order of L is {L.order}, expected {-2 * q} with q >= 2")
    lead = L.coeff(-2 * q)
    r = _sqrt(lead)
    if r is None or not r:
        raise NonSquareAtZero(
            f"coefficient {lead} of x^{-2 * q} is not the square of a rational; "
            f"pass the equation as a cover point (R;B;A) instead"
        )
    coeffs = {-q: r}
    for k in range(1, q - 1):
        s = Fraction(0)
        for i in range(-q + 1, -q + k):
            s = s + coeffs[i] * coeffs[-2 * q + k - i]
        coeffs[-q + k] = _divide(L.coeff(-2 * q + k) - s, 2 * r)
    R = LaurentPolynomial(coeffs)
    return R, L - R * R


def decompose_dihedral(L: LaurentPolynomial) -> Decomposition:
    """Case 2 split for order >= -2; b = 0 when there is no x^-2 term."""
    if L.order is None or L.order < -2:
        raise WrongPoleOrder(f"expected a pole of order at most 2, got L = {L}")
    if L.degree % 2:
        raise InvalidEquation(f"degree {L.degree} is odd; pass the equation through the D'Alembert transform")
    p = L.degree // 2
    A, rest = decompose_inf(L, p)
    return Decomposition(case=2, L=L, A=A, B=rest.restrict(0, None), p=p, c=A.leading,
                         a=rest.coeff(-1), b=rest.coeff(-2), q=1)


def decompose(eq: EquationInput) -> Decomposition:
    if isinstance(eq, Cover):
        return _decompose_cover(eq)
    L = eq.L
    r, m = pole_type(L)
    cls = classify(r, m)
    if cls is Classification.C4:
        raise InvalidEquation(f"type ({r}, {m}) is in class C4: no Liouvillian solutions")
    if m % 2:
        raise InvalidEquation(f"degree {m} is odd; pass the equation through the D'Alembert transform")
    p = m // 2
    if r == 1:
        A, rest = decompose_inf(L, p)
        dec = Decomposition(case=1, L=L, A=A, B=rest.restrict(0, None), p=p, c=A.leading, a=rest.coeff(-1))
    elif r == 2:
        dec = decompose_dihedral(L)
    else:
        q = r // 2
        R, _ = decompose_zero(L, q)
        A, _ = decompose_inf(L, p)
        dec = Decomposition(case=3, L=L, A=A, B=L - R * R - A * A, p=p, c=A.leading, R=R, q=q)
    logger.debug("case %d decomposition of %s: A=%s B=%s", dec.case, L, dec.A, dec.B)
    return dec


def _decompose_cover(eq: Cover) -> Decomposition:
    R, B, A = eq.R, eq.B, eq.A
    if not R or R.degree > -2 or R.order > -2:
        raise InvalidEquation(f"R = {R} must be supported on x^-q .. x^-2 with q >= 2")
    q = -R.order
    if not A or not A.is_polynomial:
        raise InvalidEquation(f"A = {A} must be a nonzero polynomial")
    p = A.degree
    if B and (B.order < -(q + 1) or B.degree > p - 1):
        raise InvalidEquation(f"B = {B} must be supported on x^{-(q + 1)} .. x^{p - 1}")
    return Decomposition(case=3, L=eq.L, A=A, B=B, p=p, c=A.leading, R=R, q=q)


# --- candidates -----------------------------------------------------------

def _admissibility(d: Fraction, d_max: int) -> Optional[str]:
    if d.denominator != 1:
        return f"d = {d} is not an integer"
    if d < 0:
        return f"d = {d} is negative"
    if d > d_max:
        return f"d = {d} exceeds d_max = {d_max}"
    return None


def enumerate_candidates(dec: Decomposition, d_max: int) -> List[CandidateReport]:
    """Every sign choice with its d, lam, omega and, when inadmissible, the reason."""
    if not dec.is_concrete:
        raise ConcreteModeRequired("candidate enumeration")
    reports: List[CandidateReport] = []
    b_top = Fraction(dec.b_top) / Fraction(dec.c)
    p = dec.p
    if dec.case == 1:
        for signs in SINGLE_SIGNS:
            d = (signs.s_inf * b_top - p - 2) / 2
            reports.append(CandidateReport(signs, d, Fraction(1), dec.A.scale(signs.s_inf), _admissibility(d, d_max)))
    elif dec.case == 2:
        root = rational_sqrt(1 + 4 * Fraction(dec.b))
        for signs in DOUBLE_SIGNS:
            if root is None:
                reports.append(CandidateReport(signs, None, None, None,
                                               f"1 + 4b = {1 + 4 * dec.b} is not a rational square: requires quadratic extension"))
                continue
            lam = (1 + signs.s0 * root) / 2
            d = (signs.s_inf * b_top - signs.s0 * root - p - 1) / 2
            reports.append(CandidateReport(signs, d, lam, dec.A.scale(signs.s_inf), _admissibility(d, d_max)))
    else:
        shift = Fraction(dec.b_below) / (2 * Fraction(dec.r_lead))
        for signs in DOUBLE_SIGNS:
            lam = signs.s0 * shift + Fraction(dec.q, 2)
            d = (signs.s_inf * b_top - p - dec.q) / 2 - signs.s0 * shift
            omega = dec.A.scale(signs.s_inf) + dec.R.scale(signs.s0)
            reports.append(CandidateReport(signs, d, lam, omega, _admissibility(d, d_max)))
    for report in reports:
        logger.debug("candidate %s: d=%s lam=%s %s", report.signs, report.d, report.lam, report.reason or "admissible")
    return reports


def candidates(dec: Decomposition, d_max: int) -> List[Candidate]:
    return [r.candidate() for r in enumerate_candidates(dec, d_max) if r.admissible]


def symbolic_candidate(dec: Decomposition, d: int, signs: Signs) -> Candidate:
    """Candidate with lam written through d, valid for parametric decompositions."""
    b_top = _divide(dec.b_top, dec.c)
    if dec.case == 1:
        return Candidate(signs, d, Fraction(1), dec.A.scale(signs.s_inf))
    if signs.s0 is None:
        raise InvalidEquation(f"case {dec.case} needs two signs, got '{signs}'")
    if dec.case == 2:
        lam = (signs.s_inf * b_top - dec.p - 2 * d) * Fraction(1, 2)
        return Candidate(signs, d, lam, dec.A.scale(signs.s_inf))
    lam = (signs.s_inf * b_top - dec.p) * Fraction(1, 2) - d
    return Candidate(signs, d, lam, dec.A.scale(signs.s_inf) + dec.R.scale(signs.s0))


# --- auxiliary equation -----------------------------------------------------

@dataclass(frozen=True)
class AuxiliaryEquation:
    """P'' = f P' + g P."""

    f: LaurentPolynomial
    g: LaurentPolynomial


def _template_coefficient(dec: Decomposition, cand: Candidate) -> LaurentPolynomial:
    """Coefficient of P in P'' + 2 phi P' + (...) P = 0, written per case."""
    s = cand.s_inf
    lam = cand.lam
    if dec.case == 1:
        return dec.A.derive().scale(s) - dec.B + (dec.A.scale(2 * s) - dec.a).shift(-1)
    if dec.case == 2:
        return dec.A.derive().scale(s) - dec.B + (dec.A.scale(2 * s) * lam - dec.a).shift(-1)
    omega = cand.omega
    return (omega.derive() - dec.B + (dec.A * dec.R).scale(2 * s * cand.s0)
            + omega.scale(2 * lam).shift(-1) + X_INV2.scale(lam * (lam - 1)))


def aux_equation(dec: Decomposition, cand: Candidate) -> AuxiliaryEquation:
    """
    f = -2 phi and g = -(phi' + phi^2 - L) with phi = omega + lam/x.

    The case template is built alongside and must agree. In case 2 with a
    parametric exponent the two may differ by ``-(lam^2 - lam - b)/x^2``,
    which vanishes on the radical relation; the template is returned then.
    """
    phi = cand.omega + X_INV.scale(cand.lam)
    f = phi.scale(-2)
    generic = -(phi.derive() + phi * phi - dec.L)
    template = -_template_coefficient(dec, cand)
    diff = generic - template
    if diff:
        radical = cand.lam * cand.lam - cand.lam - dec.b
        allowed = dec.case == 2 and not is_rational(radical) and diff == X_INV2.scale(-radical)
        if not allowed:
            raise AuxiliaryMismatch(f"auxiliary equation mismatch for {cand.signs}, d={cand.d}: {diff}")
    return AuxiliaryEquation(f=f, g=template)


# --- D'Alembert -------------------------------------------------------------

def dalembert(L: LaurentPolynomial) -> LaurentPolynomial:
    """3/(4w^2) + 4 w^2 L(w^2), the equation for ytilde(w) = w^(-1/2) y(w^2)."""
    if L.order != -2:
        raise WrongPoleOrder(f"the D'Alembert transform needs a pole of order 2, got order {-(L.order or 0)}")
    return LaurentPolynomial({-2: Fraction(3, 4)}) + L.compose_square().shift(2).scale(4)
