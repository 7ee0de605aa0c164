"""
Spectral varieties of parametric families.

For a sign choice and a degree d, the equations cutting out the stratum are
the arithmetic condition on the exponents (``condition_a``) together with
the x-coefficients of the obstruction of order d of the auxiliary equation
(``delta_coeffs``). Every equation is a parameter polynomial with cleared
denominators, normalized to integer coprime coefficients.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from kovacic_aim.aim import delta
from kovacic_aim.errors import KovacicError, NonPolynomialObstruction
from kovacic_aim.kovacic import (
    Cover,
    Decomposition,
    EquationInput,
    Signs,
    aux_equation,
    dalembert,
    decompose,
    decompose_dihedral,
    pole_type,
    symbolic_candidate,
)
from kovacic_aim.params import Coefficient, Number, ParamElement, rational_sqrt

logger = logging.getLogger(__name__)


def _as_element(value: Coefficient) -> ParamElement:
    return value if isinstance(value, ParamElement) else ParamElement.constant(value)


def _polynomial_equation(value: Coefficient) -> ParamElement:
    eq = _as_element(value).cleared().normalized()
    for mono, _ in eq.items():
        if any(e < 0 for _, e in mono):
            raise NonPolynomialObstruction(f"could not clear the denominators of {eq}")
    return eq


def _clean(equations: Sequence[ParamElement]) -> Tuple[ParamElement, ...]:
    out: List[ParamElement] = []
    for eq in equations:
        if eq and eq not in out:
            out.append(eq)
    return tuple(out)


@dataclass(frozen=True)
class SpectralSystem:
    signs: Signs
    d: int
    condition_a: Tuple[ParamElement, ...]
    delta_coeffs: Tuple[ParamElement, ...]
    lam: Coefficient
    eliminated: Tuple[Tuple[str, ParamElement], ...] = ()

    @property
    def equations(self) -> Tuple[ParamElement, ...]:
        return self.condition_a + self.delta_coeffs

    @property
    def is_empty(self) -> bool:
        """Some equation is a nonzero constant."""
        return any(eq.is_constant for eq in self.equations)

    def evaluate(self, point: Mapping[str, Number]) -> List[Fraction]:
        """Residuals at a point; eliminated symbols are implied, and checked when given."""
        point = dict(point)
        values: List[Fraction] = []
        # later eliminations never mention earlier symbols
        for name, value in reversed(self.eliminated):
            implied = value.specialize(point)
            if name in point:
                values.append(Fraction(point[name]) - implied)
            point[name] = implied
        return values + [eq.specialize(point) for eq in self.equations]

    def satisfied_by(self, point: Mapping[str, Number]) -> bool:
        return not any(self.evaluate(point))

    def eliminate(self, symbol: str) -> "SpectralSystem":
        """Solve an equation linear in ``symbol`` (rational coefficient) and substitute it everywhere."""
        for pivot in self.equations:
            value = _linear_solution(pivot, symbol)
            if value is None:
                continue

            def substitute(equations):
                return _clean([_polynomial_equation(eq.substitute(symbol, value)) for eq in equations if eq != pivot])

            lam = self.lam.substitute(symbol, value) if isinstance(self.lam, ParamElement) else self.lam
            logger.debug("eliminated %s = %s", symbol, value)
            return replace(
                self,
                condition_a=substitute(self.condition_a),
                delta_coeffs=substitute(self.delta_coeffs),
                lam=lam,
                eliminated=self.eliminated + ((symbol, value),),
            )
        raise KovacicError(f"no equation of the system is linear in '{symbol}' with a rational coefficient")


def _linear_solution(eq: ParamElement, symbol: str) -> Optional[ParamElement]:
    coefficient = None
    rest = {}
    for mono, c in eq.items():
        names = dict(mono)
        if symbol not in names:
            rest[mono] = c
        elif mono == ((symbol, 1),):
            coefficient = c
        else:
            return None
    if coefficient is None:
        return None
    return -ParamElement(rest, invertible=eq.invertible) * (1 / coefficient)


def _family_decomposition(family: EquationInput) -> Decomposition:
    if isinstance(family, Cover):
        return decompose(family)
    r, m = pole_type(family.L)
    if r == 2:
        L = dalembert(family.L) if m % 2 else family.L
        return decompose_dihedral(L)
    return decompose(family)


def _divide(value: Coefficient, by: Coefficient):
    return value * (by.inverse() if isinstance(by, ParamElement) else 1 / Fraction(by))


def _condition_a(dec: Decomposition, d: int, signs: Signs, lam: Coefficient) -> List[Coefficient]:
    s = signs.s_inf
    if dec.case == 1:
        return [s * dec.b_top - (2 * d + dec.p + 2) * dec.c]
    if dec.case == 2:
        radicand = 1 + 4 * dec.b
        root = radicand.sqrt() if isinstance(radicand, ParamElement) else rational_sqrt(radicand)
        if root is not None:
            return [2 * lam - 1 - signs.s0 * root]
        return [(2 * lam - 1) * (2 * lam - 1) - radicand]
    relation = (s * _divide(dec.b_top, dec.c) - dec.p - dec.q - 2 * d
                - signs.s0 * _divide(dec.b_below, dec.r_lead))
    return [relation]


def variety_equations(family: EquationInput, d: int, signs: Signs) -> SpectralSystem:
    """Equations of the degree-d stratum for one sign choice."""
    dec = _family_decomposition(family)
    cand = symbolic_candidate(dec, d, signs)
    condition = _clean([_polynomial_equation(c) for c in _condition_a(dec, d, signs, cand.lam)])
    if any(eq.is_constant for eq in condition):
        logger.info("stratum d=%d signs %s: arithmetic condition is a nonzero constant", d, signs)
        return SpectralSystem(signs=signs, d=d, condition_a=condition, delta_coeffs=(), lam=cand.lam)
    aux = aux_equation(dec, cand)
    obstruction = delta(aux.f, aux.g, d)
    coeffs = _clean([_polynomial_equation(c) for _, c in sorted(obstruction.items(), reverse=True)])
    logger.info("stratum d=%d signs %s: %d arithmetic + %d obstruction equations",
                d, signs, len(condition), len(coeffs))
    return SpectralSystem(signs=signs, d=d, condition_a=condition, delta_coeffs=coeffs, lam=cand.lam)
