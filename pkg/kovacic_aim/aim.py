"""
Asymptotic iteration for P'' = f P' + g P.

Differentiating the equation n times gives P^(n+2) = lam_n P' + s_n P with

    lam_{j+1} = lam_j' + s_j + f lam_j
    s_{j+1}   = s_j' + g lam_j

and the equation has a polynomial solution of degree at most n exactly when
``delta_n = s_n lam_{n-1} - lam_n s_{n-1}`` vanishes (``delta_0 = -g``).
The same recurrence run on the indeterminates alpha, beta gives the
universal obstructions.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from kovacic_aim.config import get_settings
from kovacic_aim.diffpoly import DifferentialPolynomial
from kovacic_aim.errors import CapExceeded, ConcreteModeRequired, KovacicError
from kovacic_aim.laurent import LaurentPolynomial
from kovacic_aim.linalg import solve_linear

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AimSequences:
    lambdas: Tuple[LaurentPolynomial, ...]
    esses: Tuple[LaurentPolynomial, ...]


def aim_sequences(f: LaurentPolynomial, g: LaurentPolynomial, n: int) -> AimSequences:
    if n < 0:
        raise KovacicError(f"sequence length must be nonnegative, got {n}")
    lambdas = [f]
    esses = [g]
    for _ in range(n):
        lam, s = lambdas[-1], esses[-1]
        lambdas.append(lam.derive() + s + f * lam)
        esses.append(s.derive() + g * lam)
    return AimSequences(tuple(lambdas), tuple(esses))


def delta_universal(n: int, cap: Optional[int] = None) -> DifferentialPolynomial:
    """Universal obstruction in alpha, beta; delta_0 is -beta."""
    cap = get_settings().universal_cap if cap is None else cap
    if n < 0:
        raise KovacicError(f"obstruction order must be nonnegative, got {n}")
    if n > cap:
        raise CapExceeded(n, cap)
    alpha = DifferentialPolynomial.alpha()
    beta = DifferentialPolynomial.beta()
    if n == 0:
        return -beta
    lam, s = alpha, beta
    prev_lam = prev_s = None
    for _ in range(n):
        prev_lam, prev_s = lam, s
        lam, s = lam.derive() + s + alpha * lam, s.derive() + beta * lam
    result = s * prev_lam - lam * prev_s
    logger.debug("universal obstruction %d has %d terms", n, result.term_count())
    return result


def delta(f: LaurentPolynomial, g: LaurentPolynomial, n: int, cross_check: bool = False,
          cap: Optional[int] = None) -> LaurentPolynomial:
    """Obstruction of order n evaluated at (f, g)."""
    if n == 0:
        value = -g
    else:
        seq = aim_sequences(f, g, n)
        value = seq.esses[n] * seq.lambdas[n - 1] - seq.lambdas[n] * seq.esses[n - 1]
    if cross_check:
        cap = get_settings().universal_cap if cap is None else cap
        if n <= cap and delta_universal(n, cap).evaluate(f, g) != value:
            raise KovacicError(f"recurrence and universal obstruction of order {n} disagree")
    return value


def delta_determinant(f: LaurentPolynomial, g: LaurentPolynomial, n: int) -> LaurentPolynomial:
    """
    det((d/dx + M)^n M) with M = [[f, 1], [g, 0]].

    The power is [[lam_n, lam_{n-1}], [s_n, s_{n-1}]], so the determinant is
    delta_0 at n = 0 and -delta_n for n >= 1.
    """
    one = LaurentPolynomial.constant(1)
    M = [[f, one], [g, LaurentPolynomial()]]
    N = M
    for _ in range(n):
        N = [
            [N[i][j].derive() + M[i][0] * N[0][j] + M[i][1] * N[1][j] for j in range(2)]
            for i in range(2)
        ]
    return N[0][0] * N[1][1] - N[0][1] * N[1][0]


def residual(f: LaurentPolynomial, g: LaurentPolynomial, P: LaurentPolynomial) -> LaurentPolynomial:
    """P'' - f P' - g P."""
    dP = P.derive()
    return dP.derive() - f * dP - g * P


def _operator_images(f: LaurentPolynomial, g: LaurentPolynomial, top: int) -> List[LaurentPolynomial]:
    return [residual(f, g, LaurentPolynomial.monomial(1, i)) for i in range(top + 1)]


def _coefficient_rows(images: List[LaurentPolynomial]) -> Tuple[List[int], Dict[int, List]]:
    exponents = sorted({k for image in images for k, _ in image.items()})
    return exponents, {k: [image.coeff(k) for image in images] for k in exponents}


def _require_concrete(operation: str, *polys: LaurentPolynomial) -> None:
    if not all(p.is_concrete for p in polys):
        raise ConcreteModeRequired(operation)


def poly_solution_monic(f: LaurentPolynomial, g: LaurentPolynomial, d: int) -> Optional[LaurentPolynomial]:
    """Monic polynomial solution of exact degree d, or None."""
    _require_concrete("the polynomial-solution oracle", f, g)
    images = _operator_images(f, g, d)
    exponents, rows = _coefficient_rows(images)
    if not exponents:
        return LaurentPolynomial.monomial(1, d)
    matrix = [rows[k][:d] for k in exponents]
    rhs = [-rows[k][d] for k in exponents]
    if d == 0:
        return None if any(rhs) else LaurentPolynomial.constant(1)
    solution = solve_linear(matrix, rhs)
    if not solution.consistent:
        logger.debug("no monic solution of degree %d", d)
        return None
    coeffs = {i: c for i, c in enumerate(solution.particular)}
    coeffs[d] = 1
    return LaurentPolynomial(coeffs)


def has_poly_solution_leq(f: LaurentPolynomial, g: LaurentPolynomial, n: int) -> bool:
    """True iff a nonzero polynomial of degree <= n solves the equation."""
    _require_concrete("the polynomial-solution oracle", f, g)
    images = _operator_images(f, g, n)
    exponents, rows = _coefficient_rows(images)
    if not exponents:
        return True
    solution = solve_linear([rows[k] for k in exponents])
    return bool(solution.kernel)
