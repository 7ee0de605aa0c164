"""Liouvillian solutions and spectral varieties of y'' = L(x) y with L a Laurent polynomial."""

from kovacic_aim.aim import delta, delta_universal, has_poly_solution_leq, poly_solution_monic
from kovacic_aim.errors import KovacicError
from kovacic_aim.kovacic import Cover, Direct, Signs, classify, dalembert, decompose, enumerate_candidates
from kovacic_aim.laurent import LaurentPolynomial
from kovacic_aim.params import ParamElement, ParamSpace
from kovacic_aim.parser import format_laurent, parse
from kovacic_aim.pipeline import solve, stratum_membership, verify_solution
from kovacic_aim.variety import SpectralSystem, variety_equations

__all__ = [
    "Cover",
    "Direct",
    "KovacicError",
    "LaurentPolynomial",
    "ParamElement",
    "ParamSpace",
    "Signs",
    "SpectralSystem",
    "classify",
    "dalembert",
    "decompose",
    "delta",
    "delta_universal",
    "enumerate_candidates",
    "format_laurent",
    "has_poly_solution_leq",
    "parse",
    "poly_solution_monic",
    "solve",
    "stratum_membership",
    "variety_equations",
    "verify_solution",
]
