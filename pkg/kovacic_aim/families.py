"""
Named parametric families used as a worked corpus.

Each family is a Laurent polynomial written in the parser's grammar together
with its parameter declaration, so it can be emitted as a spectral system or
specialized to a concrete equation.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Mapping

from kovacic_aim.errors import KovacicError, NonSquareLeading
from kovacic_aim.kovacic import Direct
from kovacic_aim.laurent import LaurentPolynomial
from kovacic_aim.params import Number, ParamElement, ParamSpace, rational_sqrt
from kovacic_aim.parser import parse


@dataclass(frozen=True)
class Family:
    name: str
    expression: str
    params: ParamSpace
    description: str = ""

    @property
    def L(self) -> LaurentPolynomial:
        return parse(self.expression, self.params)

    @property
    def equation(self) -> Direct:
        return Direct(self.L)

    def specialize(self, point: Mapping[str, Number]) -> Direct:
        missing = [n for n in self.params.names if n not in point]
        if missing:
            raise KovacicError(f"family '{self.name}' needs values for {', '.join(missing)}")
        return Direct(self.L.specialize(point))


def biconfluent_heun() -> Family:
    return Family(
        "biconfluent",
        "(x + beta/2)^2 - gamma + delta/(2*x) + (alpha^2 - 1)/(4*x^2)",
        ParamSpace.parse_declaration("alpha,beta,gamma,delta"),
        "reduced biconfluent Heun equation",
    )


def solo_beta() -> Family:
    return Family("solo_beta", "x^2 + beta/x", ParamSpace.parse_declaration("beta"),
                  "one-parameter family x^2 + beta/x")


def hill() -> Family:
    return Family(
        "hill",
        "(x - k3/2)^2 - (k2 + k3^2/4) - k1/x - (1/4 + k0)/x^2",
        ParamSpace.parse_declaration("k0,k1,k2,k3"),
        "quartic Hill equation after x = e^z, y = e^(z/2) f",
    )


def inverse_sqrt_transformed() -> Family:
    return Family("inverse_sqrt", "x^2 + J*x + 3/(4*x^2)", ParamSpace.parse_declaration("J"),
                  "k1/sqrt(x) + k0 potential in the variable (4 k0)^(1/4) sqrt(x)")


def doubly_confluent_transformed() -> Family:
    return Family(
        "doubly_confluent",
        "x^2 - 4*beta/at - (4*delta - 3/4)/x^2 - 4*at*gamma/x^4 + at^6/x^6",
        ParamSpace.parse_declaration("at:inv,beta,gamma,delta"),
        "reduced doubly confluent Heun equation in z = (sqrt(alpha)/x)^(1/2), at = sqrt(alpha)",
    )


def doubly_confluent_reduced() -> Family:
    return Family(
        "doubly_confluent_reduced",
        "alpha^2/4 - gamma/x - delta/x^2 - beta/x^3 + alpha^2/(4*x^4)",
        ParamSpace.parse_declaration("alpha,beta,gamma,delta"),
        "reduced doubly confluent Heun equation",
    )


def doubly_confluent_point(alpha: Number, beta: Number, gamma: Number, delta: Number) -> Direct:
    """Concrete transformed equation for a reduced-form point; alpha must be a rational square."""
    at = rational_sqrt(alpha)
    if not at:
        raise NonSquareLeading(f"alpha = {alpha} is not the square of a nonzero rational")
    return doubly_confluent_transformed().specialize({"at": at, "beta": beta, "gamma": gamma, "delta": delta})


def perturbed_canonical(n: int, m: int) -> Family:
    """x^n + mu x^(n-1) + m(m+1)/x^2 with mu free."""
    if n < 1:
        raise KovacicError(f"degree n must be at least 1, got {n}")
    L = LaurentPolynomial({n: 1, -2: m * (m + 1)}) + LaurentPolynomial({n - 1: ParamElement.symbol("mu")})
    return Family(f"canonical_{n}_{m}", str(L), ParamSpace.parse_declaration("mu"),
                  "perturbed canonical equation")


def case1_generic() -> Family:
    return Family("case1_generic", "x^2 + 2*a0*x + a0^2 + b0 + a/x", ParamSpace.parse_declaration("a0,b0,a"),
                  "simple pole, A = x + a0, free residue b0")


FAMILIES: Dict[str, Callable[[], Family]] = {
    "biconfluent": biconfluent_heun,
    "solo_beta": solo_beta,
    "hill": hill,
    "inverse_sqrt": inverse_sqrt_transformed,
    "doubly_confluent": doubly_confluent_transformed,
    "doubly_confluent_reduced": doubly_confluent_reduced,
    "case1_generic": case1_generic,
}


def get_family(name: str) -> Family:
    if name.startswith("canonical_"):
        try:
            _, n, m = name.split("_")
            n, m = int(n), int(m)
        except ValueError as exc:
            raise KovacicError(f"canonical families are named canonical_<n>_<m>, got '{name}'") from exc
        return perturbed_canonical(n, m)
    if name not in FAMILIES:
        raise KovacicError(f"unknown family '{name}'; known: {', '.join(sorted(FAMILIES))}, canonical_<n>_<m>")
    return FAMILIES[name]()
