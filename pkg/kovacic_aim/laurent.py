"""
Laurent polynomials in one variable with rational or parametric coefficients.
"""

from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterator, Mapping, Optional, Tuple, Union

from kovacic_aim.errors import KovacicError
from kovacic_aim.params import Coefficient, Number, ParamElement, canonical_coefficient, is_rational


class LaurentPolynomial:
    """Finite map exponent -> coefficient; the zero polynomial has no terms."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, Union[Number, ParamElement]]] = None):
        clean: Dict[int, Coefficient] = {}
        for k, c in (terms or {}).items():
            c = canonical_coefficient(c)
            if c:
                clean[int(k)] = c
        self._terms = clean

    @classmethod
    def constant(cls, value) -> "LaurentPolynomial":
        return cls({0: value})

    @classmethod
    def monomial(cls, value, k: int) -> "LaurentPolynomial":
        return cls({k: value})

    @classmethod
    def x(cls) -> "LaurentPolynomial":
        return cls({1: 1})

    # --- inspection -------------------------------------------------------

    def items(self) -> Iterator[Tuple[int, Coefficient]]:
        """Terms by ascending exponent."""
        for k in sorted(self._terms):
            yield k, self._terms[k]

    def coefficients(self) -> Dict[int, Coefficient]:
        return dict(self._terms)

    def coeff(self, k: int) -> Coefficient:
        return self._terms.get(k, Fraction(0))

    @property
    def order(self) -> Optional[int]:
        return min(self._terms) if self._terms else None

    @property
    def degree(self) -> Optional[int]:
        return max(self._terms) if self._terms else None

    @property
    def leading(self) -> Coefficient:
        return self._terms[self.degree] if self._terms else Fraction(0)

    @property
    def is_concrete(self) -> bool:
        return all(is_rational(c) for c in self._terms.values())

    @property
    def is_polynomial(self) -> bool:
        return not self._terms or min(self._terms) >= 0

    @property
    def symbols(self) -> FrozenSet[str]:
        names: FrozenSet[str] = frozenset()
        for c in self._terms.values():
            if isinstance(c, ParamElement):
                names |= c.symbols
        return names

    def term_count(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # --- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["LaurentPolynomial"]:
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, (int, Fraction, ParamElement)):
            return LaurentPolynomial({0: other})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: Dict[int, Coefficient] = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return LaurentPolynomial(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamElement)):
            return self.scale(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        terms: Dict[int, Coefficient] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                terms[k] = terms[k] + c1 * c2 if k in terms else c1 * c2
        return LaurentPolynomial(terms)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise KovacicError("only single-term Laurent polynomials have Laurent inverses")
            (k, c), = self._terms.items()
            inv = 1 / c if isinstance(c, Fraction) else c.inverse()
            return LaurentPolynomial({-k: inv}) ** (-n)
        result = LaurentPolynomial({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, value) -> "LaurentPolynomial":
        if not value:
            return LaurentPolynomial()
        return LaurentPolynomial({k: c * value for k, c in self._terms.items()})

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by x^k."""
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def derive(self) -> "LaurentPolynomial":
        return LaurentPolynomial({k - 1: c * k for k, c in self._terms.items() if k})

    def antiderivative(self) -> "LaurentPolynomial":
        """Antiderivative with zero constant term; undefined when an x^-1 term is present."""
        if -1 in self._terms:
            raise KovacicError("an x^-1 term has a logarithmic antiderivative")
        return LaurentPolynomial({k + 1: c / (k + 1) if isinstance(c, Fraction) else c * Fraction(1, k + 1)
                                  for k, c in self._terms.items()})

    def compose_square(self) -> "LaurentPolynomial":
        """p(x) -> p(x^2)."""
        return LaurentPolynomial({2 * k: c for k, c in self._terms.items()})

    def restrict(self, low: Optional[int] = None, high: Optional[int] = None) -> "LaurentPolynomial":
        """Keep the terms with low <= exponent <= high."""
        return LaurentPolynomial({
            k: c for k, c in self._terms.items()
            if (low is None or k >= low) and (high is None or k <= high)
        })

    def map_coefficients(self, fn: Callable[[Coefficient], Coefficient]) -> "LaurentPolynomial":
        return LaurentPolynomial({k: fn(c) for k, c in self._terms.items()})

    def substitute(self, name: str, value) -> "LaurentPolynomial":
        return self.map_coefficients(
            lambda c: c.substitute(name, value) if isinstance(c, ParamElement) else c
        )

    def specialize(self, point: Mapping[str, Number]) -> "LaurentPolynomial":
        return self.map_coefficients(
            lambda c: c.specialize(point) if isinstance(c, ParamElement) else c
        )

    # --- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def __str__(self) -> str:
        from kovacic_aim.parser import format_laurent

        return format_laurent(self)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self})"


def lp_derive(p: LaurentPolynomial) -> LaurentPolynomial:
    return p.derive()


def lp_mul(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p * q
