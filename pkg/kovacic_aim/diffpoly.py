"""
Differential polynomials over the rationals in two indeterminates.

An indeterminate is ``(name, order)`` with ``name`` in ``{"alpha", "beta"}``;
``("alpha", 2)`` is alpha''. The derivation raises the order by one and obeys
the Leibniz rule.
"""

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Set, Tuple

from kovacic_aim.laurent import LaurentPolynomial
from kovacic_aim.params import Number

Indeterminate = Tuple[str, int]
DMonomial = Tuple[Tuple[Indeterminate, int], ...]

ALPHA = "alpha"
BETA = "beta"
# weight of an indeterminate of order 0; each derivative adds one
_BASE_WEIGHT = {ALPHA: 1, BETA: 2}


def _canonical(mono) -> DMonomial:
    exps: Dict[Indeterminate, int] = {}
    for ind, e in mono:
        exps[ind] = exps.get(ind, 0) + e
    return tuple(sorted((ind, e) for ind, e in exps.items() if e))


def _ind_str(ind: Indeterminate) -> str:
    name, order = ind
    return name + "'" * order


class DifferentialPolynomial:
    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[DMonomial, Number]] = None):
        clean: Dict[DMonomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = _canonical(mono)
            s = clean.get(mono, Fraction(0)) + Fraction(c)
            if s:
                clean[mono] = s
            else:
                clean.pop(mono, None)
        self._terms = clean

    @classmethod
    def alpha(cls, order: int = 0) -> "DifferentialPolynomial":
        return cls({(((ALPHA, order), 1),): 1})

    @classmethod
    def beta(cls, order: int = 0) -> "DifferentialPolynomial":
        return cls({(((BETA, order), 1),): 1})

    @classmethod
    def constant(cls, value: Number) -> "DifferentialPolynomial":
        return cls({(): value})

    def items(self) -> Iterator[Tuple[DMonomial, Fraction]]:
        return iter(self._terms.items())

    def term_count(self) -> int:
        return len(self._terms)

    def max_order(self) -> int:
        return max((order for mono in self._terms for (_, order), _ in mono), default=0)

    def weights(self) -> Set[int]:
        """Weights of all monomials; alpha counts 1, beta counts 2, each derivative adds 1."""
        return {
            sum((_BASE_WEIGHT[name] + order) * e for (name, order), e in mono)
            for mono in self._terms
        }

    # --- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["DifferentialPolynomial"]:
        if isinstance(other, DifferentialPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return DifferentialPolynomial({(): other})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return DifferentialPolynomial(terms)

    __radd__ = __add__

    def __neg__(self):
        return DifferentialPolynomial({m: -c for m, c in self._terms.items()})

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
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: Dict[DMonomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _canonical(m1 + m2)
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return DifferentialPolynomial(terms)

    __rmul__ = __mul__

    def derive(self) -> "DifferentialPolynomial":
        terms: Dict[DMonomial, Fraction] = {}
        for mono, c in self._terms.items():
            for idx, ((name, order), e) in enumerate(mono):
                rest = mono[:idx] + (((name, order), e - 1),) + mono[idx + 1:]
                new = _canonical(rest + (((name, order + 1), 1),))
                terms[new] = terms.get(new, 0) + c * e
        return DifferentialPolynomial(terms)

    def evaluate(self, f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
        """Substitute alpha -> f, beta -> g and their derivatives."""
        top = self.max_order()
        derivs = {ALPHA: [f], BETA: [g]}
        for name in derivs:
            for _ in range(top):
                derivs[name].append(derivs[name][-1].derive())
        powers: Dict[Tuple[Indeterminate, int], LaurentPolynomial] = {}
        total = LaurentPolynomial()
        for mono, c in self._terms.items():
            value = LaurentPolynomial.constant(c)
            for ind, e in mono:
                if (ind, e) not in powers:
                    powers[(ind, e)] = derivs[ind[0]][ind[1]] ** e
                value = value * powers[(ind, e)]
            total = total + value
        return total

    # --- comparison / display ---------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def _display_order(self):
        def key(item):
            mono = item[0]
            alpha_degree = sum(e for (name, _), e in mono if name == ALPHA)
            return -alpha_degree, mono

        return sorted(self._terms.items(), key=key)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for i, (mono, c) in enumerate(self._display_order()):
            factors = [_ind_str(ind) if e == 1 else f"{_ind_str(ind)}^{e}" for ind, e in mono]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"DifferentialPolynomial({self})"


def dp_derive(p: DifferentialPolynomial) -> DifferentialPolynomial:
    return p.derive()


def dp_evaluate(p: DifferentialPolynomial, f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    return p.evaluate(f, g)
