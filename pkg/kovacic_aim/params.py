"""
Multivariate parameter polynomials over the rationals.

A ``ParamElement`` stores its coefficients in a dictionary keyed by
monomials, a monomial being a name-sorted tuple of ``(symbol, exponent)``
pairs with nonzero exponents. Example::

    {(): 1/4, (("alpha", 2),): 1/4, (("k", -1), ("r", 1)): -3}

reads ``1/4 + 1/4*alpha^2 - 3*k^-1*r``. Negative exponents are only
allowed on symbols declared invertible.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from kovacic_aim.errors import KovacicError, NotInvertible

Monomial = Tuple[Tuple[str, int], ...]
Number = Union[int, Fraction]


def rational_sqrt(value: Number) -> Optional[Fraction]:
    """Nonnegative rational square root, or None when irrational."""
    value = Fraction(value)
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _canonical(mono: Iterable[Tuple[str, int]]) -> Monomial:
    exps: Dict[str, int] = {}
    for name, e in mono:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted((n, e) for n, e in exps.items() if e))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return _canonical(a + b)


def _mono_str(mono: Monomial) -> str:
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in mono)


class ParamElement:
    __slots__ = ("_terms", "invertible")

    def __init__(self, terms: Optional[Mapping[Monomial, Number]] = None, invertible: Iterable[str] = ()):
        self.invertible: FrozenSet[str] = frozenset(invertible)
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = _canonical(mono)
            for name, e in mono:
                if e < 0 and name not in self.invertible:
                    raise NotInvertible(f"negative power of '{name}', which is not declared invertible")
            c = clean.get(mono, Fraction(0)) + Fraction(coeff)
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self._terms = clean

    # --- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, value: Number) -> "ParamElement":
        return cls({(): value})

    @classmethod
    def symbol(cls, name: str, invertible: bool = False) -> "ParamElement":
        return cls({((name, 1),): 1}, invertible=(name,) if invertible else ())

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction], invertible: FrozenSet[str]) -> "ParamElement":
        element = cls.__new__(cls)
        element._terms = terms
        element.invertible = invertible
        return element

    # --- inspection -------------------------------------------------------

    def items(self):
        return self._terms.items()

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(_canonical(mono), Fraction(0))

    @property
    def symbols(self) -> FrozenSet[str]:
        return frozenset(name for mono in self._terms for name, _ in mono)

    @property
    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise KovacicError(f"'{self}' is not a constant")
        return self._terms.get((), Fraction(0))

    def _order_key(self):
        names = sorted(self.symbols)

        def key(mono: Monomial):
            exps = dict(mono)
            return sum(exps.values()), tuple(exps.get(n, 0) for n in names)

        return key

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order (symbols compared by name)."""
        key = self._order_key()
        return sorted(self._terms.items(), key=lambda item: key(item[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        terms = self.sorted_terms()
        return terms[0][1] if terms else Fraction(0)

    # --- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["ParamElement"]:
        if isinstance(other, ParamElement):
            return other
        if isinstance(other, (int, Fraction)):
            return ParamElement._raw({(): Fraction(other)} if other else {}, frozenset())
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return ParamElement._raw(terms, self.invertible | other.invertible)

    __radd__ = __add__

    def __neg__(self):
        return ParamElement._raw({m: -c for m, c in self._terms.items()}, self.invertible)

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
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                s = terms.get(mono, 0) + c1 * c2
                if s:
                    terms[mono] = s
                else:
                    terms.pop(mono, None)
        return ParamElement._raw(terms, self.invertible | other.invertible)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ParamElement._raw({(): Fraction(1)}, self.invertible)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "ParamElement":
        """Inverse of a nonzero rational times a monomial in invertible symbols."""
        if not self.is_monomial:
            raise NotInvertible(f"'{self}' is not a single monomial and cannot be inverted")
        (mono, c), = self._terms.items()
        for name, _ in mono:
            if name not in self.invertible:
                raise NotInvertible(f"'{name}' is not declared invertible")
        return ParamElement._raw({tuple((n, -e) for n, e in mono): 1 / c}, self.invertible)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a parameter polynomial by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, ParamElement):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    # --- comparison -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamElement):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant and self._terms.get((), 0) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant:
            return hash(self._terms.get((), Fraction(0)))
        return hash(frozenset(self._terms.items()))

    # --- transformations ----------------------------------------------------

    def sqrt(self) -> Optional["ParamElement"]:
        """Exact square root of a square constant or a square monomial, else None."""
        if not self._terms:
            return ParamElement()
        if not self.is_monomial:
            return None
        (mono, c), = self._terms.items()
        root = rational_sqrt(c)
        if root is None or any(e % 2 for _, e in mono):
            return None
        return ParamElement._raw({tuple((n, e // 2) for n, e in mono): root}, self.invertible)

    def substitute(self, name: str, value: Union[Number, "ParamElement"]) -> "ParamElement":
        value = self._coerce(value)
        if name not in self.symbols:
            return self
        result = ParamElement._raw({}, self.invertible | value.invertible)
        powers: Dict[int, ParamElement] = {}
        for mono, c in self._terms.items():
            exps = dict(mono)
            e = exps.pop(name, 0)
            if e not in powers:
                powers[e] = value ** e
            rest = ParamElement._raw({tuple(sorted(exps.items())): c}, self.invertible)
            result = result + rest * powers[e]
        result.invertible = (self.invertible - {name}) | value.invertible
        return result

    def specialize(self, point: Mapping[str, Number]) -> Fraction:
        """Rational value at a parameter point."""
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for name, e in mono:
                if name not in point:
                    raise KovacicError(f"no value given for parameter '{name}'")
                v = Fraction(point[name])
                if e < 0 and not v:
                    raise NotInvertible(f"parameter '{name}' is declared invertible but was set to 0")
                term *= v ** e
            total += term
        return total

    def cleared(self) -> "ParamElement":
        """Multiply by the monomial that removes all negative exponents."""
        lowest: Dict[str, int] = {}
        for mono in self._terms:
            for name, e in mono:
                lowest[name] = min(lowest.get(name, 0), e)
        shift = tuple((n, -e) for n, e in sorted(lowest.items()) if e < 0)
        if not shift:
            return self
        return ParamElement._raw(
            {_mono_mul(mono, shift): c for mono, c in self._terms.items()}, self.invertible
        )

    def normalized(self) -> "ParamElement":
        """Integer coprime coefficients with a positive leading coefficient."""
        if not self._terms:
            return self
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self._terms.values():
            num = gcd(num, (c * den).numerator)
        scale = Fraction(den, num)
        if self.leading_coefficient() < 0:
            scale = -scale
        return ParamElement._raw({m: c * scale for m, c in self._terms.items()}, self.invertible)

    # --- display ----------------------------------------------------------

    def signed_parts(self) -> List[Tuple[bool, str]]:
        """(negative, body) per term, in display order."""
        parts = []
        for mono, c in self.sorted_terms():
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = _mono_str(mono)
            else:
                body = f"{mag}*{_mono_str(mono)}"
            parts.append((c < 0, body))
        return parts

    def __str__(self) -> str:
        parts = self.signed_parts()
        if not parts:
            return "0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for negative, body in parts[1:]:
            out += (" - " if negative else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"ParamElement({self})"


Coefficient = Union[Fraction, ParamElement]


def canonical_coefficient(value) -> Coefficient:
    """Rationals stay rationals; constant parameter polynomials collapse to rationals."""
    if isinstance(value, ParamElement):
        if value.is_constant:
            return value.constant_value
        return value
    return Fraction(value)


def is_rational(value) -> bool:
    return not isinstance(value, ParamElement) or value.is_constant


@dataclass(frozen=True)
class ParamSpace:
    """Declared parameters, in declaration order, with their invertibility flags."""

    params: Tuple[Tuple[str, bool], ...] = ()

    @classmethod
    def parse_declaration(cls, text: Optional[str]) -> "ParamSpace":
        """Read ``"k0,k1,r:inv"`` style declarations."""
        if not text or not text.strip():
            return cls()
        declared: List[Tuple[str, bool]] = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            name, _, flag = chunk.partition(":")
            name = name.strip()
            flag = flag.strip()
            if flag not in ("", "inv"):
                raise KovacicError(f"unknown parameter flag '{flag}' for '{name}' (only 'inv' is supported)")
            declared.append((name, flag == "inv"))
        return cls(tuple(declared))

    def __post_init__(self):
        names = [n for n, _ in self.params]
        for name in names:
            if not name.isidentifier():
                raise KovacicError(f"parameter name '{name}' is not an identifier")
            if name == "x":
                raise KovacicError("'x' is the independent variable and cannot be a parameter")
        if len(set(names)) != len(names):
            raise KovacicError("parameter names must be distinct")

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(n for n, _ in self.params)

    @property
    def invertible(self) -> FrozenSet[str]:
        return frozenset(n for n, inv in self.params if inv)

    def is_declared(self, name: str) -> bool:
        return name in self.names

    def symbol(self, name: str) -> ParamElement:
        return ParamElement.symbol(name, invertible=name in self.invertible)

    def declaration(self) -> str:
        return ",".join(f"{n}:inv" if inv else n for n, inv in self.params)
