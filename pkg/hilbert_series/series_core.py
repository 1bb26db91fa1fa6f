"""
Exact truncated power series.

This module provides the value types shared by the whole package and the
recognisers that turn coefficient data back into closed forms:
- Series: truncated power series with Fraction coefficients
- UniPoly / RationalFn: integer-coefficient rational functions expandable at 0
- BiPoly: polynomials in (t, z) used as annihilators of algebraic series
- Named series (partition products, lacunary series, Catalan)
- find_linear_recurrence: rational recognition (Berlekamp-Massey)
- guess_algebraic_equation: annihilating polynomial from a kernel computation

Truncation order is explicit on every Series. Binary operations take the
minimum order of their operands and never extrapolate.
"""

import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy as sp


logger = logging.getLogger(__name__)


# ============================================================================
# Constants
# ============================================================================

GUESS_GUARD = 8
INFINITY = math.inf

T, Z = sp.symbols("t z")

NAMED_SERIES_KINDS = (
    "euler_partitions",
    "distinct_parts",
    "smith",
    "shearer_p",
    "shearer_rho",
    "ufnarovskij_UL",
)
LACUNARY_KINDS = ("powers", "factorials")


# ============================================================================
# Custom Exceptions
# ============================================================================

class SeriesError(Exception):
    """Base exception for power-series operations."""
    pass


class DivisionByNonUnit(SeriesError):
    """Raised when dividing by a series with zero constant term."""
    pass


class NonzeroConstantTerm(SeriesError):
    """Raised when an operation needs a series with zero constant term."""
    pass


class PoleAtOrigin(SeriesError):
    """Raised when a rational function cannot be expanded at t=0."""
    pass


class UnknownKind(SeriesError):
    """Raised for an unknown named-series kind."""
    pass


class BadParameter(SeriesError):
    """Raised when a parameter is outside its documented range."""
    pass


class InsufficientOrder(SeriesError):
    """Raised when a series is too short for a recogniser to be trusted."""
    pass


Coefficient = Union[int, Fraction, str]


def to_fraction(value) -> Fraction:
    """Convert an int, Fraction, "p/q" string or sympy Rational to a Fraction.

    Raises:
        BadParameter: If the value is not an exact rational
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise BadParameter(f"Boolean is not a coefficient: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as e:
            raise BadParameter(f"Not an exact fraction string: {value!r}") from e
    if isinstance(value, sp.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, sp.Basic):
        raise BadParameter(f"Not a rational number: {value}")
    if hasattr(value, "__index__"):
        return Fraction(int(value))
    raise BadParameter(f"Unsupported coefficient type: {type(value).__name__}")


def to_sympy_rational(value: Fraction) -> sp.Rational:
    return sp.Rational(value.numerator, value.denominator)


def _common_denominator(coeffs: Sequence[Fraction]) -> Tuple[List[int], int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> List[Fraction]:
    # integer convolution over a common denominator
    ai, da = _common_denominator(a[:order + 1])
    bi, db = _common_denominator(b[:order + 1])
    support = [(i, v) for i, v in enumerate(ai) if v]
    den = da * db
    out = []
    for n in range(order + 1):
        total = 0
        for i, v in support:
            if i > n:
                break
            total += v * bi[n - i]
        out.append(Fraction(total, den))
    return out


# ============================================================================
# Series
# ============================================================================

@dataclass(frozen=True)
class Series:
    """Truncated power series with exact rational coefficients.

    Attributes:
        order: Truncation order N (inclusive)
        coeffs: Coefficients of t^0..t^N

    Two series are equal iff their orders and all coefficients are equal.
    """
    order: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise BadParameter(f"Truncation order must be >= 0, got {self.order}")
        coeffs = tuple(to_fraction(c) for c in self.coeffs)
        if len(coeffs) != self.order + 1:
            raise BadParameter(
                f"Series of order {self.order} needs {self.order + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, values: Iterable[Coefficient], order: Optional[int] = None) -> "Series":
        """Build a series from leading coefficients, zero-padding up to `order`."""
        values = [to_fraction(v) for v in values]
        if order is None:
            order = len(values) - 1
        values = values[:order + 1] + [Fraction(0)] * (order + 1 - len(values))
        return cls(order, tuple(values))

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls.from_coeffs([], order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.from_coeffs([1], order)

    @classmethod
    def monomial(cls, degree: int, order: int, coefficient: Coefficient = 1) -> "Series":
        """c * t^degree truncated to `order`."""
        values = [0] * (degree + 1)
        values[degree] = coefficient
        return cls.from_coeffs(values, order)

    @classmethod
    def from_polynomial(cls, poly: "UniPoly", order: int) -> "Series":
        return cls.from_coeffs(poly.coeffs, order)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n > self.order:
            raise IndexError(f"Coefficient {n} outside truncation order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise InsufficientOrder(f"Cannot extend order {self.order} to {order}")
        return Series(order, self.coeffs[:order + 1])

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series.from_coeffs([other], self.order)

    def __add__(self, other) -> "Series":
        other = self._coerce(other)
        order = min(self.order, other.order)
        return Series(order, tuple(self.coeffs[n] + other.coeffs[n] for n in range(order + 1)))

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Series":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Series":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            c = to_fraction(other)
            return Series(self.order, tuple(c * x for x in self.coeffs))
        order = min(self.order, other.order)
        return Series(order, tuple(_convolve(self.coeffs, other.coeffs, order)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Series":
        if not isinstance(other, Series):
            c = to_fraction(other)
            if c == 0:
                raise DivisionByNonUnit("Division by the zero scalar")
            return Series(self.order, tuple(x / c for x in self.coeffs))
        if other.coeffs[0] == 0:
            raise DivisionByNonUnit("Divisor has zero constant term")
        order = min(self.order, other.order)
        b0 = other.coeffs[0]
        quotient: List[Fraction] = []
        for n in range(order + 1):
            acc = self.coeffs[n]
            for i in range(1, n + 1):
                if other.coeffs[i]:
                    acc -= other.coeffs[i] * quotient[n - i]
            quotient.append(acc / b0)
        return Series(order, tuple(quotient))

    def __rtruediv__(self, other) -> "Series":
        return self._coerce(other) / self

    def __pow__(self, exponent: int) -> "Series":
        if exponent < 0:
            return Series.one(self.order) / (self ** -exponent)
        result = Series.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, k: int) -> "Series":
        """Multiply by t^k, keeping the truncation order."""
        if k < 0:
            raise BadParameter("Shift must be nonnegative")
        values = [Fraction(0)] * k + list(self.coeffs)
        return Series(self.order, tuple(values[:self.order + 1]))

    def derivative(self) -> "Series":
        if self.order == 0:
            return Series.zero(0)
        return Series(self.order - 1, tuple(n * self.coeffs[n] for n in range(1, self.order + 1)))

    def valuation(self) -> Optional[int]:
        """Index of the first nonzero coefficient, None for the zero series."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def is_nonnegative_integer(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.coeffs)

    def integer_coefficients(self) -> List[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise BadParameter("Series has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    def support(self) -> List[int]:
        return [n for n, c in enumerate(self.coeffs) if c]

    def to_json(self) -> Dict[str, object]:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Union[str, Mapping]) -> "Series":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(int(data["order"]), tuple(data["coeffs"]))
        except (KeyError, TypeError) as e:
            raise BadParameter(f"Malformed series JSON: {e}") from e

    def __str__(self) -> str:
        terms = [_format_term(c, n, "t") for n, c in enumerate(self.coeffs) if c]
        body = _join_terms(terms) if terms else "0"
        return f"{body} + O(t^{self.order + 1})"


def _format_monomial(var: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return var
    return f"{var}^{exponent}"


def _format_term(coefficient: Fraction, exponent: int, var: str) -> str:
    mono = _format_monomial(var, exponent)
    if not mono:
        return str(coefficient)
    if coefficient == 1:
        return mono
    if coefficient == -1:
        return f"-{mono}"
    return f"{coefficient}{mono}"


def _join_terms(terms: Sequence[str], spaced: bool = True) -> str:
    plus, minus = (" + ", " - ") if spaced else ("+", "-")
    out = terms[0]
    for term in terms[1:]:
        out += minus + term[1:] if term.startswith("-") else plus + term
    return out


# ============================================================================
# Polynomials and rational functions
# ============================================================================

@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial in t; coeffs[i] is the coefficient of t^i.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and degree -1.
    """
    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        coeffs = [to_fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    def valuation(self) -> Optional[int]:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def __call__(self, x) -> Fraction:
        x = to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(tuple(self.coefficient(n) + other.coefficient(n) for n in range(size)))

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = to_fraction(other)
            return UniPoly(tuple(c * x for x in self.coeffs))
        if self.is_zero() or other.is_zero():
            return UniPoly()
        order = self.degree + other.degree
        a = list(self.coeffs) + [Fraction(0)] * (order + 1 - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (order + 1 - len(other.coeffs))
        return UniPoly(tuple(_convolve(a, b, order)))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniPoly":
        result = UniPoly((1,))
        for _ in range(exponent):
            result = result * self
        return result

    def to_sympy(self, var: sp.Symbol = T) -> sp.Poly:
        rep = [to_sympy_rational(c) for c in reversed(self.coeffs)] or [sp.Integer(0)]
        return sp.Poly.from_list(rep, var, domain=sp.QQ)

    @classmethod
    def from_sympy(cls, poly: sp.Poly) -> "UniPoly":
        return cls(tuple(to_fraction(c) for c in reversed(poly.all_coeffs())))

    @classmethod
    def from_expr(cls, expr, var: sp.Symbol = T) -> "UniPoly":
        return cls.from_sympy(sp.Poly(sp.expand(expr), var, domain=sp.QQ))

    def to_expr(self, var: sp.Symbol = T):
        return self.to_sympy(var).as_expr()

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        terms = [_format_term(c, n, "t") for n, c in enumerate(self.coeffs) if c]
        return _join_terms(terms, spaced=False) if terms else "0"


ONE = UniPoly((1,))


@dataclass(frozen=True)
class RationalFn:
    """Reduced rational function num/den with den(0) = 1.

    Construction reduces by the polynomial gcd and rescales so the
    denominator has constant term 1; equal functions therefore compare equal.

    Raises:
        BadParameter: If the denominator is the zero polynomial
        PoleAtOrigin: If the reduced denominator vanishes at t=0
    """
    num: UniPoly
    den: UniPoly = ONE

    def __post_init__(self):
        num = self.num if isinstance(self.num, UniPoly) else UniPoly(tuple(self.num))
        den = self.den if isinstance(self.den, UniPoly) else UniPoly(tuple(self.den))
        if den.is_zero():
            raise BadParameter("Rational function with zero denominator")
        num_sp, den_sp = num.to_sympy(), den.to_sympy()
        g = num_sp.gcd(den_sp)
        if g.degree() > 0:
            num = UniPoly.from_sympy(num_sp.exquo(g))
            den = UniPoly.from_sympy(den_sp.exquo(g))
        d0 = den.coefficient(0)
        if d0 == 0:
            raise PoleAtOrigin(f"Denominator {den} vanishes at t=0")
        object.__setattr__(self, "num", num * (1 / d0))
        object.__setattr__(self, "den", den * (1 / d0))

    @classmethod
    def from_expr(cls, expr, var: sp.Symbol = T) -> "RationalFn":
        num, den = sp.fraction(sp.cancel(sp.together(expr)))
        return cls(UniPoly.from_expr(num, var), UniPoly.from_expr(den, var))

    def to_expr(self, var: sp.Symbol = T):
        return self.num.to_expr(var) / self.den.to_expr(var)

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other) -> "RationalFn":
        if not isinstance(other, RationalFn):
            return RationalFn(self.num * to_fraction(other), self.den)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFn":
        if not isinstance(other, RationalFn):
            return RationalFn(self.num, self.den * to_fraction(other))
        return RationalFn(self.num * other.den, self.den * other.num)

    def expand(self, order: int) -> Series:
        return expand_rational(self, order)

    def to_json(self) -> Dict[str, List[str]]:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: Union[str, Mapping]) -> "RationalFn":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(UniPoly(tuple(data["num"])), UniPoly(tuple(data.get("den", ["1"]))))
        except (KeyError, TypeError) as e:
            raise BadParameter(f"Malformed rational function JSON: {e}") from e

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


def geometric(ratio: Coefficient = 1, power: int = 1, exponent: int = 1) -> RationalFn:
    """The rational function 1/(1 - ratio*t^power)^exponent."""
    base = [Fraction(0)] * (power + 1)
    base[0] = Fraction(1)
    base[power] = -to_fraction(ratio)
    return RationalFn(ONE, UniPoly(tuple(base)) ** exponent)


@dataclass(frozen=True)
class BiPoly:
    """Polynomial in (t, z) with rational coefficients.

    `terms` maps (degree in t, degree in z) to a nonzero coefficient. In
    resultant outputs the second variable is named u but stored in the z slot.
    """
    terms: Tuple[Tuple[Tuple[int, int], Fraction], ...] = ()

    def __post_init__(self):
        raw = self.terms.items() if isinstance(self.terms, Mapping) else self.terms
        merged: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), c in raw:
            if i < 0 or j < 0:
                raise BadParameter(f"Negative exponent in BiPoly term {(i, j)}")
            merged[(int(i), int(j))] = merged.get((int(i), int(j)), Fraction(0)) + to_fraction(c)
        cleaned = tuple(sorted((k, v) for k, v in merged.items() if v != 0))
        object.__setattr__(self, "terms", cleaned)

    @property
    def coeffs(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree_t(self) -> int:
        return max((i for (i, _), _ in self.terms), default=-1)

    @property
    def degree_z(self) -> int:
        return max((j for (_, j), _ in self.terms), default=-1)

    def leading_key(self) -> Tuple[int, int]:
        """Leading (t-degree, z-degree) in the (z-degree, t-degree) lexicographic order."""
        return max((k for k, _ in self.terms), key=lambda k: (k[1], k[0]))

    def normalized(self) -> "BiPoly":
        """Primitive integer coefficients with positive leading coefficient."""
        if self.is_zero():
            return self
        values = [c for _, c in self.terms]
        _, den = _common_denominator(values)
        ints = [c.numerator * (den // c.denominator) for c in values]
        content = 0
        for v in ints:
            content = math.gcd(content, v)
        lead = self.coeffs[self.leading_key()]
        sign = 1 if lead > 0 else -1
        return BiPoly(tuple((k, Fraction(sign * v // content)) for (k, _), v in zip(self.terms, ints)))

    def coefficient_in_z(self, j: int) -> UniPoly:
        """The coefficient of z^j as a polynomial in t."""
        degree = self.degree_t
        values = [Fraction(0)] * (degree + 1)
        for (i, jj), c in self.terms:
            if jj == j:
                values[i] = c
        return UniPoly(tuple(values))

    def derivative_z(self) -> "BiPoly":
        return BiPoly(tuple(((i, j - 1), j * c) for (i, j), c in self.terms if j > 0))

    def evaluate(self, f: Series) -> Series:
        """P(t, f(t)) truncated to the order of f (Horner in z)."""
        if self.is_zero():
            return Series.zero(f.order)
        result = Series.zero(f.order)
        for j in range(self.degree_z, -1, -1):
            result = result * f + Series.from_polynomial(self.coefficient_in_z(j), f.order)
        return result

    def to_expr(self, t: sp.Symbol = T, z: sp.Symbol = Z):
        return sp.Add(*[to_sympy_rational(c) * t ** i * z ** j for (i, j), c in self.terms])

    @classmethod
    def from_expr(cls, expr, t: sp.Symbol = T, z: sp.Symbol = Z) -> "BiPoly":
        poly = sp.Poly(sp.expand(expr), t, z, domain=sp.QQ)
        return cls(tuple(((i, j), to_fraction(c)) for (i, j), c in poly.terms()))

    def to_json(self) -> List[List[object]]:
        return [[i, j, str(c)] for (i, j), c in self.terms]

    @classmethod
    def from_json(cls, data: Union[str, Sequence]) -> "BiPoly":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(tuple(((int(i), int(j)), to_fraction(c)) for i, j, c in data))
        except (TypeError, ValueError) as e:
            raise BadParameter(f"Malformed BiPoly JSON: {e}") from e

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        ordered = sorted(self.terms, key=lambda kv: (-kv[0][1], -kv[0][0]))
        terms = []
        for (i, j), c in ordered:
            mono = "*".join(m for m in (_format_monomial("t", i), _format_monomial("z", j)) if m)
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        return _join_terms(terms)


# ============================================================================
# Operations
# ============================================================================

def series_arith(a: Series, b: Series, op: str) -> Series:
    """Exact truncated ring operation; the result order is min(a.order, b.order).

    Args:
        a: Left operand
        b: Right operand
        op: One of "add", "sub", "mul", "div"

    Raises:
        DivisionByNonUnit: If op is "div" and b(0) = 0
        BadParameter: For an unknown op
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise BadParameter(f"Unknown series operation: {op!r}")


def compose(f: Series, g: Series) -> Series:
    """f(g(t)) truncated to min order, by Horner over truncated series.

    Raises:
        NonzeroConstantTerm: If g(0) != 0
    """
    if g.coeffs[0] != 0:
        raise NonzeroConstantTerm("Inner series of a composition must have zero constant term")
    order = min(f.order, g.order)
    g = g.truncate(order)
    top = max((n for n in range(order + 1) if f.coeffs[n]), default=0)
    result = Series.from_coeffs([f.coeffs[top]], order)
    for n in range(top - 1, -1, -1):
        result = result * g + f.coeffs[n]
    return result


def sqrt_one_plus(f: Series) -> Series:
    """The series s with s(0) = 1 and s^2 = 1 + f.

    Raises:
        NonzeroConstantTerm: If f(0) != 0
    """
    if f.coeffs[0] != 0:
        raise NonzeroConstantTerm("sqrt_one_plus needs f(0) = 0")
    s = [Fraction(1)]
    for n in range(1, f.order + 1):
        cross = sum((s[i] * s[n - i] for i in range(1, n)), Fraction(0))
        s.append((f.coeffs[n] - cross) / 2)
    return Series(f.order, tuple(s))


def expand_rational(rf: RationalFn, N: int) -> Series:
    """Taylor expansion of rf at 0 to order N via the linear recurrence of its denominator.

    Raises:
        PoleAtOrigin: If the denominator vanishes at 0
    """
    d0 = rf.den.coefficient(0)
    if d0 == 0:
        raise PoleAtOrigin(f"Denominator {rf.den} vanishes at t=0")
    den = rf.den.coeffs
    out: List[Fraction] = []
    for n in range(N + 1):
        acc = rf.num.coefficient(n)
        for i in range(1, min(n, len(den) - 1) + 1):
            if den[i]:
                acc -= den[i] * out[n - i]
        out.append(acc / d0)
    return Series(N, tuple(out))


def section(f: Series, s: int) -> Series:
    """Keep the coefficients at indices divisible by s, zero the rest."""
    if s < 1:
        raise BadParameter(f"Section step must be >= 1, got {s}")
    return Series(f.order, tuple(c if n % s == 0 else Fraction(0) for n, c in enumerate(f.coeffs)))


def partition_product(parts: Iterable[int], N: int, distinct: bool = False) -> Series:
    """Expansion of the product over `parts` of 1/(1 - t^k), or (1 + t^k) if distinct."""
    counts = [0] * (N + 1)
    counts[0] = 1
    for k in sorted(set(parts)):
        if k < 1 or k > N:
            continue
        if distinct:
            for n in range(N, k - 1, -1):
                counts[n] += counts[n - k]
        else:
            for n in range(k, N + 1):
                counts[n] += counts[n - k]
    return Series.from_coeffs(counts, N)


def named_series(kind: str, N: int) -> Series:
    """Truncated expansion of one of the infinite products behind the intermediate-growth examples.

    Kinds:
        euler_partitions: prod 1/(1-t^n)
        distinct_parts: prod (1+t^n)
        smith: 1/(1-t) * prod 1/(1-t^n)
        shearer_p: 1/((1-t)(1-t^2)) * prod 1/(1-t^n)
        shearer_rho: 1/((1-t)(1-t^2)) * prod (1+t^n)
        ufnarovskij_UL: prod 1/(1-t^n)

    Raises:
        UnknownKind: For any other kind
    """
    parts = range(1, N + 1)
    if kind in ("euler_partitions", "ufnarovskij_UL"):
        return partition_product(parts, N)
    if kind == "distinct_parts":
        return partition_product(parts, N, distinct=True)
    if kind == "smith":
        return partition_product(parts, N) * expand_rational(geometric(), N)
    if kind == "shearer_p":
        return partition_product(parts, N) * partition_product((1, 2), N)
    if kind == "shearer_rho":
        return partition_product(parts, N, distinct=True) * partition_product((1, 2), N)
    raise UnknownKind(f"Unknown named series {kind!r}; expected one of {NAMED_SERIES_KINDS}")


def lacunary(kind: str, d: int = 2, N: int = 0) -> Series:
    """0/1 series supported on {d^n : n >= 0} ("powers") or {n! : n >= 1} ("factorials").

    Raises:
        BadParameter: If d < 2 for kind "powers"
        UnknownKind: For any other kind
    """
    support = set()
    if kind == "powers":
        if d < 2:
            raise BadParameter(f"Lacunary powers need d >= 2, got {d}")
        power = 1
        while power <= N:
            support.add(power)
            power *= d
    elif kind == "factorials":
        n, value = 1, 1
        while value <= N:
            support.add(value)
            n += 1
            value *= n
    else:
        raise UnknownKind(f"Unknown lacunary kind {kind!r}; expected one of {LACUNARY_KINDS}")
    return Series.from_coeffs([1 if n in support else 0 for n in range(N + 1)], N)


def catalan_series(N: int) -> Series:
    """c(t) = (1 - sqrt(1-4t))/2 = t + t^2 + 2t^3 + 5t^4 + ..., the root of z^2 - z + t."""
    s = sqrt_one_plus(Series.monomial(1, N + 1, -4))
    return Series(N, tuple((-s.coeffs[n] / 2 if n else Fraction(0)) for n in range(N + 1)))


def _berlekamp_massey(seq: Sequence[Fraction]) -> Tuple[List[Fraction], int]:
    """Shortest linear recurrence of a sequence over Q.

    Returns (C, L) with C[0] = 1 such that sum_{i<=L} C[i] seq[n-i] = 0 for all n >= L.
    """
    C: List[Fraction] = [Fraction(1)]
    B: List[Fraction] = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(seq)):
        d = seq[n]
        for i in range(1, min(L, len(C) - 1) + 1):
            d += C[i] * seq[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        updated = C + [Fraction(0)] * max(0, len(B) + m - len(C))
        for i, value in enumerate(B):
            updated[i + m] -= coef * value
        if 2 * L <= n:
            B, C = C, updated
            L, b, m = n + 1 - L, d, 1
        else:
            C = updated
            m += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return C, L


def find_linear_recurrence(f: Series, max_den_deg: int) -> Optional[RationalFn]:
    """Recover a rational function reproducing every stored coefficient of f.

    The shortest recurrence is found by Berlekamp-Massey; it is accepted only
    when at least GUESS_GUARD stored coefficients lie past its length and its
    denominator degree is at most max_den_deg. The candidate is re-expanded
    and compared against the full truncation before being returned.

    Returns:
        The reduced RationalFn with den(0) = 1, or None

    Raises:
        InsufficientOrder: If f.order < 2*max_den_deg + GUESS_GUARD
    """
    if f.order < 2 * max_den_deg + GUESS_GUARD:
        raise InsufficientOrder(
            f"Need order >= {2 * max_den_deg + GUESS_GUARD} for max_den_deg={max_den_deg}, got {f.order}"
        )
    connection, length = _berlekamp_massey(f.coeffs)
    if length + GUESS_GUARD > f.order + 1:
        logger.debug("Shortest recurrence has length %d; not enough redundancy at order %d", length, f.order)
        return None
    if len(connection) - 1 > max_den_deg:
        logger.debug("Shortest recurrence has denominator degree %d > %d", len(connection) - 1, max_den_deg)
        return None
    den = UniPoly(tuple(connection))
    num = UniPoly(tuple((f * Series.from_polynomial(den, f.order)).coeffs[:length]))
    candidate = RationalFn(num, den)
    if expand_rational(candidate, f.order) != f:
        logger.warning("Recurrence candidate %s failed re-verification", candidate)
        return None
    logger.info("Recovered rational function %s", candidate)
    return candidate


def _annihilator_kernel(powers: Sequence[Series], dz: int, dt: int, order: int) -> List[List[sp.Rational]]:
    columns = [(i, j) for j in range(dz + 1) for i in range(dt + 1)]
    rows = []
    for n in range(order + 1):
        rows.append([
            to_sympy_rational(powers[j].coeffs[n - i]) if n >= i else sp.Integer(0)
            for i, j in columns
        ])
    kernel = sp.Matrix(rows).nullspace()
    return [[(columns[k], vector[k]) for k in range(len(columns))] for vector in kernel]


def guess_algebraic_equation(f: Series, dz: int, dt: int) -> Optional[BiPoly]:
    """Find P(t, z) with deg_z <= dz, deg_t <= dt and P(t, f(t)) = 0 to full order.

    The kernel of the coefficient matrix is computed exactly. A one-dimensional
    kernel at the full bounds is already minimal; otherwise the bounds are
    lowered lexicographically (z-degree, then t-degree) to the first nonzero
    kernel.

    Returns:
        The normalized annihilator, or None if the kernel is trivial

    Raises:
        InsufficientOrder: If f.order < (dz+1)(dt+1) + GUESS_GUARD
    """
    needed = (dz + 1) * (dt + 1) + GUESS_GUARD
    if f.order < needed:
        raise InsufficientOrder(f"Need order >= {needed} for dz={dz}, dt={dt}, got {f.order}")
    powers = [Series.one(f.order)]
    for _ in range(dz):
        powers.append(powers[-1] * f)

    kernel = _annihilator_kernel(powers, dz, dt, f.order)
    logger.debug("Kernel dimension %d at dz=%d dt=%d", len(kernel), dz, dt)
    if not kernel:
        return None
    if len(kernel) > 1:
        kernel = []
        for dz_low in range(1, dz + 1):
            for dt_low in range(dt + 1):
                kernel = _annihilator_kernel(powers, dz_low, dt_low, f.order)
                if kernel:
                    break
            if kernel:
                break
        if len(kernel) > 1:
            logger.warning("Minimal annihilator kernel has dimension %d; taking the first vector", len(kernel))
    candidate = BiPoly(tuple(((i, j), to_fraction(c)) for (i, j), c in kernel[0])).normalized()
    if annihilator_residual(candidate, f) != INFINITY:
        logger.warning("Annihilator candidate %s failed re-verification", candidate)
        return None
    logger.info("Recovered annihilator %s", candidate)
    return candidate


def annihilator_residual(P: BiPoly, f: Series) -> Union[int, float]:
    """Smallest n with a nonzero t^n coefficient in P(t, f(t)), or INFINITY."""
    valuation = P.evaluate(f).valuation()
    return INFINITY if valuation is None else valuation
