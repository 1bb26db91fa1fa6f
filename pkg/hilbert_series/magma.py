"""
Free Omega-magmas.

An Omega-magma carries p_n operations of each arity n >= 2. Elements of the
free magma over a graded set Y are planar rooted trees whose internal
vertices are labelled by operations, graded by the total degree of the
leaves. This module computes:
- the generating function f(t) of the free magma, the solution of
  p(f) - f + a(t) = 0 with f(0) = 0
- an independent structural tree count used as an oracle
- sections of f at multiples of s and the generator series of the
  corresponding submagmas, which are again free
"""

import itertools
import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple, Union

from hilbert_series.bipoly import shift_transform
from hilbert_series.series_core import (
    BadParameter,
    BiPoly,
    InsufficientOrder,
    PoleAtOrigin,
    RationalFn,
    Series,
    UniPoly,
    compose,
    expand_rational,
    section,
)


logger = logging.getLogger(__name__)


# ============================================================================
# Constants
# ============================================================================

DEFAULT_COUNT_LIMIT = 10**12
DEFAULT_TREE_LIMIT = 100_000
# arities above this are ignored when a closed form is scanned for its support
SUPPORT_SCAN_ORDER = 64
LEAF = "x"


# ============================================================================
# Custom Exceptions
# ============================================================================

class MagmaError(Exception):
    """Base exception for magma computations."""
    pass


class ResourceLimit(MagmaError):
    """Raised when an explicit enumeration grows past its configured bound."""
    pass


class EmptySection(MagmaError):
    """Raised when no element has degree divisible by the requested step."""
    pass


class InvalidSignature(MagmaError):
    """Raised when arity counts are negative, empty, or include arity < 2."""
    pass


# ============================================================================
# Domain types
# ============================================================================

@dataclass(frozen=True)
class OmegaSignature:
    """Numbers of operations per arity.

    Exactly one of `arity_counts` (finite map arity -> count) and
    `closed_form` (a rational p(t) with valuation >= 2) is given.

    Attributes:
        arity_counts: Pairs (n, p_n) with n >= 2
        closed_form: Generating function sum p_n t^n
        name: Label used in reports
    """
    arity_counts: Optional[Tuple[Tuple[int, int], ...]] = None
    closed_form: Optional[RationalFn] = None
    name: str = ""

    def __post_init__(self):
        if (self.arity_counts is None) == (self.closed_form is None):
            raise InvalidSignature("Give exactly one of arity_counts and closed_form")
        if self.arity_counts is not None:
            raw = self.arity_counts.items() if isinstance(self.arity_counts, Mapping) else self.arity_counts
            counts = tuple(sorted((int(n), int(c)) for n, c in raw if int(c) != 0))
            for n, c in counts:
                if n < 2:
                    raise InvalidSignature(f"Arity must be >= 2, got {n}")
                if c < 0:
                    raise InvalidSignature(f"Arity {n} has negative count {c}")
            if not counts:
                raise InvalidSignature("Signature has no operations")
            object.__setattr__(self, "arity_counts", counts)
        else:
            expansion = expand_rational(self.closed_form, SUPPORT_SCAN_ORDER)
            if expansion.coeffs[0] != 0 or expansion.coeffs[1] != 0:
                raise InvalidSignature(f"Closed form {self.closed_form} must have valuation >= 2")
            if not expansion.is_nonnegative_integer():
                raise InvalidSignature(f"Closed form {self.closed_form} has a negative or fractional coefficient")
            if expansion.valuation() is None:
                raise InvalidSignature("Signature has no operations")

    @property
    def is_polynomial(self) -> bool:
        return self.arity_counts is not None

    def arity_coefficients(self, N: int) -> List[int]:
        """[p_0, ..., p_N]; closed forms are expanded and re-checked to order N."""
        if self.arity_counts is not None:
            values = [0] * (N + 1)
            for n, c in self.arity_counts:
                if n <= N:
                    values[n] = c
            return values
        expansion = expand_rational(self.closed_form, N)
        if not expansion.is_nonnegative_integer():
            raise InvalidSignature(f"Closed form {self.closed_form} is not a nonnegative integer series to order {N}")
        return expansion.integer_coefficients()

    def operations_series(self, N: int) -> Series:
        return Series.from_coeffs(self.arity_coefficients(N), N)

    def arity_support(self) -> List[int]:
        if self.arity_counts is not None:
            return [n for n, _ in self.arity_counts]
        values = self.arity_coefficients(SUPPORT_SCAN_ORDER)
        return [n for n, c in enumerate(values) if c]

    def to_json(self) -> Dict[str, object]:
        if self.arity_counts is not None:
            return {"arities": {str(n): c for n, c in self.arity_counts}}
        return {"closed_form": self.closed_form.to_json()}

    @classmethod
    def from_json(cls, data: Union[str, Mapping], name: str = "") -> "OmegaSignature":
        if isinstance(data, str):
            data = json.loads(data)
        if "arities" in data:
            return cls(arity_counts=tuple((int(n), int(c)) for n, c in data["arities"].items()), name=name)
        if "closed_form" in data:
            try:
                return cls(closed_form=RationalFn.from_json(data["closed_form"]), name=name)
            except (BadParameter, PoleAtOrigin) as e:
                raise InvalidSignature(f"Bad closed form: {e}") from e
        raise InvalidSignature(f"Signature JSON needs 'arities' or 'closed_form', got keys {sorted(data)}")


@dataclass(frozen=True)
class GeneratorWeights:
    """Generating function a(t) of the graded generating set.

    Raises:
        InvalidSignature: If a(0) != 0 or a coefficient is not a nonnegative integer
    """
    a: Series

    def __post_init__(self):
        if self.a.coeffs[0] != 0:
            raise InvalidSignature("Generators must have positive degree: a(0) != 0")
        if not self.a.is_nonnegative_integer():
            raise InvalidSignature("Generator counts must be nonnegative integers")

    @classmethod
    def single(cls, order: int) -> "GeneratorWeights":
        """One generator of degree 1, a(t) = t."""
        return cls(Series.monomial(1, order))


BINARY = OmegaSignature(arity_counts=((2, 1),), name="binary")
TERNARY = OmegaSignature(arity_counts=((3, 1),), name="ternary")
BINARY_TERNARY = OmegaSignature(arity_counts=((2, 1), (3, 1)), name="binary_ternary")
# one operation of every arity n >= 2: p(t) = t^2/(1-t)
SUPER_CATALAN = OmegaSignature(
    closed_form=RationalFn(UniPoly((0, 0, 1)), UniPoly((1, -1))),
    name="super_catalan",
)

NAMED_SIGNATURES = {sig.name: sig for sig in (BINARY, TERNARY, BINARY_TERNARY, SUPER_CATALAN)}


def named_signature(name: str) -> OmegaSignature:
    try:
        return NAMED_SIGNATURES[name]
    except KeyError:
        raise InvalidSignature(f"Unknown signature {name!r}; expected one of {sorted(NAMED_SIGNATURES)}")


# ============================================================================
# Generating functions
# ============================================================================

def magma_series(sig: OmegaSignature, gens: GeneratorWeights, N: int) -> Series:
    """Generating function of the free Omega-magma over the given generators.

    Solves f = a(t) + sum_k p_k f^k degree by degree. Since f(0) = 0 the
    t^n coefficient of f^k only involves f_1..f_(n-k+1), so a table of
    powers is filled one degree at a time in exact integers.

    Args:
        sig: Operation counts
        gens: Generator series a(t)
        N: Truncation order, >= 1

    Returns:
        Series of order N with nonnegative integer coefficients
    """
    if N < 1:
        raise BadParameter(f"magma_series needs N >= 1, got {N}")
    if gens.a.order < N:
        raise InsufficientOrder(f"Generator series has order {gens.a.order} < {N}")
    p = sig.arity_coefficients(N)
    a = gens.a.integer_coefficients()
    arities = [k for k in range(2, N + 1) if p[k]]
    top = max(arities, default=1)

    # pw[k][n] = [t^n] f^k
    pw = [[0] * (N + 1) for _ in range(top + 1)]
    f = pw[1]
    for n in range(1, N + 1):
        for k in range(2, top + 1):
            pw[k][n] = sum(f[m] * pw[k - 1][n - m] for m in range(1, n) if f[m])
        f[n] = a[n] + sum(p[k] * pw[k][n] for k in arities)
    logger.debug("magma_series %s to order %d", sig.name or sig, N)
    return Series.from_coeffs(f, N)


def brute_force_count(sig: OmegaSignature, n: int, limit: int = DEFAULT_COUNT_LIMIT) -> int:
    """Count planar Omega-trees with n leaves by explicit construction.

    A tree is a leaf or a root of arity k carrying one of p_k operations
    with k subtrees; the subtree sizes run over the compositions of n into
    k positive parts. Counts are memoized by leaf number.

    Raises:
        ResourceLimit: If any intermediate count exceeds `limit`
    """
    if n < 1:
        raise BadParameter(f"Trees need at least one leaf, got n={n}")
    p = sig.arity_coefficients(n)

    @lru_cache(maxsize=None)
    def count(m: int) -> int:
        if m == 1:
            return 1
        total = 0
        for k in range(2, m + 1):
            if not p[k]:
                continue
            for cuts in itertools.combinations(range(1, m), k - 1):
                bounds = (0,) + cuts + (m,)
                product = p[k]
                for lo, hi in zip(bounds, bounds[1:]):
                    product *= count(hi - lo)
                total += product
                if total > limit:
                    raise ResourceLimit(f"Tree count for {m} leaves exceeds limit {limit}")
        return total

    return count(n)


def enumerate_trees(sig: OmegaSignature, n: int, limit: int = DEFAULT_TREE_LIMIT) -> List[object]:
    """All planar Omega-trees with n leaves.

    A leaf is the string "x"; an internal vertex is a pair (label, children)
    where the label is "w{k}_{i}" for the i-th operation of arity k.

    Raises:
        ResourceLimit: If the number of trees exceeds `limit`
    """
    expected = brute_force_count(sig, n)
    if expected > limit:
        raise ResourceLimit(f"{expected} trees with {n} leaves exceed limit {limit}")
    p = sig.arity_coefficients(n)

    @lru_cache(maxsize=None)
    def trees(m: int) -> Tuple[object, ...]:
        if m == 1:
            return (LEAF,)
        out = []
        for k in range(2, m + 1):
            if not p[k]:
                continue
            for cuts in itertools.combinations(range(1, m), k - 1):
                bounds = (0,) + cuts + (m,)
                for children in itertools.product(*(trees(hi - lo) for lo, hi in zip(bounds, bounds[1:]))):
                    for i in range(p[k]):
                        out.append((f"w{k}_{i}", children))
        return tuple(out)

    return list(trees(n))


def free_magma_equation(sig: OmegaSignature) -> BiPoly:
    """Annihilator of the one-generator free magma series.

    For polynomial signatures this is p(z) - z + t; for a closed form
    p = num/den it is the shifted annihilator of den(t) z - num(t).
    """
    if sig.is_polynomial:
        terms = [((0, n), Fraction(c)) for n, c in sig.arity_counts]
        terms += [((0, 1), Fraction(-1)), ((1, 0), Fraction(1))]
        return BiPoly(tuple(terms)).normalized()
    num, den = sig.closed_form.num, sig.closed_form.den
    terms = [((i, 1), c) for i, c in enumerate(den.coeffs)]
    terms += [((i, 0), -c) for i, c in enumerate(num.coeffs)]
    return shift_transform(BiPoly(tuple(terms)))


# ============================================================================
# Submagmas
# ============================================================================

def section_nonempty(sig: OmegaSignature, s: int) -> bool:
    """True iff some tree has a number of leaves divisible by s.

    With d = gcd{n - 1 : p_n != 0}, leaf numbers are exactly 1 + d*N, so a
    multiple of s occurs iff gcd(d, s) = 1.
    """
    if s < 1:
        raise BadParameter(f"Section step must be >= 1, got {s}")
    d = 0
    for n in sig.arity_support():
        d = math.gcd(d, n - 1)
    return math.gcd(d, s) == 1


def submagma_generators(sig: OmegaSignature, s: int, N: int) -> Tuple[Series, Series]:
    """Section g_S of the free magma series and the generator series of that submagma.

    The submagma of elements with degree divisible by s is free, and its
    generators are counted by a = g_S - p(g_S).

    Returns:
        (g_S, a), both of order N

    Raises:
        EmptySection: If no degree is divisible by s
    """
    if not section_nonempty(sig, s):
        raise EmptySection(f"Signature {sig.name or sig} has no elements of degree divisible by {s}")
    g = magma_series(sig, GeneratorWeights.single(N), N)
    g_s = section(g, s)
    a = g_s - compose(sig.operations_series(N), g_s)
    logger.info("Submagma generators for s=%d: %s", s, a)
    return g_s, a


class ParityCounts(NamedTuple):
    even: int
    odd: int


def branch_parity_counts(n: int) -> ParityCounts:
    """Split binary trees with an even number n of leaves by the parity of the root branches.

    Trees with two even branches are products inside the even-degree
    submagma; those with two odd branches are its free generators.
    """
    if n < 2 or n % 2:
        raise BadParameter(f"branch_parity_counts needs an even n >= 2, got {n}")
    c = magma_series(BINARY, GeneratorWeights.single(n), n).integer_coefficients()
    even = sum(c[i] * c[n - i] for i in range(2, n - 1, 2))
    odd = sum(c[i] * c[n - i] for i in range(1, n, 2))
    return ParityCounts(even, odd)


def branch_parity_ratio(N: int) -> List[Tuple[int, Fraction]]:
    """Exact ratios a_(2n) / c_(2n) for 2n <= N, where a counts generators of the even binary submagma.

    The ratios tend to sqrt(2)/2.
    """
    if N < 2 or N % 2:
        raise BadParameter(f"branch_parity_ratio needs an even N >= 2, got {N}")
    g_s, a = submagma_generators(BINARY, 2, N)
    return [(n, a.coeffs[n] / g_s.coeffs[n]) for n in range(2, N + 1, 2)]
