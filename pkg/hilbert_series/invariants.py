"""
Hilbert series of algebras of invariants.

For a finite matrix group G the commutative invariants are counted by the
Molien average of 1/det(I - tg) and the invariants of the free associative
algebra by the average of 1/(1 - tr(g) t). Invariants of SL2 and UT2 in two
free variables have algebraic closed forms, and their nonassociative
analogues are given by integrals that expand exactly through Wallis values.
Character counts of tensor powers give an independent oracle for both.
"""

import json
import logging
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Sequence, Tuple, Union

import sympy as sp

from hilbert_series.series_core import (
    T,
    RationalFn,
    Series,
    UniPoly,
    expand_rational,
    sqrt_one_plus,
    to_fraction,
)


logger = logging.getLogger(__name__)


# ============================================================================
# Constants
# ============================================================================

DEFAULT_MAX_GROUP_ORDER = 10_000

CLOSED_FORM_KINDS = ("sl2_assoc", "ut2_assoc", "sl2_assoc_gens", "ut2_assoc_gens")
ORACLE_KINDS = ("sl2_nonassoc", "ut2_nonassoc", "sl2_assoc", "ut2_assoc")
ELLIPTIC_KINDS = ("sl2_literal", "ut2_literal", "sl2_weylfixed")


# ============================================================================
# Custom Exceptions
# ============================================================================

class InvariantsError(Exception):
    """Base exception for invariant-theory computations."""
    pass


class NotInvertible(InvariantsError):
    """Raised when a generator matrix is singular."""
    pass


class OrderExceeded(InvariantsError):
    """Raised when the generated group grows past the allowed order."""
    pass


class ConstantTermNotOne(InvariantsError):
    """Raised when a Hilbert series does not start with 1."""
    pass


class InvalidGroup(InvariantsError):
    """Raised for non-square or mismatched matrices, or element lists that are not groups."""
    pass


class UnknownSeriesKind(InvariantsError):
    """Raised for a series kind this module does not provide."""
    pass


def to_matrix(rows: Sequence[Sequence]) -> sp.ImmutableMatrix:
    """Exact square matrix from nested rows of ints, Fractions or fraction strings."""
    try:
        entries = [[sp.Rational(str(to_fraction(x))) for x in row] for row in rows]
    except Exception as e:
        raise InvalidGroup(f"Bad matrix entries: {e}") from e
    if not entries or any(len(row) != len(entries) for row in entries):
        raise InvalidGroup(f"Matrix must be square and nonempty, got {rows}")
    return sp.ImmutableMatrix(entries)


@dataclass(frozen=True)
class MatrixGroup:
    """A finite group of d x d rational matrices, given by all of its elements."""
    elements: Tuple[sp.ImmutableMatrix, ...]
    name: str = ""

    def __post_init__(self):
        if not self.elements:
            raise InvalidGroup("A group has at least one element")
        d = self.elements[0].shape[0]
        for g in self.elements:
            if g.shape != (d, d):
                raise InvalidGroup(f"Element of shape {g.shape} in a group of {d}x{d} matrices")
        members = set(self.elements)
        if len(members) != len(self.elements):
            raise InvalidGroup("Group elements must be distinct")
        if sp.eye(d).as_immutable() not in members:
            raise InvalidGroup("Group does not contain the identity")
        for g in self.elements:
            for h in self.elements:
                if (g * h).as_immutable() not in members:
                    raise InvalidGroup("Element list is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def d(self) -> int:
        return self.elements[0].shape[0]

    def to_json(self) -> Dict[str, object]:
        return {
            "size": self.order,
            "elements": [[[str(x) for x in g.row(i)] for i in range(self.d)] for g in self.elements],
        }

    @classmethod
    def from_json(cls, data: Union[str, Mapping], name: str = "") -> "MatrixGroup":
        if isinstance(data, str):
            data = json.loads(data)
        if "generators" in data:
            return group_closure([to_matrix(g) for g in data["generators"]], name=name)
        try:
            elements = tuple(to_matrix(g) for g in data["elements"])
        except (KeyError, TypeError) as e:
            raise InvalidGroup(f"Malformed group JSON: {e}") from e
        if "size" in data and int(data["size"]) != len(elements):
            raise InvalidGroup(f"Declared size {data['size']} but {len(elements)} elements listed")
        return cls(elements, name)


def group_closure(gens: Sequence, max_order: int = DEFAULT_MAX_GROUP_ORDER, name: str = "") -> MatrixGroup:
    """Group generated by invertible matrices, by breadth-first multiplication.

    Raises:
        NotInvertible: If a generator is singular
        OrderExceeded: If more than max_order elements are produced
        InvalidGroup: If generators have different sizes
    """
    matrices = [g if isinstance(g, sp.ImmutableMatrix) else to_matrix(g) for g in gens]
    if not matrices:
        raise InvalidGroup("Need at least one generator")
    d = matrices[0].shape[0]
    for g in matrices:
        if g.shape != (d, d):
            raise InvalidGroup(f"Generator of shape {g.shape}, expected {(d, d)}")
        if g.det() == 0:
            raise NotInvertible(f"Generator {g.tolist()} is singular")

    identity = sp.eye(d).as_immutable()
    elements = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in matrices:
            product = (current * g).as_immutable()
            if product in seen:
                continue
            seen.add(product)
            elements.append(product)
            if len(elements) > max_order:
                raise OrderExceeded(f"Group order exceeds {max_order}")
            queue.append(product)
    logger.debug("Closed group %s of order %d", name, len(elements))
    return MatrixGroup(tuple(elements), name)


def _permutation(images: Sequence[int]) -> List[List[int]]:
    """Matrix sending e_i to e_images[i] (0-based)."""
    size = len(images)
    rows = [[0] * size for _ in range(size)]
    for i, j in enumerate(images):
        rows[j][i] = 1
    return rows


NAMED_GROUP_GENERATORS = {
    "S2": [_permutation([1, 0])],
    "C3": [_permutation([1, 2, 0])],
    "S3": [_permutation([1, 2, 0]), _permutation([1, 0, 2])],
    "trivial2": [_permutation([0, 1])],
    "trivial3": [_permutation([0, 1, 2])],
}


def named_group(name: str) -> MatrixGroup:
    """One of the example permutation groups: S2, C3, S3, trivial2, trivial3."""
    try:
        gens = NAMED_GROUP_GENERATORS[name]
    except KeyError:
        raise InvalidGroup(f"Unknown group {name!r}; expected one of {sorted(NAMED_GROUP_GENERATORS)}")
    return group_closure(gens, name=name)


# ============================================================================
# Molien-type averages
# ============================================================================

def _average(G: MatrixGroup, denominators: List, N: int) -> Tuple[Series, RationalFn]:
    series = Series.zero(N)
    for den in denominators:
        series = series + expand_rational(RationalFn(UniPoly((1,)), UniPoly.from_expr(den)), N)
    series = series / G.order
    rf = RationalFn.from_expr(sp.Add(*[1 / den for den in denominators]) / G.order)
    return series, rf


def molien_commutative(G: MatrixGroup, N: int) -> Tuple[Series, RationalFn]:
    """Hilbert series of the commutative invariants K[x_1..x_d]^G.

    Returns:
        (average of the expansions of 1/det(I - tg), the reduced average as a rational function)
    """
    identity = sp.eye(G.d)
    dets = [sp.expand((identity - T * g).det(method="bareiss")) for g in G.elements]
    return _average(G, dets, N)


def dicks_formanek(G: MatrixGroup, N: int) -> Tuple[Series, RationalFn]:
    """Hilbert series of the invariants of G in the free associative algebra.

    Returns:
        (average of the expansions of 1/(1 - tr(g) t), the reduced rational function)
    """
    return _average(G, [1 - g.trace() * T for g in G.elements], N)


class FreeGenerators(NamedTuple):
    series: Series
    nonnegative_integral: bool


def free_generator_series(H: Series) -> FreeGenerators:
    """Generator series a = 1 - 1/H of a free subalgebra with Hilbert series H.

    Negative or fractional coefficients in a show that H cannot be the
    Hilbert series of a free algebra.

    Raises:
        ConstantTermNotOne: If H(0) != 1
    """
    if H.coeffs[0] != 1:
        raise ConstantTermNotOne(f"Hilbert series must start with 1, got {H.coeffs[0]}")
    a = 1 - Series.one(H.order) / H
    flag = a.is_nonnegative_integer()
    if not flag:
        logger.warning("Generator series has a negative or fractional coefficient; the algebra is not free")
    return FreeGenerators(a, flag)


# ============================================================================
# SL2 and UT2
# ============================================================================

def closed_form_series(kind: str, N: int) -> Series:
    """Expansions of the algebraic Hilbert series of SL2 and UT2 invariants in two free variables.

    With s = sqrt(1 - 4t^2):
        sl2_assoc: (1 - s) / (2t^2)
        ut2_assoc: (1 - s) / (t (2t - 1 + s))
    and the *_gens kinds are the free generator series 1 - 1/H.
    """
    if kind not in CLOSED_FORM_KINDS:
        raise UnknownSeriesKind(f"Unknown closed form {kind!r}; expected one of {CLOSED_FORM_KINDS}")
    s = sqrt_one_plus(Series.monomial(2, N + 2, -4))
    if kind.startswith("sl2"):
        H = Series(N, tuple(-s.coeffs[n + 2] / 2 for n in range(N + 1)))
    else:
        numerator = Series(N, tuple(-s.coeffs[n + 2] for n in range(N + 1)))
        shifted = list(s.coeffs)
        shifted[0] -= 1
        shifted[1] += 2
        denominator = Series(N, tuple(shifted[n + 1] for n in range(N + 1)))
        H = numerator / denominator
    if kind.endswith("_gens"):
        return free_generator_series(H).series
    return H


def _catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _tree_shapes(n: int) -> int:
    """Planar binary trees with n leaves."""
    return _catalan(n - 1) if n >= 1 else 0


def weyl_oracle_dims(kind: str, N: int) -> Series:
    """Invariant dimensions in tensor powers of the natural module.

    SL2 invariants of V^(x)n number Cat(n/2) for even n; UT2 invariants
    number C(n, floor(n/2)). Nonassociative kinds multiply by the number of
    binary bracketings of n letters.
    """
    if kind not in ORACLE_KINDS:
        raise UnknownSeriesKind(f"Unknown oracle kind {kind!r}; expected one of {ORACLE_KINDS}")
    values = []
    for n in range(N + 1):
        if kind.startswith("sl2"):
            dim = _catalan(n // 2) if n % 2 == 0 else 0
        else:
            dim = math.comb(n, n // 2)
        if kind.endswith("nonassoc"):
            dim *= _tree_shapes(n)
        values.append(dim)
    return Series.from_coeffs(values, N)


def _wallis(m: int) -> Fraction:
    """Integral of cos^m(2 pi u) over [0, 1]."""
    if m % 2:
        return Fraction(0)
    return Fraction(math.comb(m, m // 2), 2 ** m)


def elliptic_integral_series(kind: str, N: int) -> Series:
    """Exact expansion of the integral Hilbert series of nonassociative invariants.

    1 - sqrt(1 - 8ts) = 2 sum_n c_n (2ts)^n with c_n the binary tree counts,
    integrated termwise against:
        sl2_literal: sin^2(2 pi u) with s = sin(2 pi u)
        ut2_literal: cos^2(pi u) with s = cos(2 pi u)
        sl2_weylfixed: sin^2(2 pi u) with s = cos(2 pi u)
    Only sl2_weylfixed and ut2_literal agree with the character counts; the
    literal SL2 integrand gives 3 instead of 1 at t^2.
    """
    if kind not in ELLIPTIC_KINDS:
        raise UnknownSeriesKind(f"Unknown integral kind {kind!r}; expected one of {ELLIPTIC_KINDS}")
    values = [Fraction(0)]
    for n in range(1, N + 1):
        scale = _tree_shapes(n) * 2 ** n
        if kind == "sl2_literal":
            value = 2 * scale * _wallis(n + 2)
        elif kind == "ut2_literal":
            value = scale * (_wallis(n) + _wallis(n + 1))
        else:
            value = 2 * scale * (_wallis(n) - _wallis(n + 2))
        values.append(value)
    return Series(N, tuple(values))
