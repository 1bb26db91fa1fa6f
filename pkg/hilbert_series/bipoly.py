"""
Transforms of bivariate polynomials and branch lifting.

The free Omega-magma over a graded generating set has a series f(t) solving
p(f) - f + a(t) = 0. When a(t) or p(z) is itself algebraic, an annihilator
of f is obtained from the annihilator of the input by one of three moves:
- shift_transform: b(t, z) -> b(z, z - t)
- substitute_case2: q(t, z) -> q(t, z - p(z)) for polynomial p
- resultant_case3: eliminate the intermediate variable with a resultant

series_root expands the branch of an annihilator selected by a seed.
"""

import logging
from typing import Optional

import sympy as sp
from sympy.polys.subresultants_qq_zz import sylvester

from hilbert_series.series_core import (
    T,
    Z,
    BiPoly,
    Series,
    UniPoly,
    annihilator_residual,
    INFINITY,
)


logger = logging.getLogger(__name__)

U = sp.Symbol("u")


# ============================================================================
# Custom Exceptions
# ============================================================================

class BiPolyError(Exception):
    """Base exception for bivariate polynomial operations."""
    pass


class ZeroPolynomial(BiPolyError):
    """Raised when an input or a resultant is the zero polynomial."""
    pass


class BadOperationPolynomial(BiPolyError):
    """Raised when an operation polynomial has a constant or linear term."""
    pass


class NoSeriesBranch(BiPolyError):
    """Raised when no series extends the seed as a root of the polynomial."""
    pass


class AmbiguousBranch(BiPolyError):
    """Raised when the seed does not determine the next coefficient."""
    pass


def shift_transform(b: BiPoly) -> BiPoly:
    """Return b(z, z - t), normalized.

    If b annihilates the operation series p(t), the result annihilates the
    one-generator magma series, which solves p(z) - z + t = 0.

    Example:
        >>> str(shift_transform(BiPoly.from_expr(Z - T**2)))
        'z^2 - z + t'
    """
    expr = b.to_expr().subs({T: Z, Z: Z - T}, simultaneous=True)
    return BiPoly.from_expr(expr).normalized()


def substitute_case2(q: BiPoly, p: UniPoly) -> BiPoly:
    """Return q(t, z - p(z)), normalized.

    Args:
        q: Annihilator of the generator series a(t)
        p: Operation polynomial, read as a polynomial in z

    Raises:
        BadOperationPolynomial: If p has a constant or linear term
    """
    valuation = p.valuation()
    if valuation is not None and valuation < 2:
        raise BadOperationPolynomial(f"Operation polynomial {p} must have valuation >= 2")
    expr = q.to_expr().subs(Z, Z - p.to_expr(Z))
    return BiPoly.from_expr(expr).normalized()


def resultant_case3(q: BiPoly, b: BiPoly) -> BiPoly:
    """Res_z(q(t, z), b(u, u - z)) as a normalized polynomial in (t, u).

    q annihilates the generator series a(t) and b annihilates the operation
    series p(t). The resultant is taken from the Sylvester matrix with a
    fraction-free determinant; the variable u occupies the z slot of the
    returned BiPoly.

    Raises:
        ZeroPolynomial: If an input or the resultant is zero
        BiPolyError: If q does not involve z
    """
    if q.is_zero() or b.is_zero():
        raise ZeroPolynomial("resultant_case3 needs nonzero inputs")
    if q.degree_z < 1:
        raise BiPolyError(f"First argument {q} must have positive z-degree")

    q_expr = q.to_expr()
    b_expr = b.to_expr().subs({T: U, Z: U - Z}, simultaneous=True)
    matrix = sylvester(sp.expand(q_expr), sp.expand(b_expr), Z)
    logger.debug("Sylvester matrix of size %s", matrix.shape)
    res = sp.expand(matrix.det(method="bareiss"))
    if res == 0:
        raise ZeroPolynomial(f"Resultant of {q} and {b} vanishes identically")
    return BiPoly.from_expr(res.subs(U, Z)).normalized()


def series_root(P: BiPoly, N: int, seed: Series) -> Series:
    """Extend `seed` to the unique root of P of order N.

    With v the valuation of dP/dz along the seed, each new coefficient is
    fixed by the t^(n+v) coefficient of P(t, f):
        c_n = -[t^(n+v)] P(t, f_<n) / [t^v] P_z(t, seed)

    Args:
        P: Annihilating polynomial
        N: Target truncation order
        seed: Low-order coefficients selecting the branch, seed(0) = 0

    Returns:
        Series of order N with annihilator_residual(P, result) = INFINITY

    Raises:
        AmbiguousBranch: If P_z vanishes along the seed to its full order
        NoSeriesBranch: If the seed does not solve P to the required order
    """
    if P.is_zero():
        raise ZeroPolynomial("Cannot take roots of the zero polynomial")
    if seed.coeffs[0] != 0:
        raise NoSeriesBranch("Seed must have zero constant term")
    m = seed.order
    if N <= m:
        return _checked(P, seed.truncate(N))

    slope = P.derivative_z().evaluate(seed)
    v: Optional[int] = slope.valuation()
    if v is None:
        raise AmbiguousBranch(f"dP/dz vanishes along the seed to order {m}; extend the seed")
    pivot = slope.coeffs[v]

    work = N + v
    coeffs = list(seed.coeffs) + [0] * (work - m)
    value = P.evaluate(Series.from_coeffs(coeffs, work))
    bad = next((n for n in range(m + v + 1) if value.coeffs[n] != 0), None)
    if bad is not None:
        raise NoSeriesBranch(f"Seed does not solve {P}: nonzero coefficient at t^{bad}")

    for n in range(m + 1, N + 1):
        value = P.evaluate(Series.from_coeffs(coeffs, work))
        coeffs[n] = -value.coeffs[n + v] / pivot
    result = Series.from_coeffs(coeffs[:N + 1], N)
    logger.info("Lifted branch of %s to order %d", P, N)
    return _checked(P, result)


def _checked(P: BiPoly, f: Series) -> Series:
    if annihilator_residual(P, f) != INFINITY:
        raise NoSeriesBranch(f"Lifted series does not annihilate {P}")
    return f
