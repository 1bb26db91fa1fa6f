"""
Growth of coefficient sequences.

Growth classes are asymptotic notions, so everything here except
gk_from_rational is a documented heuristic on a finite range:
- classify_growth fits log a_n against log n and against n on two windows
- fatou_classify combines rational recognition with the growth class
- hardy_ramanujan_compare checks partition counts against their asymptotics
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from hilbert_series.series_core import (
    InsufficientOrder,
    RationalFn,
    Series,
    UniPoly,
    find_linear_recurrence,
    named_series,
)


logger = logging.getLogger(__name__)


# ============================================================================
# Configuration
# ============================================================================

@dataclass(frozen=True)
class GrowthThresholds:
    """Decision constants for classify_growth.

    Attributes:
        ratio_cutoff: Exponential growth needs a rate above 1 + ratio_cutoff
        polynomial_max_exponent: Largest log2(q2/q1) still read as polynomial
        intermediate_min: Smallest log2(q2/q1) read as intermediate
        intermediate_max: Largest log2(q2/q1) read as intermediate
        exponential_min: Smallest log2(q2/q1) read as exponential
        min_order: Shortest series the classifier accepts
        bounded_slope: Log-log slopes below this mean bounded coefficients
        estimate_denominator: Denominator bound for rational estimates
    """
    ratio_cutoff: float = 1e-3
    polynomial_max_exponent: float = 0.25
    intermediate_min: float = 0.3
    intermediate_max: float = 0.8
    exponential_min: float = 0.85
    min_order: int = 32
    bounded_slope: float = 1e-9
    estimate_denominator: int = 1000


DEFAULT_THRESHOLDS = GrowthThresholds()

POLYNOMIAL = "Polynomial"
EXPONENTIAL = "Exponential"
INTERMEDIATE = "Intermediate"
INCONCLUSIVE = "Inconclusive"

RATIONAL = "Rational"
TRANSCENDENTAL_BY_FATOU = "TranscendentalByFatou"
EXPONENTIAL_INCONCLUSIVE = "ExponentialInconclusive"


# ============================================================================
# Custom Exceptions
# ============================================================================

class GrowthError(Exception):
    """Base exception for growth analysis."""
    pass


class NegativeCoefficients(GrowthError):
    """Raised when a growth heuristic receives a negative coefficient."""
    pass


@dataclass(frozen=True)
class GrowthReport:
    """Growth class with its estimate and the statistics behind it.

    Attributes:
        growth_class: Polynomial, Exponential, Intermediate or Inconclusive
        estimate: Degree estimate (Polynomial) or rate estimate (Exponential)
        evidence: Human-readable summary of the fitted statistics
        statistics: Fitted slopes by name
    """
    growth_class: str
    estimate: Optional[Fraction] = None
    evidence: str = ""
    statistics: Dict[str, float] = field(default_factory=dict, compare=False)

    def to_json(self) -> Dict[str, object]:
        return {
            "class": self.growth_class,
            "estimate": None if self.estimate is None else str(self.estimate),
            "evidence": self.evidence,
        }


@dataclass(frozen=True)
class FatouReport:
    kind: str
    rational: Optional[RationalFn] = None
    growth: Optional[GrowthReport] = None
    evidence: str = ""

    def to_json(self) -> Dict[str, object]:
        data: Dict[str, object] = {"class": self.kind, "evidence": self.evidence}
        if self.rational is not None:
            data["rational"] = self.rational.to_json()
        if self.growth is not None:
            data["growth"] = self.growth.to_json()
        return data


@dataclass(frozen=True)
class HRComparison:
    kind: str
    n: int
    exact: int
    estimate: float
    ratio: float

    def to_json(self) -> Dict[str, object]:
        return {"kind": self.kind, "n": self.n, "exact": self.exact, "estimate": self.estimate, "ratio": self.ratio}


# ============================================================================
# GK dimension
# ============================================================================

def gk_from_rational(rf: RationalFn) -> int:
    """Multiplicity of t = 1 as a pole of a reduced rational Hilbert series."""
    den = rf.den.to_sympy()
    root = UniPoly((-1, 1)).to_sympy()
    multiplicity = 0
    while den.degree() > 0 and den.eval(1) == 0:
        den = den.exquo(root)
        multiplicity += 1
    return multiplicity


def growth_function(f: Series) -> Series:
    """Partial sums a_0 + ... + a_n, the growth function of a graded algebra."""
    total = Fraction(0)
    sums = []
    for c in f.coeffs:
        total += c
        sums.append(total)
    return Series(f.order, tuple(sums))


# ============================================================================
# Heuristic classification
# ============================================================================

def _log(value: Fraction) -> float:
    return math.log(value.numerator) - math.log(value.denominator)


def _slope(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.polyfit(x, y, 1)[0])


def _rational_estimate(value: float, thresholds: GrowthThresholds) -> Fraction:
    return Fraction(value).limit_denominator(thresholds.estimate_denominator)


def classify_growth(f: Series, thresholds: GrowthThresholds = DEFAULT_THRESHOLDS) -> GrowthReport:
    """Classify coefficient growth on the stored range.

    The running maximum b_n of a_1..a_n is fitted on the windows
    [N/4, N/2] and [N/2, N], giving log-log slopes q1, q2 and log-linear
    slopes e1, e2. For n^k the ratio q2/q1 stays near 1, for r^n it is near
    2, for exp(c n^alpha) near 2^alpha. With gamma = log2(q2/q1):
        bounded b                 -> Polynomial of degree 0
        gamma <= 0.25             -> Polynomial, degree about 2 q2 - q1
        gamma >= 0.85             -> Exponential, rate about exp(2 e2 - e1)
        0.3 <= gamma <= 0.8, e2 < e1 -> Intermediate
    and Inconclusive otherwise.

    Raises:
        InsufficientOrder: If f.order < thresholds.min_order
        NegativeCoefficients: If some coefficient is negative
    """
    N = f.order
    if N < thresholds.min_order:
        raise InsufficientOrder(f"classify_growth needs order >= {thresholds.min_order}, got {N}")
    if any(c < 0 for c in f.coeffs):
        raise NegativeCoefficients("Growth classification needs nonnegative coefficients")

    envelope: List[Fraction] = []
    running = Fraction(0)
    for c in f.coeffs[1:]:
        running = max(running, c)
        envelope.append(running)
    if running == 0:
        return GrowthReport(POLYNOMIAL, Fraction(0), "coefficients vanish beyond degree 0")

    first = next(n for n, b in enumerate(envelope, start=1) if b > 0)
    windows = [(max(first, N // 4), N // 2), (max(first, N // 2), N)]
    if windows[0][1] - windows[0][0] < 2:
        return GrowthReport(INCONCLUSIVE, None, f"first nonzero coefficient at {first} leaves no fitting window")

    q, e = [], []
    for lo, hi in windows:
        n = np.arange(lo, hi + 1, dtype=float)
        logs = np.array([_log(envelope[k - 1]) for k in range(lo, hi + 1)])
        q.append(_slope(np.log(n), logs))
        e.append(_slope(n, logs))
    stats = {"q1": q[0], "q2": q[1], "e1": e[0], "e2": e[1]}
    evidence = f"log-log slopes {q[0]:.4f}, {q[1]:.4f}; log-linear slopes {e[0]:.4f}, {e[1]:.4f}"
    logger.debug("classify_growth: %s", evidence)

    if q[1] <= thresholds.bounded_slope:
        return GrowthReport(POLYNOMIAL, Fraction(0), evidence + "; bounded", stats)
    if q[0] <= thresholds.bounded_slope:
        return GrowthReport(INCONCLUSIVE, None, evidence + "; growth starts late in the range", stats)

    gamma = math.log2(q[1] / q[0])
    stats["gamma"] = gamma
    evidence += f"; gamma {gamma:.4f}"
    if gamma <= thresholds.polynomial_max_exponent:
        degree = 2 * q[1] - q[0]
        return GrowthReport(POLYNOMIAL, _rational_estimate(degree, thresholds), evidence, stats)
    if gamma >= thresholds.exponential_min:
        rate = math.exp(2 * e[1] - e[0])
        if rate > 1 + thresholds.ratio_cutoff:
            return GrowthReport(EXPONENTIAL, _rational_estimate(rate, thresholds), evidence, stats)
        return GrowthReport(INCONCLUSIVE, None, evidence + f"; rate {rate:.6f} too close to 1", stats)
    if thresholds.intermediate_min <= gamma <= thresholds.intermediate_max and e[1] < e[0]:
        return GrowthReport(INTERMEDIATE, None, evidence, stats)
    logger.warning("Growth inconclusive: %s", evidence)
    return GrowthReport(INCONCLUSIVE, None, evidence, stats)


def fatou_classify(
    f: Series,
    max_den_deg: int,
    thresholds: GrowthThresholds = DEFAULT_THRESHOLDS,
) -> FatouReport:
    """Rational, or transcendental by Fatou's theorem, or undecided.

    A series with integer coefficients of subexponential growth is either
    rational or transcendental. A TranscendentalByFatou verdict is
    conditional: no recurrence with denominator degree <= max_den_deg fits
    the data, which does not exclude a longer one.

    Raises:
        InsufficientOrder: If f is too short for the recogniser or the classifier
        NegativeCoefficients: If a coefficient is negative or fractional
    """
    if any(c < 0 or c.denominator != 1 for c in f.coeffs):
        raise NegativeCoefficients("Fatou's dichotomy needs nonnegative integer coefficients")
    rf = find_linear_recurrence(f, max_den_deg)
    if rf is not None:
        return FatouReport(RATIONAL, rational=rf, evidence=f"recurrence with denominator {rf.den}")
    report = classify_growth(f, thresholds)
    if report.growth_class in (POLYNOMIAL, INTERMEDIATE):
        return FatouReport(
            TRANSCENDENTAL_BY_FATOU,
            growth=report,
            evidence=(
                f"{report.growth_class} growth and no rational form with denominator degree <= {max_den_deg}; "
                "transcendental unless a longer recurrence exists"
            ),
        )
    return FatouReport(
        EXPONENTIAL_INCONCLUSIVE,
        growth=report,
        evidence=f"{report.growth_class} growth; Fatou's theorem does not apply",
    )


def hardy_ramanujan_estimate(kind: str, n: int) -> float:
    """Leading asymptotic for partitions (p) and partitions into distinct parts (rho)."""
    if kind == "p":
        return math.exp(math.pi * math.sqrt(2 * n / 3)) / (4 * n * math.sqrt(3))
    if kind == "rho":
        return math.exp(math.pi * math.sqrt(n / 3)) / (4 * 3 ** 0.25 * n ** 0.75)
    raise GrowthError(f"Unknown partition kind {kind!r}; expected 'p' or 'rho'")


def hardy_ramanujan_compare(kind: str, n: int) -> HRComparison:
    """Exact partition count against its leading asymptotic.

    Raises:
        GrowthError: For an unknown kind or n < 1
    """
    if n < 1:
        raise GrowthError(f"n must be >= 1, got {n}")
    estimate = hardy_ramanujan_estimate(kind, n)
    series = named_series("euler_partitions" if kind == "p" else "distinct_parts", n)
    exact = series.coeffs[n].numerator
    return HRComparison(kind, n, exact, estimate, exact / estimate)


def hardy_ramanujan_table(kind: str, values: Tuple[int, ...] = (100, 400, 1600)) -> List[HRComparison]:
    return [hardy_ramanujan_compare(kind, n) for n in values]
