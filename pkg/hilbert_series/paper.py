"""
End-to-end reproduction of the worked examples.

Each suite row recomputes one example from scratch and compares it with
the printed values stored in fixtures/paper_golden.json. Rows needing a
larger truncation order than the caller allows are SKIPPED rather than
failed. The result is a pandas DataFrame with one row per example.
"""

import json
import logging
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional

import pandas as pd
import sympy as sp

from hilbert_series import growth, invariants, magma, monomial
from hilbert_series.bipoly import series_root
from hilbert_series.series_core import (
    T,
    Z,
    INFINITY,
    BiPoly,
    RationalFn,
    Series,
    UniPoly,
    annihilator_residual,
    catalan_series,
    expand_rational,
    guess_algebraic_equation,
    named_series,
)


logger = logging.getLogger(__name__)


# ============================================================================
# Constants
# ============================================================================

GOLDEN_PATH = Path(__file__).parent / "fixtures" / "paper_golden.json"
SUITE_TIME_BUDGET_S = 60
SUITE_SEED = 20240101

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"
ERROR = "ERROR"

COLUMNS = ["id", "description", "required_order", "status", "detail", "seconds"]


class GoldenFileError(Exception):
    """Raised when the golden fixture cannot be read or lacks a section."""
    pass


@dataclass(frozen=True)
class SuiteRow:
    id: str
    description: str
    required_order: int
    check: Callable[[Mapping], str]


def load_golden(path: Optional[Path] = None) -> Dict:
    path = Path(path) if path is not None else GOLDEN_PATH
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise GoldenFileError(f"Cannot read golden file {path}: {e}") from e
    if not isinstance(data, dict):
        raise GoldenFileError(f"Golden file {path} must hold a JSON object")
    return data


def _expr(text: str):
    return sp.sympify(text, locals={"t": T, "z": Z})


def _rational(text: str) -> RationalFn:
    return RationalFn.from_expr(_expr(text))


def _equation(text: str) -> BiPoly:
    return BiPoly.from_expr(_expr(text)).normalized()


def _section(golden: Mapping, key: str) -> Mapping:
    try:
        return golden[key]
    except KeyError:
        raise GoldenFileError(f"Golden file has no section {key!r}")


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise AssertionError(message)


# ============================================================================
# Rows
# ============================================================================

def _check_catalan(golden: Mapping) -> str:
    N = 30
    f = magma.magma_series(magma.BINARY, magma.GeneratorWeights.single(N), N)
    for n in range(1, N + 1):
        expected = math.comb(2 * n - 2, n - 1) // n
        _expect(f[n] == expected, f"c_{n} = {f[n]}, expected {expected}")
    P = _equation(_section(golden, "catalan")["equation"])
    _expect(annihilator_residual(P, f) == INFINITY, f"{P} does not annihilate the Catalan series")
    return f"c_1..c_{N} exact; {P} annihilates"


def _check_even_branch(golden: Mapping) -> str:
    expected = _section(golden, "even_branch")
    _, a = magma.submagma_generators(magma.BINARY, 2, 40)
    c = catalan_series(20)
    for n in range(1, 21):
        _expect(a[2 * n] == 4 ** (n - 1) * c[n], f"a_{2 * n} = {a[2 * n]}, expected 4^{n - 1} c_{n}")
    P = guess_algebraic_equation(a, 2, 2)
    _expect(P == _equation(expected["equation"]), f"guessed {P}")
    ratio = dict(magma.branch_parity_ratio(100))[100]
    gap = abs(float(ratio) - float(expected["ratio_limit"]))
    _expect(gap <= float(expected["ratio_tolerance"]), f"a_100/c_100 = {float(ratio):.6f}")
    return f"equation {P}; a_100/c_100 = {float(ratio):.6f}"


def _check_s3_quartic(golden: Mapping) -> str:
    expected = _section(golden, "s3_quartic")
    _, a = magma.submagma_generators(magma.BINARY, 3, 48)
    for n, value in expected["coefficients"].items():
        _expect(a[int(n)] == Fraction(value), f"a_{n} = {a[int(n)]}, expected {value}")
    P = guess_algebraic_equation(a, 4, 3)
    _expect(P == _equation(expected["equation"]), f"guessed {P}")
    lifted = series_root(P, 21, a.truncate(3))
    _expect(lifted == a.truncate(21), "branch lifted from 2t^3 differs from the generator series")
    return f"equation {P}"


def _check_super_catalan(golden: Mapping) -> str:
    expected = _section(golden, "super_catalan_even")
    _, a = magma.submagma_generators(magma.SUPER_CATALAN, 2, 48)
    for n, value in expected["coefficients"].items():
        _expect(a[int(n)] == Fraction(value), f"a_{n} = {a[int(n)]}, expected {value}")
    P = guess_algebraic_equation(a, 4, 4)
    _expect(P == _equation(expected["equation"]), f"guessed {P}")
    return f"equation {P}"


def _check_tree_oracle(golden: Mapping) -> str:
    for sig, top in ((magma.BINARY, 12), (magma.BINARY_TERNARY, 10)):
        f = magma.magma_series(sig, magma.GeneratorWeights.single(top), top)
        for n in range(1, top + 1):
            count = magma.brute_force_count(sig, n)
            _expect(count == f[n], f"{sig.name}: {count} trees with {n} leaves, series says {f[n]}")
    return "binary n<=12, binary_ternary n<=10"


def _random_presentation(rng: random.Random) -> monomial.MonomialPresentation:
    d = rng.randint(1, 3)
    words = []
    for _ in range(rng.randint(0, 4)):
        length = rng.randint(1, 4) if d > 1 else rng.randint(2, 4)
        words.append(tuple(rng.randint(1, d) for _ in range(length)))
    return monomial.MonomialPresentation(d, tuple(words))


def _check_transfer_matrix(golden: Mapping) -> str:
    rng = random.Random(SUITE_SEED)
    for _ in range(100):
        pres = _random_presentation(rng)
        brute = monomial.normal_count(pres, 20)
        rf = monomial.hilbert_rational(pres)
        _expect(expand_rational(rf, 20) == brute, f"{pres.to_json()}: {rf} disagrees with normal words")
        graph = monomial.build_graph(pres)
        edges = len(monomial.words_of_length(pres, graph.k + 1))
        _expect(len(graph.edges) == edges, f"{pres.to_json()}: {len(graph.edges)} edges, {edges} words")
    return "100 random presentations"


def _check_borho_kraft(golden: Mapping) -> str:
    rng = random.Random(SUITE_SEED + 1)
    for _ in range(50):
        S = {s for s in range(11) if rng.random() < 0.4}
        series = monomial.borho_kraft_series(S, 25)
        closed = expand_rational(monomial.borho_kraft_closed_form(S), 25)
        _expect(series == closed, f"S={sorted(S)}: combinatorial count differs from closed form")
    return "50 random gap sets"


def _check_molien(golden: Mapping) -> str:
    expected = _section(golden, "molien")
    for name in ("S2", "C3"):
        series, rf = invariants.molien_commutative(invariants.named_group(name), 8)
        _expect(rf == _rational(expected[name]), f"{name}: got {rf}")
        _expect(series == expand_rational(rf, 8), f"{name}: averaged series differs from {rf}")
    return "S2, C3"


def _check_dicks_formanek(golden: Mapping) -> str:
    expected = _section(golden, "dicks_formanek")
    for name in ("S2", "C3"):
        row = expected[name]
        series, rf = invariants.dicks_formanek(invariants.named_group(name), 8)
        _expect(rf == _rational(row["rational"]), f"{name}: got {rf}")
        head = [str(c) for c in series.coeffs[:len(row["series"])]]
        _expect(head == row["series"], f"{name}: series starts {head}")
        gens = invariants.free_generator_series(series).series
        _expect(gens == expand_rational(_rational(row["generators"]), 8), f"{name}: generators {gens}")
    return "S2, C3"


def _check_closed_forms(golden: Mapping) -> str:
    N = 40
    sl2 = invariants.closed_form_series("sl2_assoc", N)
    c = catalan_series(N // 2 + 1)
    for n in range(1, N // 2 + 2):
        _expect(sl2[2 * (n - 1)] == c[n], f"t^{2 * (n - 1)} coefficient {sl2[2 * (n - 1)]} is not c_{n}")
    _expect(sl2 == invariants.weyl_oracle_dims("sl2_assoc", N), "sl2 closed form differs from the oracle")
    ut2 = invariants.closed_form_series("ut2_assoc", N)
    _expect(ut2 == invariants.weyl_oracle_dims("ut2_assoc", N), "ut2 closed form differs from the oracle")
    difference = invariants.closed_form_series("ut2_assoc_gens", N) - invariants.closed_form_series("sl2_assoc_gens", N)
    _expect(difference == Series.monomial(1, N), f"a_UT2 - a_SL2 = {difference}")
    return f"to order {N}"


def _check_elliptic(golden: Mapping) -> str:
    expected = _section(golden, "elliptic")
    N = 16
    ut2 = invariants.elliptic_integral_series("ut2_literal", N)
    _expect(ut2 == invariants.weyl_oracle_dims("ut2_nonassoc", N), "ut2 integral differs from the oracle")
    fixed = invariants.elliptic_integral_series("sl2_weylfixed", N)
    oracle = invariants.weyl_oracle_dims("sl2_nonassoc", N)
    _expect(fixed == oracle, "cos-variant sl2 integral differs from the oracle")
    literal = invariants.elliptic_integral_series("sl2_literal", N)
    for series in (ut2, fixed, literal):
        _expect(all(x.denominator == 1 for x in series.coeffs), "non-integer coefficient")
    _expect(literal[2] == Fraction(expected["sl2_literal_t2"]), f"literal t^2 coefficient {literal[2]}")
    _expect(oracle[2] == Fraction(expected["oracle_t2"]), f"oracle t^2 coefficient {oracle[2]}")
    return f"sin-integrand t^2 coefficient {literal[2]} vs {oracle[2]} invariants"


def _check_partitions(golden: Mapping) -> str:
    expected = _section(golden, "partitions")
    series = named_series("euler_partitions", 100)
    oracle = [0] * 101
    oracle[0] = 1
    for part in range(1, 101):
        for n in range(part, 101):
            oracle[n] += oracle[n - part]
    _expect(series == Series.from_coeffs(oracle, 100), "partition product differs from the DP")
    _expect(series[100] == int(expected["p100"]), f"p_100 = {series[100]}")
    low = growth.hardy_ramanujan_compare("p", 100)
    high = growth.hardy_ramanujan_compare("p", 1600)
    _expect(float(expected["ratio_low"]) <= low.ratio <= float(expected["ratio_high"]), f"ratio {low.ratio:.4f}")
    _expect(abs(high.ratio - 1) < abs(low.ratio - 1), f"ratios {low.ratio:.4f} then {high.ratio:.4f}")
    return f"ratios {low.ratio:.4f} (n=100), {high.ratio:.4f} (n=1600)"


def _check_fatou(golden: Mapping) -> str:
    expected = _rational(_section(golden, "fatou")["rational"])
    rational = growth.fatou_classify(expand_rational(expected, 32), 4)
    _expect(rational.kind == growth.RATIONAL and rational.rational == expected, f"got {rational.kind}")
    partitions = named_series("euler_partitions", 200)
    report = growth.classify_growth(partitions)
    _expect(report.growth_class == growth.INTERMEDIATE, f"partitions: {report.growth_class}")
    verdict = growth.fatou_classify(partitions, 16)
    _expect(verdict.kind == growth.TRANSCENDENTAL_BY_FATOU, f"partitions: {verdict.kind}")
    catalan = growth.fatou_classify(catalan_series(64), 8)
    _expect(catalan.kind == growth.EXPONENTIAL_INCONCLUSIVE, f"catalan: {catalan.kind}")
    return "Rational / TranscendentalByFatou / ExponentialInconclusive"


def _check_gk(golden: Mapping) -> str:
    expected = _section(golden, "gk")
    dim = growth.gk_from_rational(_rational(expected["rational"]))
    _expect(dim == expected["dimension"], f"GK dimension {dim}")
    num, den = sp.fraction(_expr(expected["unreduced"]))
    unreduced = RationalFn(
        UniPoly.from_expr(num),
        UniPoly.from_expr(den),
    )
    _expect(growth.gk_from_rational(unreduced) == dim, "unreduced input changes the GK dimension")
    return f"GK dimension {dim}"


SUITE: List[SuiteRow] = [
    SuiteRow("catalan", "Catalan numbers and z^2 - z + t", 30, _check_catalan),
    SuiteRow("even_branch", "even binary submagma, 4z^2 - z + t^2, ratio sqrt(2)/2", 100, _check_even_branch),
    SuiteRow("s3_quartic", "binary submagma s=3 and its quartic", 48, _check_s3_quartic),
    SuiteRow("super_catalan_even", "super-Catalan even submagma and its quartic", 48, _check_super_catalan),
    SuiteRow("tree_oracle", "structural tree counts vs generating function", 12, _check_tree_oracle),
    SuiteRow("transfer_matrix", "Ufnarovskij transfer matrix vs normal words", 20, _check_transfer_matrix),
    SuiteRow("borho_kraft", "Borho-Kraft counts vs closed form", 25, _check_borho_kraft),
    SuiteRow("molien", "Molien series of S2 and C3", 8, _check_molien),
    SuiteRow("dicks_formanek", "free-algebra invariants of S2 and C3", 8, _check_dicks_formanek),
    SuiteRow("closed_forms", "SL2 and UT2 invariants in two free variables", 40, _check_closed_forms),
    SuiteRow("elliptic", "nonassociative invariants via integrals", 16, _check_elliptic),
    SuiteRow("partitions", "partition numbers and Hardy-Ramanujan", 1600, _check_partitions),
    SuiteRow("fatou", "Fatou dichotomy pipeline", 200, _check_fatou),
    SuiteRow("gk", "GK dimension from the pole at 1", 0, _check_gk),
]


def paper_suite(order: Optional[int] = None, golden_path: Optional[Path] = None) -> pd.DataFrame:
    """Run every worked example and collect a status table.

    Args:
        order: Largest truncation order a row may use; None means no cap
        golden_path: Alternative golden fixture

    Returns:
        DataFrame with columns id, description, required_order, status, detail, seconds

    Raises:
        GoldenFileError: If the golden file cannot be parsed
    """
    golden = load_golden(golden_path)
    records = []
    start = time.perf_counter()
    print(f"\n{'=' * 80}")
    print(f"Reproducing {len(SUITE)} worked examples" + (f" (order cap {order})" if order is not None else ""))
    print(f"{'=' * 80}")

    for idx, row in enumerate(SUITE, 1):
        print(f"  [{idx}/{len(SUITE)}] {row.id}...", end=" ")
        if order is not None and row.required_order > order:
            status, detail, seconds = SKIPPED, f"needs order {row.required_order}", 0.0
            logger.warning("Skipping %s: needs order %d > %d", row.id, row.required_order, order)
        else:
            row_start = time.perf_counter()
            try:
                status, detail = PASS, row.check(golden)
            except AssertionError as e:
                status, detail = FAIL, str(e)
            except GoldenFileError as e:
                status, detail = ERROR, str(e)
            except Exception as e:
                logger.exception("Row %s raised", row.id)
                status, detail = ERROR, f"{type(e).__name__}: {e}"
            seconds = time.perf_counter() - row_start
        print(status)
        records.append({
            "id": row.id,
            "description": row.description,
            "required_order": row.required_order,
            "status": status,
            "detail": detail,
            "seconds": round(seconds, 3),
        })

    elapsed = time.perf_counter() - start
    if elapsed > SUITE_TIME_BUDGET_S:
        logger.warning("Suite took %.1f s, over the %d s budget", elapsed, SUITE_TIME_BUDGET_S)
    table = pd.DataFrame.from_records(records, columns=COLUMNS)
    counts = table["status"].value_counts()
    print(f"\n  Summary:")
    for status in (PASS, FAIL, ERROR, SKIPPED):
        print(f"    {status}: {int(counts.get(status, 0))}")
    print(f"    Elapsed: {elapsed:.1f} s")
    return table


def suite_passed(table: pd.DataFrame) -> bool:
    """True iff no row failed or errored; skipped rows do not count against the run."""
    return not table["status"].isin([FAIL, ERROR]).any()
