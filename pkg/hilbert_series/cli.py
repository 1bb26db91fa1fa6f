"""
Command-line interface.

Usage:
    python -m hilbert_series <verb> <operation> [options]

Verbs are series, magma, monomial, invariants, growth and paper. Results are
printed as JSON with sorted keys and every number written as an exact
fraction string, so identical commands give byte-identical output.

Exit codes:
    0  success
    1  the operation raised a mathematical error
    2  invalid arguments or input files
    3  a resource limit (tree count, group order, word count) was hit
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import sympy as sp

from hilbert_series import bipoly, growth, invariants, magma, monomial, paper
from hilbert_series.series_core import (
    T,
    Z,
    LACUNARY_KINDS,
    NAMED_SERIES_KINDS,
    BadParameter,
    BiPoly,
    PoleAtOrigin,
    RationalFn,
    Series,
    SeriesError,
    UniPoly,
    UnknownKind,
    annihilator_residual,
    catalan_series,
    compose,
    expand_rational,
    find_linear_recurrence,
    guess_algebraic_equation,
    lacunary,
    named_series,
    section,
    series_arith,
    sqrt_one_plus,
)


logger = logging.getLogger(__name__)


# ============================================================================
# Constants
# ============================================================================

DEFAULT_ORDER = 64
ORDER_ENV_VAR = "HILBERT_SERIES_ORDER"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3

VALIDATION_ERRORS = (
    BadParameter,
    UnknownKind,
    PoleAtOrigin,
    magma.InvalidSignature,
    monomial.InvalidPresentation,
    invariants.InvalidGroup,
    invariants.UnknownSeriesKind,
)
RESOURCE_ERRORS = (magma.ResourceLimit, monomial.ResourceLimit, invariants.OrderExceeded)
LIBRARY_ERRORS = (
    SeriesError,
    bipoly.BiPolyError,
    magma.MagmaError,
    monomial.MonomialError,
    invariants.InvariantsError,
    growth.GrowthError,
    paper.GoldenFileError,
)


class ValidationError(Exception):
    """Raised for unknown operations, unknown or missing parameters and unreadable inputs."""
    pass


@dataclass(frozen=True)
class Command:
    """One CLI invocation: an operation, its parameters and the truncation order."""
    verb: str
    subverb: str
    params: Dict[str, object] = field(default_factory=dict)
    order: int = DEFAULT_ORDER


@dataclass(frozen=True)
class Operation:
    handler: Callable[[Mapping, int], Dict]
    arguments: Tuple[Tuple[str, Dict], ...]
    required: FrozenSet[str]
    help: str

    @property
    def keys(self) -> FrozenSet[str]:
        return frozenset(_dest(flag) for flag, _ in self.arguments)


OPERATIONS: Dict[Tuple[str, str], Operation] = {}


def _dest(flag: str) -> str:
    return flag.lstrip("-").replace("-", "_")


def operation(verb: str, subverb: str, *arguments: Tuple[str, Dict], required: Sequence[str] = (), help: str = ""):
    """Register a handler for `verb subverb` with its argparse arguments."""
    def register(handler: Callable[[Mapping, int], Dict]) -> Callable[[Mapping, int], Dict]:
        OPERATIONS[(verb, subverb)] = Operation(handler, tuple(arguments), frozenset(required), help)
        return handler
    return register


def arg(flag: str, **kwargs) -> Tuple[str, Dict]:
    return flag, kwargs


# ============================================================================
# Input parsing
# ============================================================================

def _load_json(source: str):
    try:
        if source == "-":
            return json.load(sys.stdin)
        with open(source) as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ValidationError(f"Cannot read JSON from {source}: {e}") from e


def _sympify(text: str):
    try:
        return sp.sympify(text, locals={"t": T, "z": Z})
    except (sp.SympifyError, SyntaxError, TypeError) as e:
        raise ValidationError(f"Cannot parse expression {text!r}: {e}") from e


def _series_input(value, order: int) -> Series:
    """A series from JSON data, a named series, 'catalan', or a path to a JSON file."""
    if isinstance(value, Mapping):
        return Series.from_json(value)
    if value in NAMED_SERIES_KINDS:
        return named_series(value, order)
    if value == "catalan":
        return catalan_series(order)
    if isinstance(value, str) and Path(value).suffix != ".json" and value != "-":
        return expand_rational(_rational_input(value), order)
    return Series.from_json(_load_json(value))


def _rational_input(value) -> RationalFn:
    if isinstance(value, Mapping):
        return RationalFn.from_json(value)
    if isinstance(value, str) and value.endswith(".json"):
        return RationalFn.from_json(_load_json(value))
    expr = _sympify(value)
    try:
        return RationalFn.from_expr(expr)
    except sp.PolynomialError as e:
        raise ValidationError(f"{value!r} is not a rational function of t") from e


def _bipoly_input(value) -> BiPoly:
    if isinstance(value, list):
        return BiPoly.from_json(value)
    if isinstance(value, str) and value.endswith(".json"):
        return BiPoly.from_json(_load_json(value))
    try:
        return BiPoly.from_expr(_sympify(value))
    except sp.PolynomialError as e:
        raise ValidationError(f"{value!r} is not a polynomial in t and z") from e


def _int_list(value) -> List[int]:
    if isinstance(value, (list, tuple, set)):
        return [int(x) for x in value]
    try:
        return [int(x) for x in str(value).split(",") if x.strip()]
    except ValueError as e:
        raise ValidationError(f"Expected comma-separated integers, got {value!r}") from e


def _signature_input(params: Mapping) -> magma.OmegaSignature:
    given = [key for key in ("signature", "arities", "closed_form") if params.get(key) is not None]
    if len(given) != 1:
        raise ValidationError("Give exactly one of --signature, --arities, --closed-form")
    if "signature" in given:
        name = str(params["signature"]).replace("-", "_")
        if name.endswith(".json"):
            return magma.OmegaSignature.from_json(_load_json(params["signature"]))
        return magma.named_signature(name)
    if "arities" in given:
        value = params["arities"]
        if isinstance(value, Mapping):
            return magma.OmegaSignature(arity_counts=tuple((int(n), int(c)) for n, c in value.items()))
        try:
            pairs = [item.split(":") for item in str(value).split(",") if item.strip()]
            return magma.OmegaSignature(arity_counts=tuple((int(n), int(c)) for n, c in pairs))
        except ValueError as e:
            raise ValidationError(f"Arities must look like '2:1,3:1', got {value!r}") from e
    return magma.OmegaSignature(closed_form=_rational_input(params["closed_form"]))


def _group_input(value) -> invariants.MatrixGroup:
    if isinstance(value, Mapping):
        return invariants.MatrixGroup.from_json(value)
    if str(value).endswith(".json"):
        return invariants.MatrixGroup.from_json(_load_json(value))
    return invariants.named_group(str(value))


def _presentation_input(params: Mapping) -> monomial.MonomialPresentation:
    if params.get("presentation") is not None:
        value = params["presentation"]
        data = value if isinstance(value, Mapping) else _load_json(value)
        return monomial.MonomialPresentation.from_json(data)
    if params.get("d") is None:
        raise ValidationError("Give --presentation or --d with --forbidden")
    d = int(params["d"])
    value = params.get("forbidden") or []
    if isinstance(value, str):
        try:
            value = [monomial.word_from_str(w.strip()) for w in value.split(",") if w.strip()]
        except ValueError as e:
            raise ValidationError(f"Forbidden words use letters {monomial.LETTER_NAMES[:d]}, got {value!r}") from e
    weights = params.get("weights")
    return monomial.MonomialPresentation(
        d,
        tuple(tuple(w) for w in value),
        tuple(_int_list(weights)) if weights is not None else None,
    )


# ============================================================================
# Output encoding
# ============================================================================

def encode_rational(rf: RationalFn) -> Dict[str, object]:
    return {"num": str(rf.num), "den": str(rf.den), "coeffs": rf.to_json()}


def encode_bipoly(P: Optional[BiPoly]) -> Optional[Dict[str, object]]:
    if P is None:
        return None
    return {"equation": str(P), "terms": P.to_json()}


def _series_and_rational(pair: Tuple[Series, RationalFn]) -> Dict[str, object]:
    series, rf = pair
    return {"series": series.to_json(), "rational": encode_rational(rf)}


# ============================================================================
# Operations: series
# ============================================================================

@operation("series", "expand", arg("--rational", help="rational function, e.g. '(1-t)/(1-2*t)'"), required=["rational"],
           help="Taylor expansion of a rational function")
def _series_expand(params: Mapping, order: int) -> Dict:
    return {"series": expand_rational(_rational_input(params["rational"]), order).to_json()}


@operation("series", "named", arg("--kind", choices=NAMED_SERIES_KINDS), required=["kind"],
           help="expansion of a named infinite product")
def _series_named(params: Mapping, order: int) -> Dict:
    return {"series": named_series(params["kind"], order).to_json()}


@operation("series", "lacunary", arg("--kind", choices=LACUNARY_KINDS), arg("--d", type=int), required=["kind"],
           help="0/1 series supported on powers or factorials")
def _series_lacunary(params: Mapping, order: int) -> Dict:
    return {"series": lacunary(params["kind"], params.get("d") or 2, order).to_json()}


@operation("series", "catalan", help="the Catalan series (1 - sqrt(1-4t))/2")
def _series_catalan(params: Mapping, order: int) -> Dict:
    return {"series": catalan_series(order).to_json()}


@operation("series", "arith", arg("--a"), arg("--b"), arg("--op", choices=("add", "sub", "mul", "div")),
           required=["a", "b", "op"], help="truncated ring operation on two series")
def _series_arith(params: Mapping, order: int) -> Dict:
    a, b = _series_input(params["a"], order), _series_input(params["b"], order)
    return {"series": series_arith(a, b, params["op"]).to_json()}


@operation("series", "compose", arg("--f"), arg("--g"), required=["f", "g"], help="f(g(t)) with g(0) = 0")
def _series_compose(params: Mapping, order: int) -> Dict:
    return {"series": compose(_series_input(params["f"], order), _series_input(params["g"], order)).to_json()}


@operation("series", "sqrt", arg("--input"), required=["input"], help="sqrt(1 + f) for f(0) = 0")
def _series_sqrt(params: Mapping, order: int) -> Dict:
    return {"series": sqrt_one_plus(_series_input(params["input"], order)).to_json()}


@operation("series", "section", arg("--input"), arg("--s", type=int), required=["input", "s"],
           help="keep coefficients at multiples of s")
def _series_section(params: Mapping, order: int) -> Dict:
    return {"series": section(_series_input(params["input"], order), params["s"]).to_json()}


@operation("series", "guess-rational", arg("--input"), arg("--max-den-deg", type=int), required=["input", "max_den_deg"],
           help="recover a rational function from coefficients")
def _series_guess_rational(params: Mapping, order: int) -> Dict:
    rf = find_linear_recurrence(_series_input(params["input"], order), params["max_den_deg"])
    return {"rational": None if rf is None else encode_rational(rf)}


@operation("series", "guess-algebraic", arg("--input"), arg("--dz", type=int), arg("--dt", type=int),
           required=["input", "dz", "dt"], help="find an annihilating polynomial P(t, z)")
def _series_guess_algebraic(params: Mapping, order: int) -> Dict:
    P = guess_algebraic_equation(_series_input(params["input"], order), params["dz"], params["dt"])
    return {"annihilator": encode_bipoly(P)}


@operation("series", "residual", arg("--poly"), arg("--input"), required=["poly", "input"],
           help="first nonvanishing coefficient of P(t, f(t))")
def _series_residual(params: Mapping, order: int) -> Dict:
    residual = annihilator_residual(_bipoly_input(params["poly"]), _series_input(params["input"], order))
    return {"residual": "Infinity" if residual == float("inf") else str(residual)}


@operation("series", "root", arg("--poly"), arg("--seed"), arg("--seed-order", type=int),
           required=["poly", "seed", "seed_order"], help="expand the branch of P selected by a seed polynomial")
def _series_root(params: Mapping, order: int) -> Dict:
    seed = Series.from_polynomial(UniPoly.from_expr(_sympify(params["seed"])), params["seed_order"])
    return {"series": bipoly.series_root(_bipoly_input(params["poly"]), order, seed).to_json()}


@operation("series", "shift", arg("--poly"), required=["poly"], help="b(t, z) -> b(z, z - t)")
def _series_shift(params: Mapping, order: int) -> Dict:
    return {"annihilator": encode_bipoly(bipoly.shift_transform(_bipoly_input(params["poly"])))}


@operation("series", "substitute", arg("--poly"), arg("--p"), required=["poly", "p"],
           help="q(t, z) -> q(t, z - p(z)) for an operation polynomial p")
def _series_substitute(params: Mapping, order: int) -> Dict:
    p = UniPoly.from_expr(_sympify(params["p"]).subs(Z, T))
    return {"annihilator": encode_bipoly(bipoly.substitute_case2(_bipoly_input(params["poly"]), p))}


@operation("series", "resultant", arg("--q"), arg("--b"), required=["q", "b"],
           help="Res_z(q(t, z), b(u, u - z)) as a polynomial in t and u")
def _series_resultant(params: Mapping, order: int) -> Dict:
    R = bipoly.resultant_case3(_bipoly_input(params["q"]), _bipoly_input(params["b"]))
    return {"annihilator": encode_bipoly(R), "variable": "u"}


# ============================================================================
# Operations: magma
# ============================================================================

SIGNATURE_ARGS = (
    arg("--signature", help="binary, ternary, binary_ternary, super_catalan or a JSON file"),
    arg("--arities", help="e.g. 2:1,3:1"),
    arg("--closed-form", help="p(t) as a rational function, e.g. 't**2/(1-t)'"),
)


@operation("magma", "series", *SIGNATURE_ARGS, arg("--generators", help="a(t): series input, default t"),
           help="generating function of the free magma")
def _magma_series(params: Mapping, order: int) -> Dict:
    sig = _signature_input(params)
    if params.get("generators") is not None:
        gens = magma.GeneratorWeights(_series_input(params["generators"], order))
    else:
        gens = magma.GeneratorWeights.single(order)
    return {"series": magma.magma_series(sig, gens, order).to_json()}


@operation("magma", "count", *SIGNATURE_ARGS, arg("--n", type=int), required=["n"],
           help="structural count of trees with n leaves")
def _magma_count(params: Mapping, order: int) -> Dict:
    return {"n": str(params["n"]), "count": str(magma.brute_force_count(_signature_input(params), params["n"]))}


@operation("magma", "trees", *SIGNATURE_ARGS, arg("--n", type=int), required=["n"], help="list trees with n leaves")
def _magma_trees(params: Mapping, order: int) -> Dict:
    trees = magma.enumerate_trees(_signature_input(params), params["n"])
    return {"count": str(len(trees)), "trees": trees}


@operation("magma", "nonempty", *SIGNATURE_ARGS, arg("--s", type=int), required=["s"],
           help="does some tree have a multiple of s leaves")
def _magma_nonempty(params: Mapping, order: int) -> Dict:
    return {"nonempty": magma.section_nonempty(_signature_input(params), params["s"])}


@operation("magma", "section", *SIGNATURE_ARGS, arg("--s", type=int), required=["s"],
           help="section at multiples of s and the generators of that submagma")
def _magma_section(params: Mapping, order: int) -> Dict:
    g_s, a = magma.submagma_generators(_signature_input(params), params["s"], order)
    return {"section": g_s.to_json(), "generators": a.to_json()}


@operation("magma", "equation", *SIGNATURE_ARGS, help="annihilator of the one-generator magma series")
def _magma_equation(params: Mapping, order: int) -> Dict:
    return {"annihilator": encode_bipoly(magma.free_magma_equation(_signature_input(params)))}


@operation("magma", "parity", help="ratios a_2n / c_2n for the even binary submagma")
def _magma_parity(params: Mapping, order: int) -> Dict:
    return {"ratios": [[str(n), str(r)] for n, r in magma.branch_parity_ratio(order - order % 2)]}


# ============================================================================
# Operations: monomial
# ============================================================================

PRESENTATION_ARGS = (
    arg("--presentation", help="JSON file with d, forbidden, weights"),
    arg("--d", type=int),
    arg("--forbidden", help="comma-separated words in letters x, y, z, e.g. yy,xyx"),
    arg("--weights", help="comma-separated generator degrees"),
)


@operation("monomial", "count", *PRESENTATION_ARGS, help="normal words per degree")
def _monomial_count(params: Mapping, order: int) -> Dict:
    return {"series": monomial.normal_count(_presentation_input(params), order).to_json()}


@operation("monomial", "words", *PRESENTATION_ARGS, arg("--n", type=int), required=["n"], help="normal words of degree n")
def _monomial_words(params: Mapping, order: int) -> Dict:
    pres = _presentation_input(params)
    return {"words": [monomial.word_to_str(w, pres.d) for w in monomial.normal_words(pres, params["n"])]}


@operation("monomial", "graph", *PRESENTATION_ARGS, arg("--dot", action="store_true", default=None),
           help="the Ufnarovskij graph")
def _monomial_graph(params: Mapping, order: int) -> Dict:
    pres = _presentation_input(params)
    graph = monomial.build_graph(pres)
    result = {
        "k": str(graph.k),
        "vertices": [monomial.word_to_str(v, pres.d) for v in graph.vertices],
        "edges": [
            [monomial.word_to_str(s, pres.d), monomial.word_to_str(t, pres.d), monomial.word_to_str((x,), pres.d)]
            for s, t, x in graph.edges
        ],
    }
    if params.get("dot"):
        result["dot"] = monomial.graph_to_dot(graph)
    return result


@operation("monomial", "rational", *PRESENTATION_ARGS, help="Hilbert series from the transfer matrix")
def _monomial_rational(params: Mapping, order: int) -> Dict:
    return {"rational": encode_rational(monomial.hilbert_rational(_presentation_input(params)))}


@operation("monomial", "classify", *PRESENTATION_ARGS, help="growth from the cycles of the graph")
def _monomial_classify(params: Mapping, order: int) -> Dict:
    result = monomial.growth_classify(monomial.build_graph(_presentation_input(params)))
    return {"class": result.kind, "gk_dim": None if result.gk_dim is None else str(result.gk_dim)}


@operation("monomial", "borho-kraft", arg("--S", help="comma-separated gaps"), required=["S"],
           help="Borho-Kraft Hilbert series for a finite gap set")
def _monomial_borho_kraft(params: Mapping, order: int) -> Dict:
    S = _int_list(params["S"])
    return {
        "series": monomial.borho_kraft_series(S, order).to_json(),
        "rational": encode_rational(monomial.borho_kraft_closed_form(S)),
    }


@operation("monomial", "nilpotent", arg("--a"), arg("--k", type=int), required=["a", "k"],
           help="profile with k-th power of y zero and prescribed top layer a(t)")
def _monomial_nilpotent(params: Mapping, order: int) -> Dict:
    a = _series_input(params["a"], order)
    return {"series": monomial.nilpotent_y_series(a, params["k"], order).to_json()}


@operation("monomial", "prescribed", arg("--a"), arg("--d", type=int), arg("--p", type=int),
           required=["a", "d", "p"], help="target series of a (d+1)-generated monomial algebra")
def _monomial_prescribed(params: Mapping, order: int) -> Dict:
    a = _series_input(params["a"], order)
    return {"series": monomial.prescribed_check(a, params["d"], params["p"], order).to_json()}


# ============================================================================
# Operations: invariants
# ============================================================================

GROUP_ARG = arg("--group", help="S2, C3, S3, trivial2, trivial3 or a JSON file")


@operation("invariants", "molien", GROUP_ARG, required=["group"], help="commutative invariants")
def _invariants_molien(params: Mapping, order: int) -> Dict:
    return _series_and_rational(invariants.molien_commutative(_group_input(params["group"]), order))


@operation("invariants", "dicks-formanek", GROUP_ARG, required=["group"], help="free associative invariants")
def _invariants_dicks_formanek(params: Mapping, order: int) -> Dict:
    return _series_and_rational(invariants.dicks_formanek(_group_input(params["group"]), order))


@operation("invariants", "group", GROUP_ARG, required=["group"], help="all elements of a group")
def _invariants_group(params: Mapping, order: int) -> Dict:
    return _group_input(params["group"]).to_json()


@operation("invariants", "generators", arg("--input"), required=["input"], help="a = 1 - 1/H")
def _invariants_generators(params: Mapping, order: int) -> Dict:
    result = invariants.free_generator_series(_series_input(params["input"], order))
    return {"series": result.series.to_json(), "nonnegative_integral": result.nonnegative_integral}


@operation("invariants", "closed-form", arg("--kind", choices=invariants.CLOSED_FORM_KINDS), required=["kind"],
           help="SL2 and UT2 invariants in two free variables")
def _invariants_closed_form(params: Mapping, order: int) -> Dict:
    return {"series": invariants.closed_form_series(params["kind"], order).to_json()}


@operation("invariants", "oracle", arg("--kind", choices=invariants.ORACLE_KINDS), required=["kind"],
           help="invariant dimensions from tensor-power characters")
def _invariants_oracle(params: Mapping, order: int) -> Dict:
    return {"series": invariants.weyl_oracle_dims(params["kind"], order).to_json()}


@operation("invariants", "elliptic", arg("--kind", choices=invariants.ELLIPTIC_KINDS), required=["kind"],
           help="nonassociative invariants from the integral formulas")
def _invariants_elliptic(params: Mapping, order: int) -> Dict:
    return {"series": invariants.elliptic_integral_series(params["kind"], order).to_json()}


# ============================================================================
# Operations: growth
# ============================================================================

@operation("growth", "classify", arg("--input"), required=["input"], help="heuristic growth class")
def _growth_classify(params: Mapping, order: int) -> Dict:
    return growth.classify_growth(_series_input(params["input"], order)).to_json()


@operation("growth", "fatou", arg("--input"), arg("--max-den-deg", type=int), required=["input", "max_den_deg"],
           help="rational, transcendental by Fatou, or undecided")
def _growth_fatou(params: Mapping, order: int) -> Dict:
    return growth.fatou_classify(_series_input(params["input"], order), params["max_den_deg"]).to_json()


@operation("growth", "gk", arg("--rational"), required=["rational"], help="order of the pole at t = 1")
def _growth_gk(params: Mapping, order: int) -> Dict:
    return {"gk_dim": str(growth.gk_from_rational(_rational_input(params["rational"])))}


@operation("growth", "hardy-ramanujan", arg("--kind", choices=("p", "rho")), arg("--n", type=int),
           required=["kind", "n"], help="exact partition count against its asymptotic")
def _growth_hardy_ramanujan(params: Mapping, order: int) -> Dict:
    result = growth.hardy_ramanujan_compare(params["kind"], params["n"])
    return {
        "kind": result.kind,
        "n": str(result.n),
        "exact": str(result.exact),
        "estimate": repr(result.estimate),
        "ratio": repr(result.ratio),
    }


@operation("growth", "growth-function", arg("--input"), required=["input"], help="partial sums of the coefficients")
def _growth_function(params: Mapping, order: int) -> Dict:
    return {"series": growth.growth_function(_series_input(params["input"], order)).to_json()}


# ============================================================================
# Entry points
# ============================================================================

def run(cmd: Command) -> Dict:
    """Execute one command and return its JSON-ready result.

    Raises:
        ValidationError: For an unknown operation, unknown keys or missing parameters
    """
    try:
        op = OPERATIONS[(cmd.verb, cmd.subverb)]
    except KeyError:
        raise ValidationError(f"Unknown operation: {cmd.verb} {cmd.subverb}")
    unknown = set(cmd.params) - op.keys
    if unknown:
        raise ValidationError(f"Unknown parameters for {cmd.verb} {cmd.subverb}: {sorted(unknown)}")
    missing = {key for key in op.required if cmd.params.get(key) is None}
    if missing:
        raise ValidationError(f"Missing parameters for {cmd.verb} {cmd.subverb}: {sorted(missing)}")
    if cmd.order < 0:
        raise ValidationError(f"Order must be >= 0, got {cmd.order}")
    logger.debug("Running %s %s at order %d with %s", cmd.verb, cmd.subverb, cmd.order, cmd.params)
    return op.handler(cmd.params, cmd.order)


def resolve_order(order: Optional[int]) -> int:
    """Explicit --order, else $HILBERT_SERIES_ORDER, else DEFAULT_ORDER."""
    if order is not None:
        return order
    env = os.environ.get(ORDER_ENV_VAR)
    if env is None:
        return DEFAULT_ORDER
    try:
        return int(env)
    except ValueError:
        raise ValidationError(f"{ORDER_ENV_VAR} must be an integer, got {env!r}")


def resolve_suite_cap(order: Optional[int]) -> Optional[int]:
    """Order cap for the worked-example suite.

    Same lookup as resolve_order, except that with neither --order nor
    $HILBERT_SERIES_ORDER set the suite runs uncapped.
    """
    if order is None and ORDER_ENV_VAR not in os.environ:
        return None
    return resolve_order(order)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=None, help=f"truncation order (default {DEFAULT_ORDER})")
    common.add_argument("--output", help="write JSON here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    parser = argparse.ArgumentParser(prog="hilbert_series", description="Exact Hilbert series toolkit")
    verbs = parser.add_subparsers(dest="verb", required=True)
    grouped: Dict[str, Dict[str, Operation]] = {}
    for (verb, subverb), op in OPERATIONS.items():
        grouped.setdefault(verb, {})[subverb] = op
    for verb, ops in grouped.items():
        verb_parser = verbs.add_parser(verb)
        subverbs = verb_parser.add_subparsers(dest="subverb", required=True)
        for subverb, op in ops.items():
            leaf = subverbs.add_parser(subverb, parents=[common], help=op.help)
            for flag, kwargs in op.arguments:
                leaf.add_argument(flag, dest=_dest(flag), **kwargs)

    paper_parser = verbs.add_parser("paper", parents=[common], help="reproduce every worked example")
    paper_parser.add_argument("--golden", help="alternative golden fixture")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _run_paper(args: argparse.Namespace) -> int:
    table = paper.paper_suite(resolve_suite_cap(args.order), args.golden)
    print()
    print(table.drop(columns=["description"]).to_string(index=False))
    if args.output:
        Path(args.output).write_text(table.to_json(orient="records", indent=2))
    return EXIT_OK if paper.suite_passed(table) else EXIT_FAILURE


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_VALIDATION
    _configure_logging(args.verbose)

    try:
        if args.verb == "paper":
            return _run_paper(args)
        params = {
            key: value for key, value in vars(args).items()
            if key not in ("verb", "subverb", "order", "output", "verbose") and value is not None
        }
        result = run(Command(args.verb, args.subverb, params, resolve_order(args.order)))
        _emit(json.dumps(result, sort_keys=True, indent=2) + "\n", args.output)
        return EXIT_OK
    except ValidationError as e:
        logger.error("%s", e)
        return EXIT_VALIDATION
    except RESOURCE_ERRORS as e:
        logger.error("Resource limit: %s", e)
        return EXIT_RESOURCE
    except VALIDATION_ERRORS as e:
        logger.error("Invalid input: %s", e)
        return EXIT_VALIDATION
    except LIBRARY_ERRORS as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
