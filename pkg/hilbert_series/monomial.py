"""
Finitely presented monomial algebras.

A monomial algebra K<x_1..x_d>/(U) has a basis of normal words, the words
with no factor in U. This module provides:
- normal_count: brute-force Hilbert series by dynamic programming over suffixes
- build_graph: the Ufnarovskij graph on normal words of length k
- hilbert_rational: the rational Hilbert series from the transfer matrix
- growth_classify: polynomial or exponential growth from the cycle structure
- Borho-Kraft style algebras with prescribed Hilbert series
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import sympy as sp
from sympy.polys.matrices import DomainMatrix

from hilbert_series.series_core import (
    BadParameter,
    InsufficientOrder,
    RationalFn,
    Series,
    UniPoly,
    expand_rational,
    geometric,
)


logger = logging.getLogger(__name__)


# ============================================================================
# Constants
# ============================================================================

DEFAULT_NORMAL_COUNT_LIMIT = 10**7
DEFAULT_GRAPH_VERTEX_LIMIT = 5_000
DEFAULT_WORD_LIMIT = 100_000
LETTER_NAMES = "xyzuvw"

Word = Tuple[int, ...]


# ============================================================================
# Custom Exceptions
# ============================================================================

class MonomialError(Exception):
    """Base exception for monomial algebra computations."""
    pass


class ResourceLimit(MonomialError):
    """Raised when a word enumeration or graph exceeds its configured size."""
    pass


class CoefficientBoundViolated(MonomialError):
    """Raised when a prescribed coefficient a_n is negative or exceeds d^n."""
    pass


class InvalidPresentation(MonomialError):
    """Raised for empty forbidden words, letters out of range or bad weights."""
    pass


def word_to_str(word: Sequence[int], d: int) -> str:
    """Render a word with letters x, y, z, ... (or x1, x2, ... for large alphabets)."""
    if not word:
        return "1"
    if d <= len(LETTER_NAMES):
        return "".join(LETTER_NAMES[letter - 1] for letter in word)
    return "*".join(f"x{letter}" for letter in word)


def word_from_str(text: str) -> Word:
    return tuple(LETTER_NAMES.index(ch) + 1 for ch in text)


def _contains_factor(word: Word, factor: Word) -> bool:
    n = len(factor)
    return any(word[i:i + n] == factor for i in range(len(word) - n + 1))


# ============================================================================
# Domain types
# ============================================================================

@dataclass(frozen=True)
class MonomialPresentation:
    """Alphabet size, forbidden words and optional degree weights.

    The forbidden set is reduced to an antichain under the factor order on
    construction: a word containing another forbidden word is dropped.

    Attributes:
        d: Number of generators (letters 1..d)
        forbidden: Forbidden words U
        weights: Degree of each generator, all 1 by default
    """
    d: int
    forbidden: Tuple[Word, ...] = ()
    weights: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.d < 1:
            raise InvalidPresentation(f"Alphabet size must be >= 1, got {self.d}")
        words = set()
        for w in self.forbidden:
            w = tuple(int(letter) for letter in w)
            if not w:
                raise InvalidPresentation("Forbidden words must be nonempty")
            if any(letter < 1 or letter > self.d for letter in w):
                raise InvalidPresentation(f"Word {w} uses a letter outside 1..{self.d}")
            words.add(w)
        minimal = tuple(sorted(
            (w for w in words if not any(v != w and _contains_factor(w, v) for v in words)),
            key=lambda w: (len(w), w),
        ))
        object.__setattr__(self, "forbidden", minimal)

        weights = self.weights if self.weights is not None else (1,) * self.d
        weights = tuple(int(x) for x in weights)
        if len(weights) != self.d or any(x < 1 for x in weights):
            raise InvalidPresentation(f"Need {self.d} positive weights, got {weights}")
        object.__setattr__(self, "weights", weights)

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.forbidden), default=0)

    def weight(self, word: Sequence[int]) -> int:
        return sum(self.weights[letter - 1] for letter in word)

    def ends_forbidden(self, word: Word) -> bool:
        """True iff some forbidden word is a suffix of `word`."""
        return any(len(w) <= len(word) and word[len(word) - len(w):] == w for w in self.forbidden)

    def is_normal(self, word: Sequence[int]) -> bool:
        word = tuple(word)
        return not any(_contains_factor(word, w) for w in self.forbidden)

    def to_json(self) -> Dict[str, object]:
        return {"d": self.d, "forbidden": [list(w) for w in self.forbidden], "weights": list(self.weights)}

    @classmethod
    def from_json(cls, data: Union[str, Mapping]) -> "MonomialPresentation":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(
                int(data["d"]),
                tuple(tuple(w) for w in data.get("forbidden", [])),
                tuple(data["weights"]) if data.get("weights") is not None else None,
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidPresentation(f"Malformed presentation JSON: {e}") from e


@dataclass(frozen=True)
class UfnGraph:
    """Ufnarovskij graph: normal words of length k with an edge v -> w labelled x
    whenever v*x = y*w is normal for some letter y.
    """
    k: int
    vertices: Tuple[Word, ...]
    edges: Tuple[Tuple[Word, Word, int], ...]
    presentation: MonomialPresentation = field(compare=False, repr=False, default=None)

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for source, target, letter in self.edges:
            graph.add_edge(source, target, letter=letter)
        return graph


class GraphGrowth(NamedTuple):
    kind: str
    gk_dim: Optional[int] = None


# ============================================================================
# Normal words
# ============================================================================

def normal_count(pres: MonomialPresentation, N: int, limit: int = DEFAULT_NORMAL_COUNT_LIMIT) -> Series:
    """Number of normal words of each degree up to N.

    Words are grown letter by letter keeping only the last (max forbidden
    length - 1) letters, which is all a forbidden suffix check needs.

    Raises:
        ResourceLimit: If the number of live (suffix, degree) states exceeds `limit`
    """
    keep = max(pres.max_length - 1, 0)
    counts = [0] * (N + 1)
    counts[0] = 1
    states: Dict[Tuple[Word, int], int] = {((), 0): 1}
    length = 0
    while states:
        length += 1
        grown: Dict[Tuple[Word, int], int] = {}
        for (suffix, degree), count in states.items():
            for letter in range(1, pres.d + 1):
                new_degree = degree + pres.weights[letter - 1]
                if new_degree > N:
                    continue
                word = suffix + (letter,)
                if pres.ends_forbidden(word):
                    continue
                key = (word[-keep:] if keep else (), new_degree)
                grown[key] = grown.get(key, 0) + count
        if len(grown) > limit:
            raise ResourceLimit(f"{len(grown)} states at length {length} exceed limit {limit}")
        for (_, degree), count in grown.items():
            counts[degree] += count
        states = grown
    return Series.from_coeffs(counts, N)


def _extend(pres: MonomialPresentation, words: Iterable[Word]) -> List[Word]:
    return [
        w + (letter,)
        for w in words
        for letter in range(1, pres.d + 1)
        if not pres.ends_forbidden(w + (letter,))
    ]


def words_of_length(pres: MonomialPresentation, length: int, limit: int = DEFAULT_WORD_LIMIT) -> List[Word]:
    words: List[Word] = [()]
    for _ in range(length):
        words = _extend(pres, words)
        if len(words) > limit:
            raise ResourceLimit(f"More than {limit} normal words of length <= {length}")
    return words


def normal_words(pres: MonomialPresentation, n: int, limit: int = DEFAULT_WORD_LIMIT) -> List[Word]:
    """All normal words of degree n, in lexicographic order."""
    found: List[Word] = []
    frontier: List[Word] = [()]
    while frontier:
        found.extend(w for w in frontier if pres.weight(w) == n)
        frontier = [w for w in _extend(pres, frontier) if pres.weight(w) <= n]
        if len(frontier) > limit:
            raise ResourceLimit(f"More than {limit} normal words of degree <= {n}")
    return sorted(found)


# ============================================================================
# Ufnarovskij graph
# ============================================================================

def build_graph(pres: MonomialPresentation, vertex_limit: int = DEFAULT_GRAPH_VERTEX_LIMIT) -> UfnGraph:
    """Ufnarovskij graph of the presentation.

    With k + 1 the longest forbidden length, vertices are the normal words of
    length k and edges correspond to normal words of length k + 1. For an
    empty forbidden set k = 0 and the graph is one vertex with d loops.
    """
    k = max(pres.max_length - 1, 0)
    vertices = words_of_length(pres, k, limit=vertex_limit)
    edges = []
    for v in vertices:
        for letter in range(1, pres.d + 1):
            w = v + (letter,)
            if not pres.ends_forbidden(w):
                edges.append((v, w[1:], letter))
    logger.debug("Ufnarovskij graph: k=%d, %d vertices, %d edges", k, len(vertices), len(edges))
    return UfnGraph(k, tuple(vertices), tuple(edges), pres)


def _transfer_matrix(graph: UfnGraph) -> Tuple[np.ndarray, List[int]]:
    """Integer adjacency matrix with every edge of weight w split into w unit steps.

    Returns the matrix and the indices of the original vertices.
    """
    pres = graph.presentation
    index = {v: i for i, v in enumerate(graph.vertices)}
    size = len(graph.vertices)
    steps: List[Tuple[int, int]] = []
    for source, target, letter in graph.edges:
        previous = index[source]
        for _ in range(pres.weights[letter - 1] - 1):
            steps.append((previous, size))
            previous = size
            size += 1
        steps.append((previous, index[target]))
    matrix = np.zeros((size, size), dtype=object)
    for i, j in steps:
        matrix[i, j] += 1
    return matrix, list(range(len(graph.vertices)))


def hilbert_rational(pres: MonomialPresentation) -> RationalFn:
    """Hilbert series of the monomial algebra as a reduced rational function.

    Normal words shorter than k are counted directly. Every longer normal
    word is its first k letters followed by a path in the graph, so

        H(t) = sum_{|w| < k} t^deg(w) + sum_v t^deg(v) S_v(t)

    where S_v counts paths from v by weight. All S_v share the denominator
    Q(t) = det(I - tB) of the transfer matrix B, so H*Q is a polynomial whose
    degree is bounded by the matrix size; it is read off from the expansion.
    """
    graph = build_graph(pres)
    matrix, originals = _transfer_matrix(graph)
    size = matrix.shape[0]

    low = [0]
    for length in range(graph.k):
        for w in words_of_length(pres, length):
            degree = pres.weight(w)
            low.extend([0] * (degree + 1 - len(low)))
            low[degree] += 1
    starts = [pres.weight(v) for v in graph.vertices]
    bound = max(len(low) - 1 + size, max(starts, default=0) + size - 1, 0)

    charpoly = DomainMatrix.from_Matrix(sp.Matrix(matrix.tolist())).charpoly() if size else [1]
    den = UniPoly(tuple(charpoly))

    counts = [0] * (bound + 1)
    for degree, c in enumerate(low):
        counts[degree] += c
    marker = np.zeros(size, dtype=object)
    marker[originals] = 1
    paths = marker
    for n in range(bound + 1):
        for v, start in zip(originals, starts):
            if start + n <= bound:
                counts[start + n] += paths[v]
        paths = matrix.dot(paths)

    series = Series.from_coeffs(counts, bound)
    numerator = series * Series.from_polynomial(den, bound)
    result = RationalFn(UniPoly(numerator.coeffs), den)
    logger.info("Hilbert series of %s: %s", pres.forbidden, result)
    return result


def growth_classify(graph: UfnGraph) -> GraphGrowth:
    """Polynomial or exponential growth from the cycles of the graph.

    Growth is exponential iff two distinct cycles share a vertex, i.e. some
    strongly connected component has more edges than vertices. Otherwise the
    GK dimension is the largest number of cyclic components met by one path.
    """
    multi = graph.to_networkx()
    simple = nx.DiGraph(multi)
    dag = nx.condensation(simple)
    cyclic: Dict[int, bool] = {}
    for node, data in dag.nodes(data=True):
        members = data["members"]
        internal = sum(1 for u, v in multi.edges() if u in members and v in members)
        if internal > len(members):
            return GraphGrowth("Exponential")
        cyclic[node] = internal > 0

    best: Dict[int, int] = {}
    for node in reversed(list(nx.topological_sort(dag))):
        tail = max((best[succ] for succ in dag.successors(node)), default=0)
        best[node] = tail + int(cyclic[node])
    return GraphGrowth("Polynomial", max(best.values(), default=0))


def graph_to_dot(graph: UfnGraph) -> str:
    """DOT text of the graph with edges labelled by their letter."""
    d = graph.presentation.d if graph.presentation is not None else len(LETTER_NAMES)
    lines = ["digraph ufnarovskij {"]
    for v in graph.vertices:
        lines.append(f'  "{word_to_str(v, d)}";')
    for source, target, letter in graph.edges:
        lines.append(
            f'  "{word_to_str(source, d)}" -> "{word_to_str(target, d)}" [label="{word_to_str((letter,), d)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


# ============================================================================
# Prescribed Hilbert series
# ============================================================================

def borho_kraft_series(S: Iterable[int], N: int) -> Series:
    """Hilbert series of the two-generator algebra with basis x^i, x^i y x^j, x^i y x^s y x^j (s in S).

    Degree n has 1 + n + sum_{s in S, s+2 <= n} (n - s - 1) basis words.
    """
    gaps = sorted(set(S))
    coeffs = [1 + n + sum(n - s - 1 for s in gaps if s + 2 <= n) for n in range(N + 1)]
    return Series.from_coeffs(coeffs, N)


def borho_kraft_closed_form(S: Iterable[int]) -> RationalFn:
    """1/(1-t) + t/(1-t)^2 + a(t) t^2/(1-t)^2 with a(t) = sum_{s in S} t^s."""
    gaps = sorted(set(S))
    a_poly = [Fraction(0)] * ((gaps[-1] + 1) if gaps else 0)
    for s in gaps:
        a_poly[s] = Fraction(1)
    square = geometric(exponent=2)
    return geometric() + RationalFn(UniPoly((0, 1)), square.den) + RationalFn(
        UniPoly((0, 0) + tuple(a_poly)), square.den
    )


def borho_kraft_presentation(S: Iterable[int], max_degree: int) -> MonomialPresentation:
    """Finite truncation of the Borho-Kraft forbidden set (x = 1, y = 2).

    Forbids y x^i y x^j y and y x^k y for k not in S, up to degree max_degree,
    so the normal-word count agrees with borho_kraft_series through max_degree.
    """
    gaps = set(S)
    x, y = 1, 2
    forbidden = []
    for k in range(max_degree - 1):
        if k not in gaps:
            forbidden.append((y,) + (x,) * k + (y,))
    for i in range(max_degree - 2):
        for j in range(max_degree - 2 - i):
            forbidden.append((y,) + (x,) * i + (y,) + (x,) * j + (y,))
    return MonomialPresentation(2, tuple(forbidden))


def nilpotent_y_series(a: Series, k: int, N: int) -> Series:
    """sum_{i<k} t^i/(1-t)^(i+1) + a(t) t^k/(1-t)^k.

    For k = 2 this is the Borho-Kraft profile; general k corresponds to
    words with fewer than k letters y plus a prescribed set of words with k.
    """
    if k < 1:
        raise BadParameter(f"Nilpotency index must be >= 1, got {k}")
    if a.order < N - k:
        raise InsufficientOrder(f"Need a(t) to order {N - k}, got {a.order}")
    total = Series.zero(N)
    for i in range(k):
        total = total + expand_rational(geometric(exponent=i + 1), N).shift(i)
    padded = Series.from_coeffs(a.coeffs[:N + 1], N)
    return total + (padded * expand_rational(geometric(exponent=k), N)).shift(k)


def prescribed_check(a: Series, d: int, p: int, N: int) -> Series:
    """Target series 1/(1-dt) + t/(1-dt)^2 + t^2 a(t)/(1-dt)^p to order N.

    This is the Hilbert series of a (d+1)-generated monomial algebra that
    exists whenever 0 <= a_n <= d^n.

    Raises:
        CoefficientBoundViolated: If some a_n is negative, fractional or above d^n
        BadParameter: If p is not 0, 1 or 2 or d < 1
    """
    if p not in (0, 1, 2):
        raise BadParameter(f"Exponent p must be 0, 1 or 2, got {p}")
    if d < 1:
        raise BadParameter(f"d must be >= 1, got {d}")
    if a.order < N - 2:
        raise InsufficientOrder(f"Need a(t) to order {N - 2}, got {a.order}")
    for n, c in enumerate(a.coeffs[:N + 1]):
        if c < 0 or c.denominator != 1 or c > d ** n:
            raise CoefficientBoundViolated(f"a_{n} = {c} is not an integer in [0, {d ** n}]")
    padded = Series.from_coeffs(a.coeffs[:N + 1], N)
    base = expand_rational(geometric(d), N) + expand_rational(geometric(d, exponent=2), N).shift(1)
    if p == 0:
        tail = padded
    else:
        tail = padded * expand_rational(geometric(d, exponent=p), N)
    return base + tail.shift(2)
