"""Shared pytest fixtures for all tests."""

import random
from typing import Optional

import pytest

from hilbert_series import invariants, magma, monomial
from hilbert_series.series_core import RationalFn, UniPoly, catalan_series


@pytest.fixture
def catalan_30():
    """Catalan series c(t) = t + t^2 + 2t^3 + 5t^4 + ... to order 30."""
    return catalan_series(30)


@pytest.fixture
def geometric_2():
    """The rational function 1/(1 - 2t)."""
    return RationalFn(UniPoly((1,)), UniPoly((1, -2)))


@pytest.fixture
def binary():
    """One binary operation: planar binary trees."""
    return magma.BINARY


@pytest.fixture
def binary_ternary():
    """One binary and one ternary operation."""
    return magma.BINARY_TERNARY


@pytest.fixture
def super_catalan():
    """One operation of every arity n >= 2, p(t) = t^2/(1-t)."""
    return magma.SUPER_CATALAN


@pytest.fixture
def fibonacci_presentation():
    """Two letters x, y with yy forbidden; normal word counts are Fibonacci numbers."""
    return monomial.MonomialPresentation(2, ((2, 2),))


@pytest.fixture
def free_presentation():
    """Two letters and no relations: the free algebra."""
    return monomial.MonomialPresentation(2, ())


@pytest.fixture
def s2_group():
    """S2 acting on two variables by swapping them."""
    return invariants.named_group("S2")


@pytest.fixture
def c3_group():
    """C3 acting on three variables by cyclic permutation."""
    return invariants.named_group("C3")


@pytest.fixture
def rng():
    """Seeded random generator so property tests are reproducible."""
    return random.Random(12345)


def make_random_presentation(rng: random.Random, max_letters: int = 3, max_length: int = 4,
                             longest: Optional[int] = None):
    """Random presentation with up to four forbidden words.

    With `longest` set, draws are repeated until the longest forbidden word
    left after antichain reduction has exactly that length.
    """
    while True:
        d = rng.randint(1, max_letters)
        words = []
        for _ in range(rng.randint(0 if longest is None else 1, 4)):
            length = rng.randint(1 if d > 1 else 2, max_length)
            words.append(tuple(rng.randint(1, d) for _ in range(length)))
        pres = monomial.MonomialPresentation(d, tuple(words))
        if longest is None or pres.max_length == longest:
            return pres
