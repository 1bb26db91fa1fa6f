"""
Unit tests for monomial algebras: normal words, Ufnarovskij graphs,
rational Hilbert series and prescribed-series constructions.
"""

import pytest

from hilbert_series import monomial
from hilbert_series.monomial import (
    CoefficientBoundViolated,
    InvalidPresentation,
    MonomialPresentation,
    ResourceLimit,
)
from hilbert_series.series_core import (
    T,
    BadParameter,
    InsufficientOrder,
    RationalFn,
    Series,
    expand_rational,
)
from tests.conftest import make_random_presentation


X, Y, Z = 1, 2, 3


class TestPresentation:
    """Test presentation validation and normalization."""

    def test_forbidden_reduced_to_antichain(self):
        """Test that words containing another forbidden word are dropped."""
        pres = MonomialPresentation(2, ((Y, Y, X), (Y, Y), (X, Y, Y, X)))

        assert pres.forbidden == ((Y, Y),)
        assert pres.max_length == 2

    @pytest.mark.parametrize("d, forbidden, weights", [
        (0, (), None),
        (2, ((),), None),
        (2, ((1, 3),), None),
        (2, (), (1, 0)),
        (2, (), (1,)),
    ])
    def test_invalid(self, d, forbidden, weights):
        """Test empty words, letters out of range and bad weights."""
        with pytest.raises(InvalidPresentation):
            MonomialPresentation(d, forbidden, weights)

    def test_is_normal(self, fibonacci_presentation):
        """Test the factor check."""
        assert fibonacci_presentation.is_normal((X, Y, X, Y))
        assert not fibonacci_presentation.is_normal((X, Y, Y, X))

    def test_json(self, fibonacci_presentation):
        """Test the JSON form with default weights."""
        data = fibonacci_presentation.to_json()

        assert data == {"d": 2, "forbidden": [[2, 2]], "weights": [1, 1]}
        assert MonomialPresentation.from_json(data) == fibonacci_presentation

    def test_json_missing_alphabet(self):
        """Test that 'd' is required."""
        with pytest.raises(InvalidPresentation, match="Malformed"):
            MonomialPresentation.from_json({"forbidden": []})


class TestWords:
    """Test word rendering and enumeration."""

    def test_word_names(self):
        """Test letters x, y and the empty word."""
        assert monomial.word_to_str((X, Y, Y), 2) == "xyy"
        assert monomial.word_to_str((), 2) == "1"
        assert monomial.word_from_str("yx") == (Y, X)

    def test_large_alphabet(self):
        """Test indexed letters past the named ones."""
        assert monomial.word_to_str((1, 7), 7) == "x1*x7"

    def test_normal_words(self, fibonacci_presentation):
        """Test the five words of length 3 avoiding yy."""
        words = monomial.normal_words(fibonacci_presentation, 3)

        assert words == [(X, X, X), (X, X, Y), (X, Y, X), (Y, X, X), (Y, X, Y)]

    def test_weighted_normal_words(self):
        """Test words of weight 2 when y has degree 2."""
        pres = MonomialPresentation(2, (), (1, 2))

        assert monomial.normal_words(pres, 2) == [(X, X), (Y,)]


class TestNormalCount:
    """Test brute-force Hilbert series."""

    def test_fibonacci(self, fibonacci_presentation):
        """Test that avoiding yy gives Fibonacci numbers."""
        f = monomial.normal_count(fibonacci_presentation, 7)

        assert f.integer_coefficients() == [1, 2, 3, 5, 8, 13, 21, 34]

    def test_free_algebra(self, free_presentation):
        """Test 2^n words without relations."""
        assert monomial.normal_count(free_presentation, 6).integer_coefficients() == [1, 2, 4, 8, 16, 32, 64]

    def test_finite_dimensional(self):
        """Test that forbidding x^3 in one letter leaves 1, t, t^2."""
        pres = MonomialPresentation(1, ((X, X, X),))

        assert monomial.normal_count(pres, 5).integer_coefficients() == [1, 1, 1, 0, 0, 0]

    def test_long_forbidden_word_one_letter(self):
        """Test that forbidding x^4 cuts the series off after t^3."""
        pres = MonomialPresentation(1, ((X, X, X, X),))

        assert monomial.normal_count(pres, 6).integer_coefficients() == [1, 1, 1, 1, 0, 0, 0]

    def test_long_forbidden_word_two_letters(self):
        """Test that xyyx removes one word of length 4 and four of length 5."""
        pres = MonomialPresentation(2, ((X, Y, Y, X),))

        assert monomial.normal_count(pres, 5).integer_coefficients() == [1, 2, 4, 8, 15, 28]

    def test_mixed_forbidden_lengths(self):
        """Test xx together with yxyy against the words counted by hand."""
        pres = MonomialPresentation(2, ((X, X), (Y, X, Y, Y)))

        assert monomial.normal_count(pres, 5).integer_coefficients() == [1, 2, 3, 5, 7, 9]

    def test_matches_direct_enumeration(self, rng):
        """Test the suffix automaton against listing the normal words."""
        for trial in range(20):
            pres = make_random_presentation(rng, longest=4)
            expected = [len(monomial.normal_words(pres, n)) for n in range(9)]

            assert monomial.normal_count(pres, 8).integer_coefficients() == expected, (
                f"Trial {trial}: {pres.forbidden} over {pres.d} letters"
            )

    def test_state_limit(self, fibonacci_presentation):
        """Test that the state table is bounded."""
        with pytest.raises(ResourceLimit):
            monomial.normal_count(fibonacci_presentation, 10, limit=1)


class TestUfnarovskijGraph:
    """Test graph construction, growth and DOT output."""

    def test_fibonacci_graph(self, fibonacci_presentation):
        """Test vertices x, y and the three allowed transitions."""
        graph = monomial.build_graph(fibonacci_presentation)

        assert graph.k == 1
        assert graph.vertices == ((X,), (Y,))
        assert set(graph.edges) == {((X,), (X,), X), ((X,), (Y,), Y), ((Y,), (X,), X)}

    def test_free_graph(self, free_presentation):
        """Test one vertex with a loop per letter."""
        graph = monomial.build_graph(free_presentation)

        assert graph.k == 0
        assert graph.edges == (((), (), X), ((), (), Y))

    def test_vertex_limit(self):
        """Test that oversized graphs are refused."""
        pres = MonomialPresentation(3, ((1, 1, 1, 1, 1),))

        with pytest.raises(ResourceLimit):
            monomial.build_graph(pres, vertex_limit=10)

    @pytest.mark.parametrize("forbidden, expected", [
        ((), monomial.GraphGrowth("Exponential")),
        (((Y, Y),), monomial.GraphGrowth("Exponential")),
        (((Y, X),), monomial.GraphGrowth("Polynomial", 2)),
        (((X, X), (Y, Y), (Y, X)), monomial.GraphGrowth("Polynomial", 0)),
    ])
    def test_growth_classify(self, forbidden, expected):
        """Test exponential, polynomial and finite-dimensional cases."""
        graph = monomial.build_graph(MonomialPresentation(2, forbidden))

        assert monomial.growth_classify(graph) == expected

    def test_single_letter(self):
        """Test that K[x] has GK dimension 1."""
        graph = monomial.build_graph(MonomialPresentation(1, ()))

        assert monomial.growth_classify(graph) == monomial.GraphGrowth("Polynomial", 1)

    def test_edges_match_longer_words(self, rng):
        """Test that edges correspond to the normal words of length k + 1."""
        for trial in range(30):
            pres = make_random_presentation(rng)
            graph = monomial.build_graph(pres)

            assert len(graph.edges) == len(monomial.words_of_length(pres, graph.k + 1)), (
                f"Trial {trial}: {pres.forbidden} over {pres.d} letters"
            )

    @pytest.mark.parametrize("d, forbidden, gk_dim, bound", [
        (2, ((Y, X),), 2, 2),
        (2, ((Y, Y), (Y, X)), 1, 2),
        (3, ((Y, X), (Z, X), (Z, Y)), 3, 3),
    ])
    def test_polynomial_growth_is_bounded(self, d, forbidden, gk_dim, bound):
        """Test that normal word counts stay below bound * n^(gk_dim - 1) up to n = 30."""
        pres = MonomialPresentation(d, forbidden)

        assert monomial.growth_classify(monomial.build_graph(pres)) == monomial.GraphGrowth("Polynomial", gk_dim)
        counts = monomial.normal_count(pres, 30).integer_coefficients()
        for n in range(1, 31):
            assert counts[n] <= bound * n ** (gk_dim - 1), f"n={n}: {counts[n]}"

    def test_classification_matches_counts(self, rng):
        """Test growth classes on random presentations against brute-force counts up to n = 30."""
        for trial in range(20):
            pres = make_random_presentation(rng)
            growth = monomial.growth_classify(monomial.build_graph(pres))
            counts = monomial.normal_count(pres, 30).integer_coefficients()
            label = f"Trial {trial}: {pres.forbidden} over {pres.d} letters"

            if growth.kind == "Exponential":
                ratios = [counts[n + 1] / counts[n] for n in range(20, 30)]
                assert max(ratios) > 1 + 1e-3, label
            elif growth.gk_dim == 0:
                assert counts[30] == 0, label
            else:
                assert all(c > 0 for c in counts), label

    def test_dot(self, fibonacci_presentation):
        """Test the DOT rendering."""
        dot = monomial.graph_to_dot(monomial.build_graph(fibonacci_presentation))

        assert dot.startswith("digraph ufnarovskij {")
        assert '"x" -> "y" [label="y"];' in dot
        assert '"y" -> "y"' not in dot


class TestHilbertRational:
    """Test rational Hilbert series from the transfer matrix."""

    def test_fibonacci(self, fibonacci_presentation):
        """Test (1 + t)/(1 - t - t^2)."""
        result = monomial.hilbert_rational(fibonacci_presentation)

        assert result == RationalFn.from_expr((1 + T) / (1 - T - T**2))

    def test_free(self, free_presentation, geometric_2):
        """Test 1/(1 - 2t) for the free algebra."""
        assert monomial.hilbert_rational(free_presentation) == geometric_2

    def test_weighted_generators(self):
        """Test 1/(1 - t - t^2) when y has degree 2."""
        pres = MonomialPresentation(2, (), (1, 2))

        assert monomial.hilbert_rational(pres) == RationalFn.from_expr(1 / (1 - T - T**2))

    def test_finite_dimensional(self):
        """Test that a nilpotent algebra has a polynomial Hilbert series."""
        pres = MonomialPresentation(1, ((X, X, X),))

        assert monomial.hilbert_rational(pres) == RationalFn.from_expr(1 + T + T**2)

    @pytest.mark.parametrize("longest", [2, 3, 4])
    def test_agrees_with_normal_count(self, rng, longest):
        """Test the transfer matrix against brute force on random presentations."""
        for trial in range(15):
            pres = make_random_presentation(rng, longest=longest)
            expected = monomial.normal_count(pres, 20)

            actual = expand_rational(monomial.hilbert_rational(pres), 20)

            assert actual == expected, f"Trial {trial}: {pres.forbidden} over {pres.d} letters"

    def test_mixed_forbidden_lengths(self):
        """Test xx with yxyy, whose counts are 1, 2, 3, 5, 7, 9, ..."""
        pres = MonomialPresentation(2, ((X, X), (Y, X, Y, Y)))

        assert monomial.hilbert_rational(pres) == RationalFn.from_expr((1 + T**3) / (1 - T) ** 2)

    def test_borho_kraft_gap_zero(self):
        """Test that yxx, yxy realize the Borho-Kraft series for S = {0}."""
        pres = MonomialPresentation(2, ((Y, X, X), (Y, X, Y)))
        expected = RationalFn.from_expr(1 / (1 - T) + T / (1 - T) ** 2 + T**2 / (1 - T) ** 2)

        assert monomial.hilbert_rational(pres) == expected
        assert expected == monomial.borho_kraft_closed_form({0})


class TestPrescribedSeries:
    """Test algebras with prescribed Hilbert series."""

    def test_borho_kraft_series(self):
        """Test S = {0}: 1, 2, 4, 6, 8."""
        assert monomial.borho_kraft_series({0}, 4).integer_coefficients() == [1, 2, 4, 6, 8]

    @pytest.mark.parametrize("S", [set(), {0}, {1, 3}, {0, 2, 5}])
    def test_closed_form(self, S):
        """Test that the closed form expands to the counting formula."""
        closed = monomial.borho_kraft_closed_form(S)

        assert expand_rational(closed, 15) == monomial.borho_kraft_series(S, 15)

    @pytest.mark.parametrize("S", [{0}, {1, 3}])
    def test_truncated_presentation(self, S):
        """Test that the finite forbidden set realizes the series up to its degree."""
        pres = monomial.borho_kraft_presentation(S, 9)

        assert monomial.normal_count(pres, 9) == monomial.borho_kraft_series(S, 9)

    def test_nilpotent_matches_borho_kraft(self):
        """Test that k = 2 with the indicator of S reproduces the Borho-Kraft series."""
        a = Series.from_coeffs([1, 0, 1], 12)

        assert monomial.nilpotent_y_series(a, 2, 12) == monomial.borho_kraft_series({0, 2}, 12)

    def test_nilpotent_needs_order(self):
        """Test that a(t) must reach degree N - k."""
        with pytest.raises(InsufficientOrder):
            monomial.nilpotent_y_series(Series.zero(3), 2, 10)
        with pytest.raises(BadParameter):
            monomial.nilpotent_y_series(Series.zero(10), 0, 10)

    def test_prescribed_check_base(self):
        """Test that a = 0 with d = 1 gives 1/(1-t) + t/(1-t)^2."""
        result = monomial.prescribed_check(Series.zero(8), 1, 0, 8)

        assert result.integer_coefficients() == [n + 1 for n in range(9)]

    def test_prescribed_check_all_gaps(self):
        """Test that a = 1/(1-t), d = 1, p = 2 is the Borho-Kraft series with every gap."""
        N = 12
        a = Series.from_coeffs([1] * (N + 1), N)

        result = monomial.prescribed_check(a, 1, 2, N)

        assert result == monomial.borho_kraft_series(set(range(N + 1)), N)

    def test_prescribed_check_bound(self):
        """Test that a_n > d^n is rejected."""
        a = Series.from_coeffs([0, 2], 8)

        with pytest.raises(CoefficientBoundViolated):
            monomial.prescribed_check(a, 1, 1, 8)

    def test_prescribed_check_exponent(self):
        """Test that only p in {0, 1, 2} is allowed."""
        with pytest.raises(BadParameter):
            monomial.prescribed_check(Series.zero(8), 1, 3, 8)
