"""
Unit tests for free Omega-magmas and their submagmas.
"""

from fractions import Fraction

import pytest

from hilbert_series import magma
from hilbert_series.magma import (
    EmptySection,
    GeneratorWeights,
    InvalidSignature,
    OmegaSignature,
    ResourceLimit,
)
from hilbert_series.series_core import (
    T,
    Z,
    BadParameter,
    BiPoly,
    InsufficientOrder,
    RationalFn,
    Series,
    UniPoly,
    catalan_series,
    section,
)


class TestOmegaSignature:
    """Test signature validation and serialization."""

    def test_zero_counts_dropped(self):
        """Test that arities with no operations are removed and the rest sorted."""
        sig = OmegaSignature(arity_counts=((3, 2), (2, 0), (4, 1)))

        assert sig.arity_counts == ((3, 2), (4, 1))
        assert sig.arity_support() == [3, 4]

    @pytest.mark.parametrize("counts", [((1, 1),), ((2, -1),), ((2, 0),)])
    def test_invalid_counts(self, counts):
        """Test that unary operations, negative and empty signatures are rejected."""
        with pytest.raises(InvalidSignature):
            OmegaSignature(arity_counts=counts)

    def test_exactly_one_description(self):
        """Test that counts and closed form are mutually exclusive."""
        with pytest.raises(InvalidSignature, match="exactly one"):
            OmegaSignature()

    def test_closed_form_valuation(self):
        """Test that a closed form with a linear term is rejected."""
        with pytest.raises(InvalidSignature, match="valuation"):
            OmegaSignature(closed_form=RationalFn(UniPoly((0, 1)), UniPoly((1, -1))))

    def test_closed_form_negative_coefficient(self):
        """Test that t^2/(1 + t) is rejected for its alternating signs."""
        with pytest.raises(InvalidSignature, match="negative or fractional"):
            OmegaSignature(closed_form=RationalFn(UniPoly((0, 0, 1)), UniPoly((1, 1))))

    def test_super_catalan_support(self, super_catalan):
        """Test that every arity from 2 up to the scan order is present."""
        assert super_catalan.arity_support() == list(range(2, magma.SUPPORT_SCAN_ORDER + 1))
        assert super_catalan.arity_coefficients(5) == [0, 0, 1, 1, 1, 1]

    def test_json(self, binary, super_catalan):
        """Test both JSON shapes."""
        assert binary.to_json() == {"arities": {"2": 1}}
        assert OmegaSignature.from_json(super_catalan.to_json()).closed_form == super_catalan.closed_form

    def test_json_missing_keys(self):
        """Test that an empty signature document is rejected."""
        with pytest.raises(InvalidSignature, match="needs 'arities' or 'closed_form'"):
            OmegaSignature.from_json({})

    def test_named_signature(self):
        """Test lookup of the built-in signatures."""
        assert magma.named_signature("binary") is magma.BINARY
        with pytest.raises(InvalidSignature):
            magma.named_signature("quaternary")


class TestGeneratorWeights:
    """Test generator series validation."""

    def test_constant_term_rejected(self):
        """Test that generators of degree 0 are rejected."""
        with pytest.raises(InvalidSignature):
            GeneratorWeights(Series.one(4))

    def test_fractional_rejected(self):
        """Test that generator counts are integers."""
        with pytest.raises(InvalidSignature):
            GeneratorWeights(Series.from_coeffs([0, Fraction(1, 2)], 4))


class TestMagmaSeries:
    """Test the free magma generating function."""

    def test_binary_is_catalan(self, binary):
        """Test that one binary operation over one generator gives Catalan numbers."""
        f = magma.magma_series(binary, GeneratorWeights.single(20), 20)

        assert f == catalan_series(20)

    def test_super_catalan(self, super_catalan):
        """Test little Schroeder numbers."""
        f = magma.magma_series(super_catalan, GeneratorWeights.single(7), 7)

        assert f.integer_coefficients() == [0, 1, 1, 3, 11, 45, 197, 903]

    def test_two_generators(self, binary):
        """Test f = 2t + f^2: 2, 4, 16, 80."""
        f = magma.magma_series(binary, GeneratorWeights(Series.monomial(1, 4, 2)), 4)

        assert f.integer_coefficients() == [0, 2, 4, 16, 80]

    @pytest.mark.parametrize("name", ["binary", "ternary", "binary_ternary", "super_catalan"])
    def test_agrees_with_tree_count(self, name):
        """Test the recursive solution against the structural tree count."""
        sig = magma.named_signature(name)
        f = magma.magma_series(sig, GeneratorWeights.single(12), 12)

        for n in range(1, 13):
            assert f[n] == magma.brute_force_count(sig, n), f"Mismatch at n={n} for {name}"

    def test_order_checks(self, binary):
        """Test N >= 1 and a long enough generator series."""
        with pytest.raises(BadParameter):
            magma.magma_series(binary, GeneratorWeights.single(4), 0)
        with pytest.raises(InsufficientOrder):
            magma.magma_series(binary, GeneratorWeights.single(4), 8)


class TestTrees:
    """Test explicit tree counts and enumeration."""

    def test_binary_trees_with_three_leaves(self, binary):
        """Test the two planar binary trees with three leaves."""
        trees = magma.enumerate_trees(binary, 3)

        leaf = magma.LEAF
        assert len(trees) == 2
        assert ("w2_0", (leaf, ("w2_0", (leaf, leaf)))) in trees
        assert ("w2_0", (("w2_0", (leaf, leaf)), leaf)) in trees

    def test_enumeration_matches_count(self, binary_ternary):
        """Test that enumeration and counting agree."""
        for n in range(1, 7):
            trees = magma.enumerate_trees(binary_ternary, n)
            assert len(trees) == magma.brute_force_count(binary_ternary, n)
            assert len(set(trees)) == len(trees), f"Duplicate trees at n={n}"

    def test_operation_labels(self):
        """Test that two operations of arity 2 give distinct labels."""
        sig = OmegaSignature(arity_counts=((2, 2),))

        labels = {tree[0] for tree in magma.enumerate_trees(sig, 2)}

        assert labels == {"w2_0", "w2_1"}

    def test_count_limit(self, binary):
        """Test that counting stops at the configured limit."""
        with pytest.raises(ResourceLimit):
            magma.brute_force_count(binary, 10, limit=100)

    def test_tree_limit(self, binary):
        """Test that enumeration refuses oversized outputs."""
        with pytest.raises(ResourceLimit):
            magma.enumerate_trees(binary, 9, limit=1000)


class TestFreeMagmaEquation:
    """Test annihilators of one-generator magma series."""

    def test_binary(self, binary):
        """Test z^2 - z + t."""
        assert magma.free_magma_equation(binary) == BiPoly.from_expr(Z**2 - Z + T)

    def test_binary_ternary(self, binary_ternary):
        """Test z^3 + z^2 - z + t."""
        assert magma.free_magma_equation(binary_ternary) == BiPoly.from_expr(Z**3 + Z**2 - Z + T)

    def test_super_catalan(self, super_catalan):
        """Test 2z^2 - (1 + t)z + t."""
        expected = BiPoly.from_expr(2 * Z**2 - (1 + T) * Z + T)

        assert magma.free_magma_equation(super_catalan) == expected


class TestSubmagmas:
    """Test sections and submagma generators."""

    def test_section_nonempty(self, binary):
        """Test that ternary trees have only odd leaf numbers."""
        assert magma.section_nonempty(binary, 2)
        assert not magma.section_nonempty(magma.TERNARY, 2)
        assert magma.section_nonempty(magma.TERNARY, 3)

    def test_empty_section(self):
        """Test that an empty section is reported."""
        with pytest.raises(EmptySection):
            magma.submagma_generators(magma.TERNARY, 2, 10)

    def test_even_binary_generators(self, binary):
        """Test a = g - g^2 for the even Catalan section."""
        g_s, a = magma.submagma_generators(binary, 2, 8)

        assert g_s.integer_coefficients() == [0, 0, 1, 0, 5, 0, 42, 0, 429]
        assert a.integer_coefficients() == [0, 0, 1, 0, 4, 0, 32, 0, 320]

    def test_generators_are_counts(self, binary_ternary):
        """Test that the submagma generator series has nonnegative integer coefficients."""
        _, a = magma.submagma_generators(binary_ternary, 3, 15)

        assert a.is_nonnegative_integer()

    @pytest.mark.parametrize("sig, s", [
        (magma.BINARY, 2),
        (magma.BINARY, 3),
        (magma.BINARY_TERNARY, 3),
        (magma.SUPER_CATALAN, 2),
    ])
    def test_generators_rebuild_section(self, sig, s):
        """Test that the free magma on the submagma generators is the section itself."""
        N = 18
        g_s, a = magma.submagma_generators(sig, s, N)

        rebuilt = magma.magma_series(sig, GeneratorWeights(a), N)

        assert section(rebuilt, s) == g_s
        assert rebuilt == g_s

    def test_branch_parity_counts(self):
        """Test that even/odd root branches split c_6 = 42 into 10 + 32."""
        counts = magma.branch_parity_counts(6)

        assert counts == magma.ParityCounts(even=10, odd=32)

    def test_branch_parity_ratio(self):
        """Test the first exact generator ratios."""
        ratios = magma.branch_parity_ratio(6)

        assert ratios == [(2, Fraction(1)), (4, Fraction(4, 5)), (6, Fraction(32, 42))]

    def test_branch_parity_needs_even(self):
        """Test that odd leaf numbers are rejected."""
        with pytest.raises(BadParameter):
            magma.branch_parity_counts(5)
