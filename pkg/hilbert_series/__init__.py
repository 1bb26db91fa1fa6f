"""Exact Hilbert series of graded algebras.

This package computes, recognises and cross-checks generating functions of
monomial algebras, free Omega-magmas and algebras of invariants using exact
rational arithmetic throughout.
"""

__version__ = "0.1.0"
