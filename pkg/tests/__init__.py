"""Tests package for the hilbert_series toolkit."""
