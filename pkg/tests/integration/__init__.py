"""Integration tests package.

These tests recompute every worked example end to end against the golden
fixture. The largest rows (long series, exact kernels of 20+ columns) take
several seconds each and are also marked slow.

To run integration tests:
    pytest tests/integration/ -v -m integration

To skip the slow rows:
    pytest tests/ -v -m "not slow"
"""
