"""Exact SL2 fundamental pairs, structure and extension computations."""
