"""Clustered shortest-path tree problems: exact and approximate solvers,
hardness gadgets and brute-force oracles."""

__version__ = "0.1.0"
