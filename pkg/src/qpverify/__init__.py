"""Exact-arithmetic checks for Yang-Baxter, Schouten and Poisson-pencil
identities on semisimple Lie algebras, plus the combinatorial classification
of good semisimple orbits."""

__version__ = "0.1.0"
