"""Lie algebras, the PBW engine for U(g) and the graded symmetric coalgebra S(g)."""
