"""Finitely presented modules: Smith normal form, Λ-quotient models and plus/minus L-data."""
