"""
ssiwasawa: constructive supersingular Iwasawa theory at finite precision.

Exact and certified p-adic computations behind plus/minus Iwasawa theory:
bounded-precision p-adic scalars and Iwasawa series, Lubin–Tate and Honda
formal groups with their division towers, finitely presented modules through
Smith normal forms, and the growth formulas built on top of them.
"""

__version__ = "0.1.0"
