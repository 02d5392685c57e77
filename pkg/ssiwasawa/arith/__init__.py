"""Exact and bounded-precision arithmetic: Z_p scalars, integer polynomials, Iwasawa series, Eisenstein quotient rings and the cyclotomic family."""
