"""
Exact integer polynomials.

Polynomials are plain lists of ints, lowest degree first, for everything that
has an exact integer lift: Frobenius iterates, cyclotomic factors, tower
minimal polynomials and resultants.  Exact operations go through sympy's
``Poly`` over ZZ.  Functions taking a modulus ``m`` reduce every coefficient
into ``[0, m)`` and use Kronecker packing instead.
"""

from math import comb
from typing import List, Optional, Sequence, Tuple

from sympy import Poly, symbols
from sympy.polys.polyerrors import ExactQuotientFailed

IntPoly = List[int]

_X = symbols("X")


def trim(a: Sequence[int]) -> IntPoly:
    """Drop trailing zero coefficients (the zero polynomial becomes [])."""
    out = list(a)
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(a: Sequence[int]) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(trim(a)) - 1


def to_sympy(a: Sequence[int]) -> Poly:
    coeffs = list(reversed(trim(a))) or [0]
    return Poly(coeffs, _X, domain="ZZ")


def from_sympy(f: Poly) -> IntPoly:
    return trim([int(c) for c in reversed(f.all_coeffs())])


def add(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def scale(a: Sequence[int], c: int) -> IntPoly:
    return trim([c * x for x in a])


def mul(a: Sequence[int], b: Sequence[int], cap: Optional[int] = None) -> IntPoly:
    """
    Product, optionally truncated to degree ``cap``.

    Args:
        a: First factor
        b: Second factor
        cap: Highest degree kept (None for the full product)
    """
    if not trim(a) or not trim(b):
        return []
    product = from_sympy(to_sympy(a) * to_sympy(b))
    return product if cap is None else trim(product[: cap + 1])


def mul_mod(a: Sequence[int], b: Sequence[int], m: int, cap: Optional[int] = None) -> IntPoly:
    """
    Product modulo ``m`` via Kronecker substitution.

    Modular fast path: coefficients are packed into one big integer so the
    multiplication runs in CPython's long-integer kernel.
    """
    a = [x % m for x in a]
    b = [x % m for x in b]
    if not any(a) or not any(b):
        return []
    n = min(len(a), len(b))
    width = 2 * m.bit_length() + n.bit_length() + 1
    pa = _pack(a, width)
    pb = _pack(b, width)
    coeffs = _unpack(pa * pb, width, len(a) + len(b) - 1)
    if cap is not None:
        coeffs = coeffs[: cap + 1]
    return trim([c % m for c in coeffs])


def _pack(a: Sequence[int], width: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc << width) | c
    return acc


def _unpack(value: int, width: int, count: int) -> IntPoly:
    mask = (1 << width) - 1
    out = []
    for _ in range(count):
        out.append(value & mask)
        value >>= width
    return out


def reduce_mod(a: Sequence[int], m: int) -> IntPoly:
    return trim([x % m for x in a])


def compose(outer: Sequence[int], inner: Sequence[int]) -> IntPoly:
    """Exact composition ``outer(inner(X))``."""
    if not trim(outer):
        return []
    return from_sympy(to_sympy(outer).compose(to_sympy(inner)))


def compose_mod(outer: Sequence[int], inner: Sequence[int], m: int, cap: int) -> IntPoly:
    """Composition modulo ``(m, X**(cap+1))``; the modular fast path, Horner on packed products."""
    result: IntPoly = []
    for c in reversed(trim(outer)):
        if result:
            result = mul_mod(result, inner, m, cap)
        result = reduce_mod(add(result, [c]), m)
    return result


def iterates_mod(f: Sequence[int], count: int, m: int, cap: int) -> List[IntPoly]:
    """
    The iterates ``f, f∘f, ...`` modulo ``(m, X**(cap+1))``.

    Returns:
        List whose entry k-1 is the k-th iterate.
    """
    out: List[IntPoly] = []
    current = reduce_mod(list(f)[: cap + 1], m)
    for _ in range(count):
        out.append(current)
        current = compose_mod(f, current, m, cap)
    return out


def _check_monic(g: Sequence[int]) -> IntPoly:
    g = trim(g)
    if not g or g[-1] != 1:
        raise ValueError("divisor must be monic")
    return g


def divmod_monic(a: Sequence[int], g: Sequence[int]) -> Tuple[IntPoly, IntPoly]:
    """
    Exact division with remainder by a monic polynomial.

    Raises:
        ValueError: if g is not monic
    """
    g = _check_monic(g)
    q, r = to_sympy(a).div(to_sympy(g), auto=False)
    return from_sympy(q), from_sympy(r)


def rem_monic(a: Sequence[int], g: Sequence[int]) -> IntPoly:
    return divmod_monic(a, g)[1]


def exact_quotient(a: Sequence[int], g: Sequence[int]) -> IntPoly:
    """
    Quotient a / g for monic g dividing a exactly.

    Raises:
        ValueError: if g is not monic or does not divide a
    """
    g = _check_monic(g)
    try:
        return from_sympy(to_sympy(a).exquo(to_sympy(g), auto=False))
    except ExactQuotientFailed as e:
        raise ValueError("polynomial division is not exact") from e


def binomial_shift(k: int) -> IntPoly:
    """The polynomial ``(1+X)**k - 1``."""
    return trim([0] + [comb(k, i) for i in range(1, k + 1)])


def evaluate(a: Sequence[int], x: int) -> int:
    return int(to_sympy(a).eval(x))


def derivative(a: Sequence[int]) -> IntPoly:
    return from_sympy(to_sympy(a).diff(_X))


def int_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of two integer polynomials (sympy, exact)."""
    f, g = trim(f), trim(g)
    if not f or not g:
        return 0
    if len(f) == 1:
        return f[0] ** (len(g) - 1)
    if len(g) == 1:
        return g[0] ** (len(f) - 1)
    return int(to_sympy(f).resultant(to_sympy(g)))


def gcd_degree(f: Sequence[int], g: Sequence[int]) -> int:
    """Degree of gcd(f, g) over Q."""
    f, g = trim(f), trim(g)
    if not f:
        return degree(g)
    if not g:
        return degree(f)
    return int(to_sympy(f).gcd(to_sympy(g)).degree())
