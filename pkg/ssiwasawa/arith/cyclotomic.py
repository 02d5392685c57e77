"""
The plus/minus cyclotomic polynomial calculus over Z_p.

Families (all exact integer polynomials in X, p fixed):

* ``Phi``: Φ_n(X) = Σ_{i<p} X^(i p^(n-1)), with Φ_0 = X - 1
* ``xi``: ξ_n = Φ_n(1+X)
* ``omega``: ω_n = (1+X)^(p^n) - 1
* ``omega_tilde_plus`` / ``omega_tilde_minus``: products of ξ_m over even / odd 1 ≤ m ≤ n
* ``omega_plus`` / ``omega_minus``: X times the matching tilde product

plus evaluation of Iwasawa series at ζ_n - 1 inside Z_p[μ_{p^n}] = Z_p[X]/(ξ_n).
"""

import enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

from ssiwasawa.arith import intpoly
from ssiwasawa.arith.eisenstein import EisensteinRing, RingElement
from ssiwasawa.arith.padic import PadicContext, int_valuation
from ssiwasawa.arith.series import IwasawaSeries
from ssiwasawa.utils.errors import InputError, NotFinite
from ssiwasawa.utils.logging import get_logger

logger = get_logger("ssiwasawa.cyclotomic")

# Elements of Z_p[X]/(ξ_n); π̂ = class of X = ζ_n - 1.
CyclotomicElement = RingElement


class CycloKind(str, enum.Enum):
    """Members of the cyclotomic family."""

    PHI = "Phi"
    XI = "xi"
    OMEGA = "omega"
    OMEGA_TILDE_PLUS = "omega_tilde_plus"
    OMEGA_TILDE_MINUS = "omega_tilde_minus"
    OMEGA_PLUS = "omega_plus"
    OMEGA_MINUS = "omega_minus"


@lru_cache(maxsize=256)
def _xi(p: int, n: int) -> Tuple[int, ...]:
    if n == 0:
        return (0, 1)
    return tuple(intpoly.exact_quotient(intpoly.binomial_shift(p**n), intpoly.binomial_shift(p ** (n - 1))))


@lru_cache(maxsize=256)
def cyclo_ints(p: int, n: int, which: CycloKind) -> Tuple[int, ...]:
    """
    Integer coefficients (lowest degree first) of a family member.

    Raises:
        InputError: if n is negative
    """
    if n < 0:
        raise InputError(f"level must be nonnegative, got {n}")
    which = CycloKind(which)
    if which is CycloKind.PHI:
        if n == 0:
            return (-1, 1)
        step = p ** (n - 1)
        poly = [0] * (step * (p - 1) + 1)
        for i in range(p):
            poly[i * step] = 1
        return tuple(poly)
    if which is CycloKind.XI:
        return _xi(p, n)
    if which is CycloKind.OMEGA:
        return tuple(intpoly.binomial_shift(p**n))
    parity = 0 if which in (CycloKind.OMEGA_TILDE_PLUS, CycloKind.OMEGA_PLUS) else 1
    product: List[int] = [1]
    for m in range(1, n + 1):
        if m % 2 == parity:
            product = intpoly.mul(product, _xi(p, m))
    if which in (CycloKind.OMEGA_PLUS, CycloKind.OMEGA_MINUS):
        product = [0] + product
    return tuple(product)


def cyclo_family(ctx: PadicContext, n: int, which: Union[CycloKind, str]) -> IwasawaSeries:
    """A member of the cyclotomic family as a polynomial-exact series."""
    return IwasawaSeries.from_ints(ctx, cyclo_ints(ctx.p, n, CycloKind(which)))


def cyclo_degree(p: int, n: int, which: Union[CycloKind, str]) -> int:
    return len(cyclo_ints(p, n, CycloKind(which))) - 1


def q_value(p: int, n: int) -> int:
    """
    The alternating p-power sum q_n.

    q_n = Σ_{i=i0}^{n-1} (-1)^(n-1-i) p^i with i0 = 0 for even n and 1 for odd n;
    empty sums are 0.
    """
    if n < 0:
        raise InputError(f"level must be nonnegative, got {n}")
    start = 0 if n % 2 == 0 else 1
    return sum((-1) ** (n - 1 - i) * p**i for i in range(start, n))


def q_sum(p: int, n: int) -> int:
    """Σ_{k=0}^{n} q_k."""
    return sum(q_value(p, k) for k in range(n + 1))


def stabilization_level(p: int, lam: int) -> int:
    """Smallest n ≥ 1 with p^n - p^(n-1) > λ; past it ord_p g(ζ_n - 1) = μ + λ/(p^n - p^(n-1))."""
    if lam < 0:
        raise InputError(f"lambda must be nonnegative, got {lam}")
    n = 1
    while p**n - p ** (n - 1) <= lam:
        n += 1
    return n


@lru_cache(maxsize=64)
def cyclotomic_ring(ctx: PadicContext, n: int) -> EisensteinRing:
    """Z_p[μ_{p^n}] realized as Z_p[X]/(ξ_n)."""
    if n < 1:
        raise InputError(f"cyclotomic level must be at least 1, got {n}")
    return EisensteinRing(ctx, _xi(ctx.p, n), level=n, label=f"xi_{n}")


def eval_at_zeta(g: IwasawaSeries, n: int) -> CyclotomicElement:
    """
    The value g(ζ_n - 1), i.e. g reduced modulo ξ_n.

    Truncated series get their tail folded in as an error term: the omitted
    terms X^k, k > D, have ord_p at least (D+1)/(p^n - p^(n-1)).
    """
    ring = cyclotomic_ring(g.ctx, n)
    if g.polynomial_exact and all(c.is_exact and c.to_fraction().denominator == 1 for c in g.coeffs):
        return ring.from_ints(g.int_coefficients())
    value = ring.from_scalars(list(g.coeffs))
    if not g.polynomial_exact:
        value = value.add_error(Fraction(g.D + 1, ring.degree))
    return value


def ordp_fractional(x: CyclotomicElement) -> Fraction:
    """ord_p of an element of the cyclotomic DVR (ord_p(p) = 1)."""
    return x.ordp()


def _exact_ints(f: Union[IwasawaSeries, Sequence[int]]) -> List[int]:
    if isinstance(f, IwasawaSeries):
        return f.int_coefficients()
    return list(f)


def quotient_order_resultant(
    f: Union[IwasawaSeries, Sequence[int]],
    g: Union[IwasawaSeries, Sequence[int]],
    p: int,
) -> int:
    """
    ord_p #(Z_p[X]/(f, g)) computed as ord_p Res(f, g) from exact integer lifts.

    Raises:
        NotFinite: if the resultant vanishes (common factor)
        PrecisionExhausted: if a series has no exact integer lift
    """
    fi, gi = _exact_ints(f), _exact_ints(g)
    res = intpoly.int_resultant(fi, gi)
    if res == 0:
        raise NotFinite(
            "resultant is zero: f and g share a factor, quotient is infinite",
            {"gcd_degree": intpoly.gcd_degree(fi, gi)},
        )
    return int_valuation(res, p)


def q_table_rows(p: int, n_max: int) -> List[Dict[str, int]]:
    """Rows (n, q_n, Σq_k, deg ω̃_n^+, deg ω̃_n^-) for n = 0..n_max."""
    rows = []
    running = 0
    for n in range(n_max + 1):
        q = q_value(p, n)
        running += q
        rows.append(
            {
                "n": n,
                "q_n": q,
                "sum_q": running,
                "deg_omega_tilde_plus": cyclo_degree(p, n, CycloKind.OMEGA_TILDE_PLUS),
                "deg_omega_tilde_minus": cyclo_degree(p, n, CycloKind.OMEGA_TILDE_MINUS),
            }
        )
    return rows


def degree_table_rows(p: int, n_max: int) -> List[Dict[str, int]]:
    """Degrees of every family member for n = 0..n_max."""
    rows = []
    for n in range(n_max + 1):
        row = {"n": n}
        for kind in (
            CycloKind.XI,
            CycloKind.OMEGA,
            CycloKind.OMEGA_TILDE_PLUS,
            CycloKind.OMEGA_TILDE_MINUS,
            CycloKind.OMEGA_PLUS,
            CycloKind.OMEGA_MINUS,
        ):
            row[f"deg_{kind.value}"] = cyclo_degree(p, n, kind)
        rows.append(row)
    return rows
