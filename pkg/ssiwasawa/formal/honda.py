"""
The supersingular formal group of Honda type attached to a good lift f.

    ℓ(X) = Σ_{k≥0} (-1)^k f^(2k)(X) / p^k,      G(X, Y) = ℓ^{-1}(ℓ(X) + ℓ(Y)).

G has Z_p-integral coefficients and height 2.  Points are carried with their
ℓ-value, which is an exact finite sum for the points used here,

    ℓ(c_n) = p/(p+1) + Σ_k (-1)^k e_(n-2k) / p^k,     c_n = e_n [+]_G ε,

and, when the degree budget certifies the tail, with their coordinate
G(e_n, ε) as well.  ℓ is injective and Galois-equivariant on G(k_n), so trace
relations are decided on ℓ-values; group coordinates are an extra route.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel

from ssiwasawa.arith import intpoly
from ssiwasawa.arith.padic import INF, PadicContext, PadicScalar, Valuation
from ssiwasawa.arith.series import BivariateSeries, IwasawaSeries
from ssiwasawa.formal.lubin_tate import FrobeniusLift, working_context
from ssiwasawa.formal.tower import (
    TowerElement,
    TowerRing,
    build_tower,
    delta_trace,
    extension_degree,
    field_trace,
    galois_conjugates,
    in_L,
    l_trace,
)
from ssiwasawa.settings.config import EZeroConvention
from ssiwasawa.utils.errors import ConvergenceGuard, InputError, PrecisionExhausted
from ssiwasawa.utils.logging import get_logger

logger = get_logger("ssiwasawa.honda")

# The trace of Frobenius is zero for the supersingular curves modelled here.
A_P = 0

Sign = str  # "+" or "-"


@dataclass(frozen=True, eq=False)
class HondaGroup:
    """Logarithm, exponential and truncated law of the Honda formal group."""

    lift: FrobeniusLift
    ctx: PadicContext
    target: PadicContext
    D: int
    log: IwasawaSeries
    exp: IwasawaSeries
    law: BivariateSeries
    integral: bool = True
    homomorphism_digits: Valuation = INF
    _cache: Dict[Any, Any] = field(default_factory=dict, repr=False)

    @property
    def p(self) -> int:
        return self.lift.p

    def mult_by(self, a: int) -> IwasawaSeries:
        """[a]_G = exp(a·ℓ)."""
        return self.exp.compose(self.log.scale(PadicScalar.from_int(self.ctx, a)))

    def tower(self, level: int) -> TowerRing:
        """The division-point tower over this group's working context (cached per level)."""
        key = ("tower", level)
        if key not in self._cache:
            self._cache[key] = build_tower(self.lift, level, ctx=self.ctx)
        return self._cache[key]

    def height_two(self) -> bool:
        """[p]_G ≡ unit·X^(p²) mod p: lower coefficients divisible by p, the X^(p²) one a unit."""
        p = self.p
        if self.D < p * p:
            raise InputError(f"degree {self.D} is below p^2 = {p * p}")
        series = self.mult_by(p)
        low = all(series[i].valuation_floor() >= 1 for i in range(1, p * p))
        return low and series[p * p].is_unit()


def _honda_log_series(f: FrobeniusLift, D: int, work: PadicContext) -> IwasawaSeries:
    p = f.p
    Nw = work.N
    cap = Nw + math.ceil(math.log(max(D, 2), p)) + 4
    modulus = p ** (Nw + cap + 1)
    poly = list(f.poly)
    acc: List[PadicScalar] = [work.zero()] * (D + 1)
    current: List[int] = [0, 1]
    for k in range(cap + 1):
        if k > 0 and all(c % p ** (Nw + k) == 0 for c in current[: D + 1]):
            logger.debug("Honda logarithm: term %d vanishes below degree %d", k, D)
            return IwasawaSeries(work, D, tuple(acc))
        sign = -1 if k % 2 else 1
        padded = current[: D + 1] + [0] * (D + 1 - len(current))
        acc = [a + PadicScalar.from_scaled_residue(work, sign * c, -k, Nw) for a, c in zip(acc, padded)]
        current = intpoly.compose_mod(poly, intpoly.compose_mod(poly, current, modulus, D), modulus, D)
    raise ConvergenceGuard(
        f"terms f^(2k)/p^k did not vanish to {Nw} digits below degree {D}",
        iterations=cap,
        budget=cap,
    )


def honda_logarithm(
    f: FrobeniusLift,
    D: int,
    N: Optional[int] = None,
    guard: Optional[int] = None,
    verify: bool = True,
) -> HondaGroup:
    """
    Build ℓ, its inverse and G truncated at degree D.

    Integrality of G is checked on every coefficient whose valuation is
    certified; a failure is logged as an error since it can only come from a
    series bug.  With ``verify`` the identity ℓ(G(X, Y)) = ℓ(X) + ℓ(Y) is
    checked and the certified digits recorded.

    Raises:
        ConvergenceGuard: if the defining sum does not terminate
    """
    target = f.ctx if N is None else f.ctx.with_precision(N)
    work = working_context(target, D, guard)
    log = _honda_log_series(f, D, work)
    exp = log.reversion()
    law = BivariateSeries.compose_univariate(exp, BivariateSeries.separated_sum(log, log))
    integral = all(c.valuation >= 0 for row in law.coeffs for c in row if not c.is_zero())
    if not integral:
        logger.error("Honda law has a coefficient with negative valuation at degree %d", D)
    digits: Valuation = INF
    if verify:
        diff = BivariateSeries.compose_univariate(log, law) - BivariateSeries.separated_sum(log, log)
        digits = diff.precision_floor() if diff.is_zero() else 0
        logger.verbose("Honda homomorphism identity holds to %s digits", digits)
    return HondaGroup(f, work, target, D, log, exp, law, integral, digits)


# -- points -----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FormalPoint:
    """
    A point of G over a tower field (or over Q_p), given by its ℓ-value and,
    when certified, its coordinate.
    """

    group: HondaGroup
    log_value: Union[TowerElement, PadicScalar]
    coordinate: Union[TowerElement, PadicScalar, None] = None
    label: str = ""

    @property
    def level(self) -> int:
        return self.log_value.level if isinstance(self.log_value, TowerElement) else 0

    def ordp(self) -> Optional[Fraction]:
        if self.coordinate is None:
            return None
        if isinstance(self.coordinate, PadicScalar):
            return Fraction(int(self.coordinate.valuation))
        return self.coordinate.ordp()


def epsilon_point(H: HondaGroup) -> FormalPoint:
    """
    The point ε ∈ pZ_p with ℓ(ε) = p/(p+1), by Newton iteration on ℓ.

    For v(x) ≥ 1 the omitted terms of ℓ have valuation at least
    (D+1) - ⌈log_p(D+1)⌉.

    Raises:
        ConvergenceGuard: if the iteration does not settle
    """
    if "epsilon" in H._cache:
        return H._cache["epsilon"]
    p, D, ctx = H.p, H.D, H.ctx
    t = PadicScalar.from_fraction(ctx, Fraction(p, p + 1))
    slope = H.log.derivative()
    log_digits = math.ceil(math.log(D + 1, p))
    x = t / H.log[1]
    for step in range(2 * ctx.N):
        residual = H.log.evaluate(x, (D + 1) - log_digits) - t
        if residual.is_zero():
            break
        x = x - residual / slope.evaluate(x, D - log_digits)
    else:
        raise ConvergenceGuard("Newton iteration for epsilon did not settle", iterations=2 * ctx.N)
    if x.valuation != 1:
        raise PrecisionExhausted(f"epsilon has valuation {x.valuation}, expected 1")
    logger.debug("epsilon settled after %d Newton steps: %r", step, x)
    point = FormalPoint(H, t, x, "epsilon")
    H._cache["epsilon"] = point
    return point


def point_level(n: int, convention: EZeroConvention) -> int:
    """Tower level holding e_n under the chosen convention for e_0."""
    return n if EZeroConvention(convention) is EZeroConvention.ZERO else n + 1


def _division_point(tower: TowerRing, j: int, convention: EZeroConvention) -> Optional[TowerElement]:
    idx = point_level(j, convention)
    if idx <= 0:
        return None
    return tower.division_point(idx)


def _sum_points(
    H: HondaGroup,
    coords: List[TowerElement],
    level: int,
) -> Optional[TowerElement]:
    """G-sum of coordinates, or None when the tail is not certified to the target precision."""
    v = min(c.value.valuation_floor() for c in coords)
    tail = (H.D + 1) * v
    if tail < H.target.N:
        return None
    acc = coords[0].value
    for c in coords[1:]:
        acc = H.law.evaluate(acc, c.value, tail)
    return TowerElement(coords[0].tower, acc, level)


def c_point(
    H: HondaGroup,
    tower: TowerRing,
    n: int,
    convention: EZeroConvention = EZeroConvention.ZERO,
    require_coordinate: bool = False,
) -> FormalPoint:
    """
    c_n = e_n [+]_G ε.

    Raises:
        InputError: if the tower is too short for e_n
        ConvergenceGuard: if ``require_coordinate`` and the degree does not
            certify G(e_n, ε) to the target precision
    """
    level = point_level(n, convention)
    if level > tower.level:
        raise InputError(f"c_{n} needs a tower of level {level}, got {tower.level}")
    key = ("c", id(tower), n, EZeroConvention(convention))
    if key in H._cache and (H._cache[key].coordinate is not None or not require_coordinate):
        return H._cache[key]
    p = H.p
    eps = epsilon_point(H)
    log_value = tower.scalar(eps.log_value)
    k = 0
    while True:
        e = _division_point(tower, n - 2 * k, convention)
        if e is None:
            break
        log_value = log_value + e * PadicScalar.from_int(H.ctx, (-1) ** k).shift(-k)
        k += 1
    log_value = log_value.at_level(max(level, 0))

    e_n = _division_point(tower, n, convention)
    coordinate: Optional[TowerElement]
    if e_n is None:
        coordinate = tower.scalar(eps.coordinate)
    else:
        tail = Fraction(H.D + 1, extension_degree(p, level, 0))
        if tail >= H.target.N:
            coordinate = TowerElement(tower, H.law.evaluate(e_n.value, eps.coordinate, tail), level)
        else:
            if require_coordinate:
                raise ConvergenceGuard(
                    f"degree {H.D} certifies only {tail} digits of c_{n}; {H.target.N} wanted",
                )
            logger.verbose("c_%d kept in log coordinates (tail %s below %d digits)", n, tail, H.target.N)
            coordinate = None
    point = FormalPoint(H, log_value, coordinate, f"c_{n}")
    H._cache[key] = point
    return point


def formal_trace(H: HondaGroup, x: FormalPoint, m: int) -> FormalPoint:
    """
    Trace from the point's level down to k_m with respect to the group law.

    The ℓ-value is the field trace of ℓ(x); the coordinate is the G-sum of the
    conjugate coordinates when every partial sum is certified.

    Raises:
        PrecisionExhausted: if the trace is not certified to lie in k_m
    """
    if not isinstance(x.log_value, TowerElement):
        raise InputError("formal trace of a point over Q_p")
    log_trace = field_trace(x.log_value, m)
    coordinate = None
    if isinstance(x.coordinate, TowerElement):
        coordinate = _sum_points(H, galois_conjugates(x.coordinate, m), m)
    return FormalPoint(H, log_trace, coordinate, f"Tr({x.label})")


def d_point(
    H: HondaGroup,
    tower: TowerRing,
    n: int,
    convention: EZeroConvention = EZeroConvention.ZERO,
) -> FormalPoint:
    """
    d_n = Tr_{k_(n+1)/L_n}(c_(n+1)), the G-sum of the Δ-conjugates of c_(n+1).

    Raises:
        PrecisionExhausted: if the result is not certified Δ-invariant
    """
    c = c_point(H, tower, n + 1, convention)
    log_value = delta_trace(c.log_value)
    if not in_L(log_value, c.level - 1):
        raise PrecisionExhausted(f"d_{n} is not certified to lie in L_{c.level - 1}")
    coordinate = None
    if isinstance(c.coordinate, TowerElement):
        tower_ = c.coordinate.tower
        conjugates = tower_.orbit(c.coordinate, tower_.delta_generator(), H.p - 1)
        coordinate = _sum_points(H, conjugates, c.level)
    return FormalPoint(H, log_value, coordinate, f"d_{n}")


def d_pm_point(
    H: HondaGroup,
    tower: TowerRing,
    n: int,
    sign: Sign,
    convention: EZeroConvention = EZeroConvention.ZERO,
) -> FormalPoint:
    """d_n^+ is d_n for even n and d_(n-1) for odd n; d_n^- the other way round."""
    if sign not in ("+", "-"):
        raise InputError(f"sign must be '+' or '-', got {sign!r}")
    own = (n % 2 == 0) == (sign == "+")
    index = n if own else n - 1
    if index < 0:
        raise InputError(f"d_{n}^{sign} needs d_{index}")
    return d_point(H, tower, index, convention)


def pm_membership(x: FormalPoint, sign: Sign, n: Optional[int] = None) -> bool:
    """
    Whether x ∈ G^±(L_n): Tr^n_m(x) ∈ G(L_(m-1)) for every 1 ≤ m ≤ n with m
    odd (+) or even (-).  Decided on ℓ-values.

    Args:
        x: A point of G(L_n)
        sign: "+" or "-"
        n: The L-level; defaults to the point's own level
    """
    if sign not in ("+", "-"):
        raise InputError(f"sign must be '+' or '-', got {sign!r}")
    if not isinstance(x.log_value, TowerElement):
        return True
    if n is None:
        n = max(x.level - 1, 0)
    parity = 1 if sign == "+" else 0
    for m in range(1, n + 1):
        if m % 2 != parity:
            continue
        traced = l_trace(x.log_value, n, m)
        if not in_L(traced, m - 1):
            logger.debug("pm_membership(%s): trace to L_%d leaves L_%d", sign, m, m - 1)
            return False
    return True


# -- trace relations ------------------------------------------------------------------


class RelationCheck(BaseModel):
    """One verified identity between points, decided on ℓ-values."""

    name: str
    holds: bool
    digits: Optional[int] = None
    unit: Optional[str] = None
    group_route: Optional[bool] = None
    informational: bool = False


def _digits(diff: TowerElement) -> Optional[int]:
    floor = diff.value.precision_floor()
    return None if floor == INF else int(floor)


def _scalar_ratio(num: TowerElement, den: TowerElement) -> Optional[PadicScalar]:
    """The scalar u with num = u·den, if there is one."""
    candidates = [(c.valuation, i) for i, c in enumerate(den.coords) if not c.is_zero()]
    if not candidates:
        return None
    _, i = min(candidates)
    u = num.coords[i] / den.coords[i]
    return u if (num - den * u).is_zero() else None


def verify_c_trace(
    H: HondaGroup,
    tower: TowerRing,
    n: int,
    convention: EZeroConvention = EZeroConvention.ZERO,
) -> RelationCheck:
    """Tr^n_(n-1)(c_n) = -c_(n-2) for n ≥ 2."""
    c = c_point(H, tower, n, convention)
    traced = formal_trace(H, c, c.level - 1)
    other = c_point(H, tower, n - 2, convention)
    diff = traced.log_value + other.log_value
    group_route = None
    if isinstance(traced.coordinate, TowerElement) and isinstance(other.coordinate, TowerElement):
        inverse = H.mult_by(-1)
        tail = Fraction(H.D + 1, 1) * other.coordinate.value.valuation_floor()
        negated = inverse.evaluate(other.coordinate.value, tail)
        group_route = (traced.coordinate.value - negated).is_zero()
    return RelationCheck(
        name=f"Tr c_{n} = -c_{n - 2}",
        holds=diff.is_zero(),
        digits=_digits(diff),
        group_route=group_route,
    )


def verify_c_trace_base(
    H: HondaGroup,
    tower: TowerRing,
    convention: EZeroConvention = EZeroConvention.ZERO,
    informational: bool = False,
) -> RelationCheck:
    """Tr^1_0(c_1) = u·c_0 with u a unit of Z_p; u is reported."""
    c1 = c_point(H, tower, 1, convention)
    c0 = c_point(H, tower, 0, convention)
    traced = field_trace(c1.log_value, c1.level - 1, verify=False)
    base = c0.log_value if isinstance(c0.log_value, TowerElement) else tower.scalar(c0.log_value)
    u = _scalar_ratio(traced, base)
    holds = u is not None and u.is_unit()
    digits = _digits(traced - base * u) if u is not None else None
    return RelationCheck(
        name=f"Tr c_1 = u c_0 ({EZeroConvention(convention).value})",
        holds=holds,
        digits=digits,
        unit=repr(u) if u is not None else None,
        informational=informational,
    )


def verify_d_trace(H: HondaGroup, tower: TowerRing, n: int) -> RelationCheck:
    """Tr_{L_n/L_(n-1)}(d_n) = -d_(n-2), for n ≥ 2 in a tower of level n+1."""
    d = d_point(H, tower, n)
    other = d_point(H, tower, n - 2)
    traced = l_trace(d.log_value, n, n - 1)
    diff = traced + other.log_value
    return RelationCheck(name=f"Tr d_{n} = -d_{n - 2}", holds=diff.is_zero(), digits=_digits(diff))


def verify_d_trace_base(H: HondaGroup, tower: TowerRing) -> RelationCheck:
    """Tr_{L_1/L_0}(d_1) = u·d_0 with u a unit."""
    d1 = d_point(H, tower, 1)
    d0 = d_point(H, tower, 0)
    traced = l_trace(d1.log_value, 1, 0)
    u = _scalar_ratio(traced, d0.log_value)
    holds = u is not None and u.is_unit()
    digits = _digits(traced - d0.log_value * u) if u is not None else None
    return RelationCheck(name="Tr d_1 = u d_0", holds=holds, digits=digits, unit=repr(u) if u is not None else None)
