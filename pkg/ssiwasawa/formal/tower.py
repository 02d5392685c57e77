"""
Division-point towers k_n = Q_p(F_f[π^n]) and the subfields L_n ⊂ k_(n+1).

A tower is a single quotient ring Z_p[T]/(g_N) at its top level N, with

    g_N(T) = f^(N)(T) / f^(N-1)(T) = h(f^(N-1)(T)),   h(Y) = f(Y)/Y,

so T is a primitive π^N-division point e_N and e_m = f^(N-m)(e_N) lives in
the same ring.  Gal(k_N/Q_p) ≅ (Z/p^N)^× acts by σ_u(T) = [u]_f(T).  Every
Galois group used here is cyclic, so a trace is the orbit sum of a single
generator:

* Gal(k_N/k_m) for m ≥ 1 is generated by 1 + p^m;
* Gal(k_N/Q_p) by a primitive root modulo p^2;
* Δ = Gal(k_N/L_(N-1)) by the Teichmüller lift of a primitive root modulo p.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel
from sympy.ntheory import primitive_root

from ssiwasawa.arith import intpoly
from ssiwasawa.arith.eisenstein import EisensteinRing, RingElement
from ssiwasawa.arith.padic import PadicContext, PadicScalar, Valuation, teichmuller_residue
from ssiwasawa.arith.series import IwasawaSeries
from ssiwasawa.formal.lubin_tate import FrobeniusLift, lubin_tate_logarithm
from ssiwasawa.modules.snf import echelon
from ssiwasawa.utils.errors import CapExceeded, InputError, PrecisionExhausted
from ssiwasawa.utils.logging import get_logger

logger = get_logger("ssiwasawa.tower")

Matrix = List[List[PadicScalar]]


@lru_cache(maxsize=32)
def _iterate(poly: Tuple[int, ...], k: int) -> Tuple[int, ...]:
    """f^(k) as an exact integer polynomial (f^(0) = X)."""
    if k == 0:
        return (0, 1)
    return tuple(intpoly.compose(list(poly), list(_iterate(poly, k - 1))))


def tower_modulus(f: FrobeniusLift, n: int) -> Tuple[int, ...]:
    """The minimal polynomial g_n of e_n over Q_p."""
    h = list(f.poly[1:])
    return tuple(intpoly.compose(h, list(_iterate(f.poly, n - 1))))


@dataclass(frozen=True, slots=True, eq=False)
class TowerElement:
    """An element of the top ring, tagged with a level m such that it lies in k_m."""

    tower: "TowerRing"
    value: RingElement
    level: int

    @property
    def coords(self) -> Tuple[PadicScalar, ...]:
        return self.value.coords

    def _other(self, other: Union["TowerElement", PadicScalar, int]) -> Tuple[RingElement, int]:
        if isinstance(other, TowerElement):
            return other.value, other.level
        return self.tower.scalar(other).value, 0

    def __add__(self, other: Union["TowerElement", PadicScalar, int]) -> "TowerElement":
        value, level = self._other(other)
        return TowerElement(self.tower, self.value + value, max(self.level, level))

    __radd__ = __add__

    def __neg__(self) -> "TowerElement":
        return TowerElement(self.tower, -self.value, self.level)

    def __sub__(self, other: Union["TowerElement", PadicScalar, int]) -> "TowerElement":
        value, level = self._other(other)
        return TowerElement(self.tower, self.value - value, max(self.level, level))

    def __mul__(self, other: Union["TowerElement", PadicScalar, int]) -> "TowerElement":
        if isinstance(other, TowerElement):
            return TowerElement(self.tower, self.value * other.value, max(self.level, other.level))
        return TowerElement(self.tower, self.value.scale(other), self.level)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def ordp(self) -> Fraction:
        """p-adic valuation (ord_p(p) = 1), certified or PrecisionExhausted."""
        return self.value.ordp()

    def add_error(self, bound: Union[Valuation, Fraction]) -> "TowerElement":
        return TowerElement(self.tower, self.value.add_error(bound), self.level)

    def at_level(self, level: int) -> "TowerElement":
        return TowerElement(self.tower, self.value, level)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TowerElement):
            return self.value == other.value
        if isinstance(other, (PadicScalar, int)):
            return self.value == other
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TowerElement(level={self.level}, {self.value!r})"


@dataclass(frozen=True, eq=False)
class TowerRing:
    """k_N realized as Z_p[T]/(g_N), with the Galois action of [u]_f."""

    lift: FrobeniusLift
    level: int
    ring: EisensteinRing
    max_series_degree: int = 96
    _matrices: Dict[int, Matrix] = field(default_factory=dict, repr=False)
    _points: Dict[int, TowerElement] = field(default_factory=dict, repr=False)
    _series: Dict[str, IwasawaSeries] = field(default_factory=dict, repr=False)

    @property
    def ctx(self) -> PadicContext:
        return self.ring.ctx

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def degree(self) -> int:
        return self.ring.degree

    @property
    def modulus(self) -> Tuple[int, ...]:
        return self.ring.modulus

    # -- elements -----------------------------------------------------------------

    def element(self, value: RingElement, level: Optional[int] = None) -> TowerElement:
        return TowerElement(self, value, self.level if level is None else level)

    def scalar(self, c: Union[PadicScalar, int]) -> TowerElement:
        value = self.ring.from_scalar(c) if isinstance(c, PadicScalar) else self.ring.from_int(c)
        return TowerElement(self, value, 0)

    def zero(self) -> TowerElement:
        return TowerElement(self, self.ring.zero(), 0)

    def division_point(self, m: int) -> TowerElement:
        """e_m = f^(N-m)(e_N); e_0 is zero."""
        if not 0 <= m <= self.level:
            raise InputError(f"division point e_{m} is not in a tower of level {self.level}")
        if m not in self._points:
            poly = _iterate(self.lift.poly, self.level - m)
            self._points[m] = TowerElement(self, self.ring.from_ints(poly), m)
        return self._points[m]

    # -- Galois action ------------------------------------------------------------

    def group_generator(self, m: int) -> int:
        """A generator of Gal(k_N/k_m) as a unit modulo p^N."""
        p = self.p
        if m >= 1:
            return 1 + p**m
        return int(primitive_root(p * p))

    def delta_generator(self) -> int:
        """The Teichmüller lift, modulo p^N, of a primitive root modulo p."""
        return teichmuller_residue(self.p, int(primitive_root(self.p)), self.level)

    def _mult_series(self, u: int) -> IwasawaSeries:
        e = self.degree
        wanted = e * self.ctx.N - 1
        D = min(wanted, self.max_series_degree)
        if D < wanted:
            logger.warning(
                "[u]_f truncated at degree %d (cap); conjugates carry %s digits",
                D,
                Fraction(D + 1, e),
            )
        if "exp" not in self._series:
            log = lubin_tate_logarithm(self.lift, D, self.ctx)
            self._series["log"] = log
            self._series["exp"] = log.reversion()
            logger.debug("tower level %d: [u]_f series built at degree %d", self.level, D)
        return self._series["exp"].compose(self._series["log"].scale(PadicScalar.from_int(self.ctx, u)))

    def _image_of_generator(self, u: int) -> RingElement:
        if self.lift.is_multiplicative:
            return self.ring.from_ints(intpoly.binomial_shift(u))
        series = self._mult_series(u)
        return series.evaluate(self.ring.generator(), Fraction(series.D + 1, self.degree))

    def galois_matrix(self, u: int) -> Matrix:
        """Matrix of σ_u on the power basis; σ_u depends only on u mod p^N."""
        p = self.p
        u %= p**self.level
        if u % p == 0:
            raise InputError(f"{u} is not a unit modulo {p}")
        if u not in self._matrices:
            image = self._image_of_generator(u)
            cols = [self.ring.one().coords]
            current = self.ring.one()
            for _ in range(1, self.degree):
                current = current * image
                cols.append(current.coords)
            e = self.degree
            self._matrices[u] = [[cols[j][i] for j in range(e)] for i in range(e)]
        return self._matrices[u]

    def sigma(self, x: TowerElement, u: int) -> TowerElement:
        """The conjugate σ_u(x)."""
        return TowerElement(self, x.value.apply_matrix(self.galois_matrix(u)), x.level)

    def orbit(self, x: TowerElement, u: int, length: int) -> List[TowerElement]:
        """x, σ_u(x), ..., σ_u^(length-1)(x)."""
        out = [x]
        for _ in range(length - 1):
            out.append(self.sigma(out[-1], u))
        return out

    def __repr__(self) -> str:
        return f"TowerRing(p={self.p}, pi={self.lift.pi}, level={self.level}, degree={self.degree})"


def build_tower(
    f: FrobeniusLift,
    n: int,
    ctx: Optional[PadicContext] = None,
    max_series_degree: int = 96,
) -> TowerRing:
    """
    The ring k_n = Q_p(e_n) with e_n = T.

    Raises:
        InputError: if n < 1
        NotEisenstein: if g_n fails the Eisenstein test (a bad lift)
    """
    if n < 1:
        raise InputError(f"tower level must be at least 1, got {n}")
    ctx = ctx or f.ctx
    ring = EisensteinRing(ctx, tower_modulus(f, n), level=n, label=f"g_{n}")
    logger.debug("built tower level %d over p=%d, pi=%d: degree %d", n, f.p, f.pi, ring.degree)
    return TowerRing(f, n, ring, max_series_degree)


# -- conjugates and traces --------------------------------------------------------


def extension_degree(p: int, n: int, m: int) -> int:
    """[k_n : k_m]."""
    if m >= n:
        return 1
    if m == 0:
        return p ** (n - 1) * (p - 1)
    return p ** (n - m)


def galois_conjugates(x: TowerElement, m: int) -> List[TowerElement]:
    """The conjugates of x over k_m, i.e. σ_u(x) for u running over Gal(k_n/k_m)."""
    tower = x.tower
    n = x.level
    if m > n:
        raise InputError(f"level {m} lies above the element's level {n}")
    if m == n:
        return [x]
    return tower.orbit(x, tower.group_generator(m), extension_degree(tower.p, n, m))


def in_level(x: TowerElement, m: int) -> bool:
    """Whether x lies in k_m, decided by invariance under a generator of Gal(k_N/k_m)."""
    tower = x.tower
    if m >= tower.level:
        return True
    return tower.sigma(x, tower.group_generator(m)) == x


def field_trace(x: TowerElement, m: int, verify: bool = True) -> TowerElement:
    """
    Tr_{k_n/k_m}(x) for x in k_n.

    Raises:
        PrecisionExhausted: if the sum is not certified to lie in k_m
    """
    if m >= x.level:
        return x
    conjugates = galois_conjugates(x, m)
    total = conjugates[0].value
    for c in conjugates[1:]:
        total = total + c.value
    result = TowerElement(x.tower, total, m)
    if verify and not in_level(result, m):
        raise PrecisionExhausted(f"trace from level {x.level} is not invariant over k_{m}")
    return result


def delta_trace(x: TowerElement) -> TowerElement:
    """Σ_{δ ∈ Δ} σ_δ(x); lands in L_(n-1) for x in k_n."""
    tower = x.tower
    conjugates = tower.orbit(x, tower.delta_generator(), tower.p - 1)
    total = conjugates[0].value
    for c in conjugates[1:]:
        total = total + c.value
    return TowerElement(tower, total, x.level)


def in_L(x: TowerElement, m: int) -> bool:
    """Whether x lies in L_m = k_(m+1)^Δ."""
    tower = x.tower
    if not in_level(x, m + 1):
        return False
    return tower.sigma(x, tower.delta_generator()) == x


def l_trace(x: TowerElement, n: int, m: int) -> TowerElement:
    """
    Tr_{L_n/L_m}(x) for x in L_n ⊂ k_(n+1); the result sits at k-level m+1.
    """
    if m >= n:
        return x
    tower = x.tower
    conjugates = tower.orbit(x, 1 + tower.p ** (m + 1), tower.p ** (n - m))
    total = conjugates[0].value
    for c in conjugates[1:]:
        total = total + c.value
    return TowerElement(tower, total, m + 1)


# -- the maximal-ideal span check ---------------------------------------------------


class SpanReport(BaseModel):
    """Outcome of the check that the division points span the maximal ideal."""

    p: int
    pi: int
    n: int
    degree: int
    budget: int
    attained: List[int]
    missing: List[int]
    trace_is_minus_p: bool
    lattice_rank: int
    passed: bool
    budget_limited: bool = False


def span_check_maximal_ideal(
    f: FrobeniusLift,
    n: int,
    valuation_budget: int,
    degree_cap: int = 18,
    tower: Optional[TowerRing] = None,
) -> SpanReport:
    """
    Check that the Z_p-span of F_f[π^n] is the maximal ideal M_n of k_n.

    Coordinates are kept to ``valuation_budget`` p-adic digits.  The span L
    lies in M_n; L = M_n exactly when every T^b (1 ≤ b < e) and p itself lie in
    L, which is what is reported (an element of valuation b/e for each b).

    Raises:
        CapExceeded: if the ring degree p^n - p^(n-1) exceeds ``degree_cap``
    """
    p = f.p
    e = extension_degree(p, n, 0)
    if e > degree_cap:
        raise CapExceeded(
            f"ring degree {e} at level {n} exceeds the span check cap {degree_cap}",
            {"degree": e, "cap": degree_cap},
        )
    base = dict(p=p, pi=f.pi, n=n, degree=e, budget=valuation_budget)
    if valuation_budget < 2:
        logger.warning("span check at level %d skipped: budget %d is below 2 digits", n, valuation_budget)
        return SpanReport(
            **base, attained=[], missing=list(range(1, e + 1)), trace_is_minus_p=False,
            lattice_rank=0, passed=False, budget_limited=True,
        )
    if tower is None or tower.level != n:
        tower = build_tower(f, n)
    ctx = tower.ctx
    M = min(valuation_budget, ctx.N)
    rows = []
    for j in range(1, n + 1):
        for point in galois_conjugates(tower.division_point(j), 0):
            rows.append([c.add_error(M) for c in point.coords])
    lattice = echelon(rows, e)
    attained = []
    for b in range(1, e + 1):
        witness = [ctx.zero()] * e
        if b < e:
            witness[b] = ctx.one()
        else:
            witness[0] = PadicScalar.from_int(ctx, p)
        if lattice.contains(witness):
            attained.append(b)
    top = tower.division_point(n)
    trace_ok = field_trace(top, n - 1, verify=False) == -p
    missing = [b for b in range(1, e + 1) if b not in attained]
    passed = not missing
    logger.verbose(
        "span check p=%d n=%d: %d generators, rank %d, missing %s",
        p, n, len(rows), lattice.rank, missing,
    )
    return SpanReport(
        **base, attained=attained, missing=missing, trace_is_minus_p=trace_ok,
        lattice_rank=lattice.rank, passed=passed,
    )
