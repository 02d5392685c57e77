"""
Quotient rings Z_p[T]/(g) for a monic Eisenstein polynomial g.

Such a ring is the ring of integers of a totally ramified extension of Q_p
of degree e = deg g, and the class of T is a uniformizer.  Elements are
stored by their coordinates in the power basis 1, T, ..., T^(e-1); since
the basis valuations i/e are pairwise distinct mod 1, the valuation of an
element is the minimum of the coordinate valuations shifted by i/e, and
that minimum is attained exactly once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from ssiwasawa.arith import intpoly
from ssiwasawa.arith.padic import INF, PadicContext, PadicScalar, Valuation
from ssiwasawa.utils.errors import ContextMismatch, NotEisenstein, PrecisionExhausted

Operand = Union["RingElement", PadicScalar, int]


@dataclass(frozen=True, slots=True, eq=False)
class EisensteinRing:
    """Z_p[T]/(g) with g monic Eisenstein and exact."""

    ctx: PadicContext
    modulus: Tuple[int, ...]
    level: int = 0
    label: str = ""

    def __post_init__(self) -> None:
        g = self.modulus
        p = self.ctx.p
        if len(g) < 2 or g[-1] != 1:
            raise NotEisenstein(f"{self.label or 'modulus'} is not monic of positive degree")
        if g[0] % p != 0 or g[0] % (p * p) == 0:
            raise NotEisenstein(
                f"{self.label or 'modulus'}: constant term {g[0]} does not have valuation 1",
                {"constant": g[0]},
            )
        bad = [i for i, c in enumerate(g[1:-1], start=1) if c % p != 0]
        if bad:
            raise NotEisenstein(
                f"{self.label or 'modulus'}: coefficients at degrees {bad} are units",
                {"degrees": bad},
            )

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    # -- elements -----------------------------------------------------------------

    def zero(self) -> "RingElement":
        return RingElement(self, (self.ctx.zero(),) * self.degree)

    def one(self) -> "RingElement":
        return self.from_scalar(self.ctx.one())

    def generator(self) -> "RingElement":
        """The uniformizer T."""
        return self.from_ints([0, 1])

    def from_scalar(self, c: PadicScalar) -> "RingElement":
        if c.ctx is not self.ctx and c.ctx != self.ctx:
            raise ContextMismatch("scalar and ring live in different p-adic contexts")
        return RingElement(self, (c,) + (self.ctx.zero(),) * (self.degree - 1))

    def from_int(self, n: int) -> "RingElement":
        return self.from_scalar(PadicScalar.from_int(self.ctx, n))

    def from_ints(self, poly: Sequence[int]) -> "RingElement":
        """Exact reduction of an integer polynomial in T."""
        rem = intpoly.rem_monic(poly, self.modulus)
        coords = [PadicScalar.from_int(self.ctx, rem[i]) if i < len(rem) else self.ctx.zero() for i in range(self.degree)]
        return RingElement(self, tuple(coords))

    def from_scalars(self, coeffs: Sequence[PadicScalar]) -> "RingElement":
        """Reduce a polynomial with scalar coefficients."""
        return RingElement(self, self.reduce(list(coeffs)))

    def reduce(self, coeffs: List[PadicScalar]) -> Tuple[PadicScalar, ...]:
        e = self.degree
        g = self.modulus
        coeffs = list(coeffs) + [self.ctx.zero()] * max(0, e - len(coeffs))
        for i in range(len(coeffs) - 1, e - 1, -1):
            c = coeffs[i]
            if c.is_exact_zero:
                continue
            for j in range(e):
                if g[j]:
                    coeffs[i - e + j] = coeffs[i - e + j] - c.mul_int(g[j])
        return tuple(coeffs[:e])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EisensteinRing):
            return NotImplemented
        return self.modulus == other.modulus and self.ctx == other.ctx

    def __hash__(self) -> int:
        return hash((self.modulus, self.ctx.p, self.ctx.N))


@dataclass(frozen=True, slots=True, eq=False)
class RingElement:
    """An element of an Eisenstein quotient ring (coordinates may have denominators)."""

    ring: EisensteinRing
    coords: Tuple[PadicScalar, ...]

    def _coerce(self, other: Operand) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ContextMismatch(
                    f"elements of different rings: {self.ring.label or self.ring.degree} "
                    f"vs {other.ring.label or other.ring.degree}"
                )
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return self.ring.from_scalar(other)

    def __add__(self, other: Operand) -> "RingElement":
        b = self._coerce(other)
        return RingElement(self.ring, tuple(x + y for x, y in zip(self.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, tuple(-x for x in self.coords))

    def __sub__(self, other: Operand) -> "RingElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Operand) -> "RingElement":
        return self._coerce(other) - self

    def __mul__(self, other: Operand) -> "RingElement":
        if isinstance(other, (PadicScalar, int)):
            return self.scale(other)
        b = self._coerce(other)
        e = self.ring.degree
        zero = self.ring.ctx.zero()
        prod = [zero] * (2 * e - 1)
        for i, x in enumerate(self.coords):
            if x.is_exact_zero:
                continue
            for j, y in enumerate(b.coords):
                if not y.is_exact_zero:
                    prod[i + j] = prod[i + j] + x * y
        return RingElement(self.ring, self.ring.reduce(prod))

    __rmul__ = __mul__

    def scale(self, c: Union[PadicScalar, int]) -> "RingElement":
        if isinstance(c, int):
            return RingElement(self.ring, tuple(x.mul_int(c) for x in self.coords))
        return RingElement(self.ring, tuple(x * c for x in self.coords))

    def __pow__(self, k: int) -> "RingElement":
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def times_generator(self) -> "RingElement":
        """Multiply by T (a shift followed by one reduction step)."""
        return RingElement(self.ring, self.ring.reduce([self.ring.ctx.zero()] + list(self.coords)))

    # -- valuation ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    @property
    def is_exact_zero(self) -> bool:
        return all(c.is_exact_zero for c in self.coords)

    def valuation(self) -> Valuation:
        """
        Valuation in units of the uniformizer T.

        Raises:
            PrecisionExhausted: if the minimum is not certified by the known digits
        """
        e = self.ring.degree
        best: Valuation = INF
        floors: List[Valuation] = []
        for i, c in enumerate(self.coords):
            if c.is_exact_zero:
                continue
            if c.is_zero():
                floors.append(e * c.precision + i)
            else:
                best = min(best, e * c.valuation + i)
        if best == INF:
            if floors:
                raise PrecisionExhausted(
                    "element is zero to precision; valuation not certified",
                    {"floor": min(floors)},
                )
            return INF
        if floors and min(floors) < best:
            raise PrecisionExhausted(
                f"valuation {best} not certified: a coordinate is known only above {min(floors)}",
                {"candidate": best, "floor": min(floors)},
            )
        return int(best)

    def ordp(self) -> Fraction:
        """p-adic valuation as a rational number (ord_p(p) = 1)."""
        v = self.valuation()
        if v == INF:
            raise PrecisionExhausted("ord_p of the exact zero element")
        return Fraction(int(v), self.ring.degree)

    def valuation_floor(self) -> Union[Fraction, float]:
        """Certified lower bound for ord_p, valid even for zero-to-precision elements."""
        e = self.ring.degree
        bounds = [
            Fraction(e * c.valuation_floor() + i, e)
            for i, c in enumerate(self.coords)
            if not c.is_exact_zero
        ]
        return min(bounds) if bounds else INF

    def add_error(self, bound: Union[Valuation, Fraction]) -> "RingElement":
        """Add an unknown element whose ord_p is at least ``bound``."""
        if bound == INF:
            return self
        e = self.ring.degree
        coords = tuple(c.add_error(math.ceil(Fraction(bound) - Fraction(i, e))) for i, c in enumerate(self.coords))
        return RingElement(self.ring, coords)

    def precision_floor(self) -> Valuation:
        return min(c.precision for c in self.coords)

    # -- linear algebra over Z_p -------------------------------------------------

    def multiplication_matrix(self) -> List[List[PadicScalar]]:
        """Matrix of multiplication by self in the power basis; column j is self * T^j."""
        cols = []
        current = self
        for _ in range(self.ring.degree):
            cols.append(current.coords)
            current = current.times_generator()
        e = self.ring.degree
        return [[cols[j][i] for j in range(e)] for i in range(e)]

    def trace(self) -> PadicScalar:
        """Absolute trace to Q_p."""
        m = self.multiplication_matrix()
        acc = self.ring.ctx.zero()
        for i in range(self.ring.degree):
            acc = acc + m[i][i]
        return acc

    def apply_matrix(self, matrix: Sequence[Sequence[PadicScalar]]) -> "RingElement":
        """Apply a Q_p-linear map given in coordinates (rows index the output)."""
        zero = self.ring.ctx.zero()
        out = []
        for row in matrix:
            acc = zero
            for a, x in zip(row, self.coords):
                if not a.is_exact_zero and not x.is_exact_zero:
                    acc = acc + a * x
            out.append(acc)
        return RingElement(self.ring, tuple(out))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (RingElement, PadicScalar, int)):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except ContextMismatch:
            return False

    __hash__ = None  # type: ignore[assignment]

    def scalar_value(self) -> PadicScalar:
        """The constant coordinate; callers check membership in Q_p first."""
        return self.coords[0]

    def __repr__(self) -> str:
        terms = [f"({c!r})T^{i}" if i else f"({c!r})" for i, c in enumerate(self.coords) if not c.is_exact_zero]
        return " + ".join(terms) or "0"
