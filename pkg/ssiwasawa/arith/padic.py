"""
Bounded-precision arithmetic in Z_p and Q_p.

A `PadicScalar` is stored as ``unit * p**valuation`` together with the
absolute precision to which the value is known.  Values come in two kinds:

* exact values (precision is infinite); the unit is an exact integer and
  the exact-zero marker has infinite valuation, and
* inexact values, known modulo ``p**precision``; their relative precision
  is capped by the context precision N.

An inexact value whose known digits are all zero is *zero to precision*;
it is never confused with the exact-zero marker.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator
from sympy import isprime

from ssiwasawa.utils.errors import (
    ContextMismatch,
    InputError,
    NotAUnit,
    PrecisionExhausted,
    ZeroResidue,
)

INF = float("inf")

Valuation = Union[int, float]
ScalarLike = Union["PadicScalar", int, Fraction]


def int_valuation(n: int, p: int) -> int:
    """
    Return the p-adic valuation of a nonzero integer.

    Args:
        n: Nonzero integer
        p: Prime

    Returns:
        The largest k with p**k dividing n.
    """
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicContext(BaseModel):
    """Prime and working precision shared by all scalars of one computation."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(description="Odd prime")
    N: int = Field(description="Working precision in p-adic digits", ge=1)

    @field_validator("p")
    @classmethod
    def validate_p(cls, v: int) -> int:
        """Reject p = 2 and composite moduli."""
        if v < 3 or not isprime(v):
            raise ValueError(f"p must be an odd prime, got {v}")
        return v

    def with_precision(self, N: int) -> "PadicContext":
        """Return a context with the same prime and precision N."""
        if N == self.N:
            return self
        return PadicContext(p=self.p, N=N)

    def scalar(self, value: Union[int, Fraction]) -> "PadicScalar":
        """Embed an integer or rational number."""
        if isinstance(value, Fraction):
            return PadicScalar.from_fraction(self, value)
        return PadicScalar.from_int(self, value)

    def zero(self) -> "PadicScalar":
        """The exact-zero marker."""
        return PadicScalar(self, 0, INF, INF)

    def one(self) -> "PadicScalar":
        """The exact scalar 1."""
        return PadicScalar(self, 1, 0, INF)


@dataclass(frozen=True, slots=True, eq=False)
class PadicScalar:
    """An element of Q_p known to a tracked absolute precision."""

    ctx: PadicContext
    unit: int
    valuation: Valuation
    precision: Valuation

    # -- construction -----------------------------------------------------------

    @classmethod
    def _make(cls, ctx: PadicContext, num: int, shift: int, precision: Valuation) -> "PadicScalar":
        """Normalize ``num * p**shift`` known modulo ``p**precision``."""
        p = ctx.p
        if num == 0:
            if precision == INF:
                return cls(ctx, 0, INF, INF)
            return cls(ctx, 0, precision, precision)
        k = 0
        while num % p == 0:
            num //= p
            k += 1
        v = shift + k
        if precision == INF:
            return cls(ctx, num, v, INF)
        precision = min(precision, v + ctx.N)
        if v >= precision:
            return cls(ctx, 0, precision, precision)
        return cls(ctx, num % p ** int(precision - v), v, precision)

    @classmethod
    def from_int(cls, ctx: PadicContext, n: int) -> "PadicScalar":
        """Exact integer."""
        return cls._make(ctx, n, 0, INF)

    @classmethod
    def from_fraction(cls, ctx: PadicContext, q: Fraction) -> "PadicScalar":
        """
        Embed a rational number.

        The result is exact when the denominator is a power of p, otherwise it
        carries the context's relative precision.
        """
        if q == 0:
            return ctx.zero()
        p = ctx.p
        den = q.denominator
        k = 0
        while den % p == 0:
            den //= p
            k += 1
        if den == 1:
            return cls._make(ctx, q.numerator, -k, INF)
        v = int_valuation(q.numerator, p) - k
        num = q.numerator // p ** (v + k)
        modulus = p**ctx.N
        return cls._make(ctx, num * pow(den, -1, modulus) % modulus, v, v + ctx.N)

    @classmethod
    def from_residue(cls, ctx: PadicContext, r: int, precision: Optional[int] = None) -> "PadicScalar":
        """
        A residue known modulo ``p**precision`` (default: the context precision N).

        An all-zero residue gives a value that is zero to precision, not the
        exact-zero marker.
        """
        prec = ctx.N if precision is None else precision
        return cls._make(ctx, r % ctx.p**prec, 0, prec)

    @classmethod
    def from_scaled_residue(cls, ctx: PadicContext, num: int, shift: int, precision: int) -> "PadicScalar":
        """The value ``num * p**shift`` known modulo ``p**precision``."""
        if precision - shift <= 0:
            return cls(ctx, 0, precision, precision)
        return cls._make(ctx, num % ctx.p ** (precision - shift), shift, precision)

    def _coerce(self, other: ScalarLike) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(
                    f"context mismatch: (p={self.ctx.p}, N={self.ctx.N}) vs (p={other.ctx.p}, N={other.ctx.N})"
                )
            return other
        if isinstance(other, Fraction):
            return PadicScalar.from_fraction(self.ctx, other)
        if isinstance(other, int):
            return PadicScalar.from_int(self.ctx, other)
        return NotImplemented  # type: ignore[return-value]

    # -- predicates ---------------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.precision == INF

    @property
    def is_exact_zero(self) -> bool:
        return self.valuation == INF

    def is_zero(self) -> bool:
        """True for the exact-zero marker and for values that are zero to precision."""
        return self.unit == 0

    @property
    def relative_precision(self) -> Valuation:
        if self.is_zero():
            return 0 if not self.is_exact else INF
        return self.precision - self.valuation

    def valuation_floor(self) -> Valuation:
        """Certified lower bound for the valuation (the precision for zero-to-precision values)."""
        return self.valuation

    def is_unit(self) -> bool:
        return self.unit != 0 and self.valuation == 0

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: ScalarLike) -> "PadicScalar":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        if self.is_exact_zero:
            return b
        if b.is_exact_zero:
            return self
        p = self.ctx.p
        v0 = min(self.valuation, b.valuation)
        num = self.unit * p ** int(self.valuation - v0) + b.unit * p ** int(b.valuation - v0)
        return PadicScalar._make(self.ctx, num, int(v0), min(self.precision, b.precision))

    __radd__ = __add__

    def __neg__(self) -> "PadicScalar":
        if self.unit == 0:
            return self
        if self.is_exact:
            return PadicScalar(self.ctx, -self.unit, self.valuation, INF)
        modulus = self.ctx.p ** int(self.precision - self.valuation)
        return PadicScalar(self.ctx, (-self.unit) % modulus, self.valuation, self.precision)

    def __sub__(self, other: ScalarLike) -> "PadicScalar":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other: ScalarLike) -> "PadicScalar":
        return (-self) + other

    def __mul__(self, other: ScalarLike) -> "PadicScalar":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        if self.is_exact_zero or b.is_exact_zero:
            return self.ctx.zero()
        v = self.valuation + b.valuation
        precision = min(self.precision + b.valuation, b.precision + self.valuation)
        return PadicScalar._make(self.ctx, self.unit * b.unit, int(v), precision)

    __rmul__ = __mul__

    def mul_int(self, n: int) -> "PadicScalar":
        """Multiply by an exact integer."""
        if n == 0 or self.is_exact_zero:
            return self.ctx.zero()
        if n == 1:
            return self
        k = 0
        while n % self.ctx.p == 0:
            n //= self.ctx.p
            k += 1
        return PadicScalar._make(self.ctx, self.unit * n, int(self.valuation) + k, self.precision + k)

    def shift(self, k: int) -> "PadicScalar":
        """Multiply by p**k exactly (k may be negative)."""
        if self.is_exact_zero:
            return self
        return PadicScalar(self.ctx, self.unit, self.valuation + k, self.precision + k)

    def unit_part(self) -> "PadicScalar":
        """The unit u with self = u * p**v."""
        if self.unit == 0:
            raise PrecisionExhausted("unit part of a value that is zero to precision")
        return PadicScalar(self.ctx, self.unit, 0, self.precision - self.valuation)

    def inverse(self) -> "PadicScalar":
        """Inverse in Q_p; the valuation is negated and the precision shifted accordingly."""
        if self.is_exact_zero:
            raise ZeroDivisionError("inverse of exact zero")
        if self.unit == 0:
            raise PrecisionExhausted(
                f"inverse of a value that is zero to precision {self.precision}",
                {"precision": self.precision},
            )
        v = int(self.valuation)
        if self.is_exact and self.unit in (1, -1):
            return PadicScalar(self.ctx, self.unit, -v, INF)
        r = int(min(self.ctx.N, self.precision - v))
        modulus = self.ctx.p**r
        return PadicScalar(self.ctx, pow(self.unit % modulus, -1, modulus), -v, -v + r)

    def __truediv__(self, other: ScalarLike) -> "PadicScalar":
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "PadicScalar":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "PadicScalar":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def add_error(self, bound: Valuation) -> "PadicScalar":
        """Add an unknown term of valuation at least ``bound`` (caps the precision)."""
        if bound == INF or bound >= self.precision:
            return self
        bound = int(bound)
        if self.is_exact_zero or self.valuation >= bound:
            return PadicScalar(self.ctx, 0, bound, bound)
        modulus = self.ctx.p ** (bound - int(self.valuation))
        return PadicScalar(self.ctx, self.unit % modulus, self.valuation, bound)

    def to_context(self, ctx: PadicContext, precision: Optional[Valuation] = None) -> "PadicScalar":
        """Re-home the value in another context of the same prime, optionally capping its precision."""
        if ctx.p != self.ctx.p:
            raise ContextMismatch(f"cannot move a {self.ctx.p}-adic value into a {ctx.p}-adic context")
        if self.is_exact_zero:
            base = ctx.zero()
        elif self.unit == 0:
            base = PadicScalar(ctx, 0, self.precision, self.precision)
        else:
            base = PadicScalar._make(ctx, self.unit, int(self.valuation), self.precision)
        return base if precision is None else base.add_error(precision)

    # -- comparison and conversion -----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (PadicScalar, int, Fraction)):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except ContextMismatch:
            return False

    __hash__ = None  # type: ignore[assignment]

    def lift(self) -> int:
        """Integer representative of a value in Z_p."""
        if self.unit == 0:
            return 0
        if self.valuation < 0:
            raise NotAUnit(f"value has negative valuation {self.valuation}, not in Z_p")
        return self.unit * self.ctx.p ** int(self.valuation)

    def residue(self, k: int) -> int:
        """The value modulo p**k."""
        if self.precision < k:
            raise PrecisionExhausted(f"value known only modulo p^{self.precision}, not p^{k}")
        return self.lift() % self.ctx.p**k

    def to_fraction(self) -> Fraction:
        """Rational representative (exact values are returned exactly)."""
        if self.unit == 0:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.ctx.p) ** int(self.valuation)

    def to_json(self) -> dict:
        payload = ScalarPayload(
            u=str(self.unit),
            v=None if self.is_exact_zero else int(self.valuation),
            prec=None if self.is_exact else int(self.precision),
        )
        return payload.model_dump(exclude_none=True)

    @classmethod
    def from_json(cls, ctx: PadicContext, data: Union[dict, int, str]) -> "PadicScalar":
        """Parse a scalar payload; bare integers (or decimal strings) are exact."""
        if isinstance(data, (int, str)):
            try:
                return cls.from_int(ctx, int(data))
            except ValueError as e:
                raise InputError(f"cannot parse scalar {data!r}") from e
        payload = ScalarPayload.model_validate(data)
        if payload.v is None:
            return ctx.zero()
        unit = int(payload.u)
        return cls._make(ctx, unit, payload.v, INF if payload.prec is None else payload.prec)

    def __repr__(self) -> str:
        if self.is_exact_zero:
            return "0"
        if self.unit == 0:
            return f"O({self.ctx.p}^{self.precision})"
        head = f"{self.unit}*{self.ctx.p}^{self.valuation}" if self.valuation else f"{self.unit}"
        if self.is_exact:
            return head
        return f"{head} + O({self.ctx.p}^{self.precision})"


class ScalarPayload(BaseModel):
    """JSON form of a scalar: decimal unit part and integer valuation."""

    u: str
    v: Optional[int] = None
    prec: Optional[int] = None


# -- operations ----------------------------------------------------------------


def add(a: PadicScalar, b: PadicScalar) -> PadicScalar:
    """Sum of two scalars of the same context."""
    return a + b


def mul_inv(a: PadicScalar) -> PadicScalar:
    """
    Inverse of a unit of Z_p.

    Raises:
        NotAUnit: if the valuation is not zero or the value is zero
    """
    if a.is_exact_zero or a.unit == 0 or a.valuation != 0:
        raise NotAUnit(f"{a!r} is not a unit of Z_{a.ctx.p}")
    return a.inverse()


def valuation_of(a: PadicScalar) -> Valuation:
    """
    Exact p-adic valuation.

    Raises:
        PrecisionExhausted: if all known digits are zero but the value is not the exact-zero marker
    """
    if a.is_exact_zero:
        return INF
    if a.unit == 0:
        raise PrecisionExhausted(
            f"all {a.precision} known digits are zero; valuation not certified",
            {"precision": a.precision},
        )
    return a.valuation


def teichmuller(ctx: PadicContext, a: int) -> PadicScalar:
    """
    Teichmüller lift of a residue mod p.

    Iterates x -> x**p modulo p**N until it stabilizes.

    Raises:
        ZeroResidue: if a is divisible by p
    """
    if a % ctx.p == 0:
        raise ZeroResidue(f"{a} is 0 mod {ctx.p}; it has no Teichmüller lift")
    modulus = ctx.p**ctx.N
    x = a % ctx.p
    for _ in range(ctx.N + 1):
        nxt = pow(x, ctx.p, modulus)
        if nxt == x:
            break
        x = nxt
    return PadicScalar.from_residue(ctx, x)


def teichmuller_residue(p: int, a: int, k: int) -> int:
    """Integer representative in [1, p**k) of the Teichmüller lift of a, modulo p**k."""
    return teichmuller(PadicContext(p=p, N=k), a).lift()
