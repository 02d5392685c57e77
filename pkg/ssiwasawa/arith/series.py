"""
Truncated power series over PadicScalar.

`IwasawaSeries` stands in for an element of Λ = Z_p[[X]] (or of Q_p[[X]] when
coefficients carry denominators, as for logarithms).  Results are valid
modulo X**(D+1) and to the precision recorded on each coefficient.  A
series flagged ``polynomial_exact`` is an exact polynomial: nothing was
truncated and its degree is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from ssiwasawa.arith.padic import INF, PadicContext, PadicScalar, ScalarPayload, Valuation
from ssiwasawa.utils.errors import (
    ContextMismatch,
    InputError,
    NonUnitLinearTerm,
    NonzeroConstantTerm,
    PrecisionExhausted,
    ZeroToPrecision,
)
from ssiwasawa.utils.logging import get_logger

logger = get_logger("ssiwasawa.series")


class SeriesPayload(BaseModel):
    """JSON form of a series."""

    p: int
    N: int
    D: int = Field(ge=0)
    coeffs: List[Union[ScalarPayload, int, str]]


@dataclass(frozen=True, slots=True, eq=False)
class IwasawaSeries:
    """A power series truncated at degree D with PadicScalar coefficients."""

    ctx: PadicContext
    D: int
    coeffs: Tuple[PadicScalar, ...]
    polynomial_exact: bool = False

    # -- construction -----------------------------------------------------------

    @classmethod
    def from_scalars(
        cls,
        ctx: PadicContext,
        scalars: Sequence[PadicScalar],
        D: Optional[int] = None,
        polynomial_exact: bool = False,
    ) -> "IwasawaSeries":
        """Build a series, padding with exact zeros (or truncating) to degree D."""
        top = len(scalars) - 1 if D is None else D
        if polynomial_exact:
            while len(scalars) > top + 1 and scalars[-1].is_exact_zero:
                scalars = scalars[:-1]
            top = max(top, len(scalars) - 1)
        zero = ctx.zero()
        coeffs = tuple(scalars[i] if i < len(scalars) else zero for i in range(top + 1))
        return cls(ctx, top, coeffs, polynomial_exact)

    @classmethod
    def from_ints(cls, ctx: PadicContext, ints: Sequence[int], D: Optional[int] = None) -> "IwasawaSeries":
        """An exact integer polynomial."""
        scalars = [PadicScalar.from_int(ctx, c) for c in ints] or [ctx.zero()]
        exact = all(s.is_exact for s in scalars)
        return cls.from_scalars(ctx, scalars, D, polynomial_exact=exact)

    @classmethod
    def from_residues(cls, ctx: PadicContext, residues: Sequence[int], D: int, precision: Optional[int] = None) -> "IwasawaSeries":
        """Coefficients known modulo p**precision (default N), truncated at D."""
        scalars = [PadicScalar.from_residue(ctx, r, precision) for r in residues[: D + 1]]
        return cls.from_scalars(ctx, scalars, D)

    @classmethod
    def zero(cls, ctx: PadicContext, D: int) -> "IwasawaSeries":
        return cls.from_scalars(ctx, [], D)

    @classmethod
    def one(cls, ctx: PadicContext, D: int) -> "IwasawaSeries":
        return cls.from_scalars(ctx, [ctx.one()], D)

    @classmethod
    def variable(cls, ctx: PadicContext, D: int) -> "IwasawaSeries":
        return cls.from_scalars(ctx, [ctx.zero(), ctx.one()], D)

    # -- bookkeeping --------------------------------------------------------------

    def __getitem__(self, i: int) -> PadicScalar:
        if 0 <= i <= self.D:
            return self.coeffs[i]
        if i > self.D and self.polynomial_exact:
            return self.ctx.zero()
        raise IndexError(f"coefficient {i} lies beyond the truncation degree {self.D}")

    def degree(self) -> int:
        """Exact degree of a polynomial-exact series (-1 for zero)."""
        if not self.polynomial_exact:
            raise PrecisionExhausted("degree of a truncated series is not defined")
        for i in range(self.D, -1, -1):
            if not self.coeffs[i].is_exact_zero:
                return i
        return -1

    def precision_floor(self) -> Valuation:
        """Smallest absolute precision among the coefficients."""
        return min(c.precision for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def int_coefficients(self) -> List[int]:
        """
        Exact integer coefficients.

        Raises:
            PrecisionExhausted: if the series is not an exact integer polynomial
        """
        if not self.polynomial_exact:
            raise PrecisionExhausted("series has no exact integer lift")
        out = []
        for c in self.coeffs[: self.degree() + 1]:
            frac = c.to_fraction()
            if frac.denominator != 1:
                raise PrecisionExhausted(f"coefficient {frac} is not an integer")
            out.append(int(frac))
        return out

    def residues(self, k: int) -> List[int]:
        """Coefficients modulo p**k."""
        return [c.residue(k) for c in self.coeffs]

    def _partner(self, other: "IwasawaSeries") -> Tuple[int, bool]:
        """Truncation degree and exactness of a binary result."""
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch("series live in different p-adic contexts")
        if self.polynomial_exact and other.polynomial_exact:
            return max(self.D, other.D), True
        if self.polynomial_exact:
            return other.D, False
        if other.polynomial_exact:
            return self.D, False
        if self.D != other.D:
            raise ContextMismatch(f"truncation degrees differ: {self.D} vs {other.D}")
        return self.D, False

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: "IwasawaSeries") -> "IwasawaSeries":
        D, exact = self._partner(other)
        zero = self.ctx.zero()
        coeffs = [
            (self.coeffs[i] if i <= self.D else zero) + (other.coeffs[i] if i <= other.D else zero)
            for i in range(D + 1)
        ]
        return IwasawaSeries(self.ctx, D, tuple(coeffs), exact)

    def __neg__(self) -> "IwasawaSeries":
        return IwasawaSeries(self.ctx, self.D, tuple(-c for c in self.coeffs), self.polynomial_exact)

    def __sub__(self, other: "IwasawaSeries") -> "IwasawaSeries":
        return self + (-other)

    def __mul__(self, other: Union["IwasawaSeries", PadicScalar, int]) -> "IwasawaSeries":
        if not isinstance(other, IwasawaSeries):
            return self.scale(other)
        D, exact = self._partner(other)
        if exact:
            D = max(self.degree(), 0) + max(other.degree(), 0)
        acc = [self.ctx.zero()] * (D + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_exact_zero or i > D:
                continue
            for j in range(min(other.D, D - i) + 1):
                b = other.coeffs[j]
                if b.is_exact_zero:
                    continue
                acc[i + j] = acc[i + j] + a * b
        return IwasawaSeries.from_scalars(self.ctx, acc, D, polynomial_exact=exact)

    __rmul__ = __mul__

    def scale(self, c: Union[PadicScalar, int]) -> "IwasawaSeries":
        """Multiply every coefficient by a scalar."""
        if isinstance(c, int):
            c = PadicScalar.from_int(self.ctx, c)
        exact = self.polynomial_exact and c.is_exact
        return IwasawaSeries(self.ctx, self.D, tuple(a * c for a in self.coeffs), exact)

    def __pow__(self, k: int) -> "IwasawaSeries":
        result = IwasawaSeries.one(self.ctx, self.D) if not self.polynomial_exact else IwasawaSeries.from_ints(self.ctx, [1])
        for _ in range(k):
            result = result * self
        return result

    def truncate(self, D: int, N: Optional[int] = None) -> "IwasawaSeries":
        """
        Truncate to degree D and, optionally, to absolute precision N.

        With N given, the result lives in the context of precision N.
        """
        ctx = self.ctx if N is None else self.ctx.with_precision(N)
        coeffs = [self[i] if i <= self.D or self.polynomial_exact else None for i in range(D + 1)]
        if any(c is None for c in coeffs):
            raise PrecisionExhausted(f"cannot extend a series truncated at {self.D} to degree {D}")
        if N is not None:
            coeffs = [c.to_context(ctx, N) for c in coeffs]
        exact = self.polynomial_exact and D >= self.degree() and all(c.is_exact for c in coeffs)
        return IwasawaSeries.from_scalars(ctx, coeffs, D, polynomial_exact=exact)

    def derivative(self) -> "IwasawaSeries":
        coeffs = [self.coeffs[i].mul_int(i) for i in range(1, self.D + 1)]
        # one degree of information is lost at the top
        D = self.D - 1 if not self.polynomial_exact else max(self.D - 1, 0)
        return IwasawaSeries.from_scalars(self.ctx, coeffs, max(D, 0), self.polynomial_exact)

    def inverse(self) -> "IwasawaSeries":
        """Multiplicative inverse; the constant term must be invertible in Q_p."""
        a0 = self.coeffs[0]
        if a0.is_zero():
            raise PrecisionExhausted("constant term is zero to precision; series is not invertible")
        inv0 = a0.inverse()
        out = [inv0]
        for n in range(1, self.D + 1):
            acc = self.ctx.zero()
            for i in range(1, n + 1):
                if not self.coeffs[i].is_exact_zero:
                    acc = acc + self.coeffs[i] * out[n - i]
            out.append(-(acc * inv0))
        return IwasawaSeries(self.ctx, self.D, tuple(out))

    def compose(self, inner: "IwasawaSeries") -> "IwasawaSeries":
        """
        ``self(inner(X))``.

        Raises:
            NonzeroConstantTerm: if inner(0) is not zero
        """
        if not inner.coeffs[0].is_zero():
            raise NonzeroConstantTerm(f"inner series has constant term {inner.coeffs[0]!r}")
        if self.polynomial_exact and inner.polynomial_exact:
            top = max(self.degree(), 0)
            acc = IwasawaSeries.from_scalars(self.ctx, [self.coeffs[top]], polynomial_exact=True)
            for i in range(top - 1, -1, -1):
                acc = acc * inner + IwasawaSeries.from_scalars(self.ctx, [self.coeffs[i]], polynomial_exact=True)
            return acc
        D = inner.D if self.polynomial_exact else (self.D if inner.polynomial_exact else min(self.D, inner.D))
        inner_t = inner.truncate(D)
        top = min(self.D, D) if not self.polynomial_exact else min(max(self.degree(), 0), D)
        acc = IwasawaSeries.from_scalars(self.ctx, [self[top]], D)
        for i in range(top - 1, -1, -1):
            acc = acc * inner_t
            acc = IwasawaSeries(
                self.ctx, D, (acc.coeffs[0] + self[i],) + acc.coeffs[1:], False
            )
        return acc

    def reversion(self) -> "IwasawaSeries":
        """
        Compositional inverse by Newton iteration.

        Each step ``r <- r - (s(r) - X) / s'(r)`` doubles the number of
        correct coefficients.

        Raises:
            NonzeroConstantTerm: if s(0) is not zero
            NonUnitLinearTerm: if s'(0) is zero to precision
        """
        if not self.coeffs[0].is_zero():
            raise NonzeroConstantTerm(f"series has constant term {self.coeffs[0]!r}")
        if self.D < 1 or self.coeffs[1].is_zero():
            raise NonUnitLinearTerm("linear coefficient is zero; series has no compositional inverse")
        s = self if not self.polynomial_exact else IwasawaSeries(self.ctx, self.D, self.coeffs, False)
        D = s.D
        ds = s.derivative()
        X = IwasawaSeries.variable(self.ctx, D)
        r = X.scale(s.coeffs[1].inverse())
        correct = 1
        steps = 0
        while correct < D:
            correct = min(2 * correct, D)
            residual = s.compose(r) - X
            slope = _pad(ds, D).compose(r)
            r = r - residual * slope.inverse()
            steps += 1
        logger.debug("reversion converged after %d Newton steps at degree %d", steps, D)
        logger.verbose("reversion at degree %d certified to %s of %d digits", D, r.precision_floor(), self.ctx.N)
        return r

    # -- invariants and evaluation -------------------------------------------------

    def mu_lambda(self) -> Tuple[int, int]:
        """
        Iwasawa invariants: μ is the least coefficient valuation and λ the
        first index attaining it.

        Raises:
            ZeroToPrecision: if the series vanishes to precision or a
                zero-to-precision coefficient could still undercut μ
        """
        known = [(i, c) for i, c in enumerate(self.coeffs) if not c.is_zero()]
        if not known:
            raise ZeroToPrecision(
                "series is zero to working precision; invariants cannot be certified",
                {"precision": self.precision_floor()},
            )
        mu = min(c.valuation for _, c in known)
        lam = next(i for i, c in known if c.valuation == mu)
        for i, c in enumerate(self.coeffs):
            if c.is_zero() and not c.is_exact_zero:
                if c.precision < mu or (i < lam and c.precision <= mu):
                    raise ZeroToPrecision(
                        f"coefficient {i} is only known to be divisible by p^{c.precision}",
                        {"index": i, "mu": mu},
                    )
        return int(mu), lam

    def evaluate(self, x: Any, tail: Optional[Valuation] = None) -> Any:
        """
        Horner evaluation at a scalar or at an element of a quotient ring.

        Args:
            x: PadicScalar, or an element exposing ``ring`` and ``add_error``
            tail: Certified lower bound for the valuation of the omitted tail

        Returns:
            The value, with the tail folded in as an error term.
        """
        top = self.D if not self.polynomial_exact else max(self.degree(), 0)
        if isinstance(x, PadicScalar):
            acc: Any = self.coeffs[top]
        else:
            acc = x.ring.from_scalar(self.coeffs[top])
        for i in range(top - 1, -1, -1):
            acc = acc * x + self.coeffs[i]
        if tail is not None and tail != INF:
            acc = acc.add_error(tail)
        return acc

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> Dict[str, Any]:
        payload = SeriesPayload(
            p=self.ctx.p,
            N=self.ctx.N,
            D=self.D,
            coeffs=[ScalarPayload.model_validate(c.to_json()) for c in self.coeffs],
        )
        return payload.model_dump(exclude_none=True)

    @classmethod
    def from_json(cls, data: Dict[str, Any], ctx: Optional[PadicContext] = None) -> "IwasawaSeries":
        """
        Parse a series payload.

        Raises:
            InputError: on a malformed payload or a prime that disagrees with ``ctx``
        """
        try:
            payload = SeriesPayload.model_validate(data)
        except ValueError as e:
            raise InputError(f"malformed series payload: {e}") from e
        if ctx is None:
            ctx = PadicContext(p=payload.p, N=payload.N)
        elif ctx.p != payload.p:
            raise InputError(f"series prime {payload.p} does not match context prime {ctx.p}")
        if len(payload.coeffs) > payload.D + 1:
            raise InputError(f"{len(payload.coeffs)} coefficients exceed degree {payload.D}")
        scalars = [
            PadicScalar.from_json(ctx, c.model_dump() if isinstance(c, ScalarPayload) else c) for c in payload.coeffs
        ]
        exact = all(s.is_exact for s in scalars)
        return cls.from_scalars(ctx, scalars, payload.D, polynomial_exact=exact)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_exact_zero:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            terms.append(f"({c!r}){mono}" if mono else f"({c!r})")
        body = " + ".join(terms) or "0"
        return body if self.polynomial_exact else f"{body} + O(X^{self.D + 1})"


def _pad(s: IwasawaSeries, D: int) -> IwasawaSeries:
    """Extend a series with zero top coefficients; Newton steps never read them."""
    if s.D >= D:
        return s.truncate(D)
    return IwasawaSeries(s.ctx, D, s.coeffs + (s.ctx.zero(),) * (D - s.D))


@dataclass(frozen=True, slots=True, eq=False)
class BivariateSeries:
    """A two-variable series truncated at total degree D; ``coeffs[i][j]`` multiplies X^i Y^j."""

    ctx: PadicContext
    D: int
    coeffs: Tuple[Tuple[PadicScalar, ...], ...]

    @classmethod
    def zero(cls, ctx: PadicContext, D: int) -> "BivariateSeries":
        z = ctx.zero()
        return cls(ctx, D, tuple((z,) * (D + 1 - i) for i in range(D + 1)))

    @classmethod
    def from_grid(cls, ctx: PadicContext, D: int, grid: Dict[Tuple[int, int], Union[int, PadicScalar]]) -> "BivariateSeries":
        rows = [[ctx.zero()] * (D + 1 - i) for i in range(D + 1)]
        for (i, j), c in grid.items():
            if i + j <= D:
                rows[i][j] = c if isinstance(c, PadicScalar) else PadicScalar.from_int(ctx, c)
        return cls(ctx, D, tuple(tuple(r) for r in rows))

    @classmethod
    def separated_sum(cls, a: IwasawaSeries, b: IwasawaSeries) -> "BivariateSeries":
        """The series a(X) + b(Y)."""
        D = min(a.D, b.D)
        rows = [[a.ctx.zero()] * (D + 1 - i) for i in range(D + 1)]
        for i in range(D + 1):
            rows[i][0] = rows[i][0] + a[i]
            rows[0][i] = rows[0][i] + b[i]
        return cls(a.ctx, D, tuple(tuple(r) for r in rows))

    def __getitem__(self, ij: Tuple[int, int]) -> PadicScalar:
        i, j = ij
        return self.coeffs[i][j]

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        D = min(self.D, other.D)
        return BivariateSeries(
            self.ctx,
            D,
            tuple(tuple(self.coeffs[i][j] + other.coeffs[i][j] for j in range(D + 1 - i)) for i in range(D + 1)),
        )

    def __neg__(self) -> "BivariateSeries":
        return BivariateSeries(self.ctx, self.D, tuple(tuple(-c for c in row) for row in self.coeffs))

    def __sub__(self, other: "BivariateSeries") -> "BivariateSeries":
        return self + (-other)

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.coeffs for c in row)

    def add_constant(self, c: PadicScalar) -> "BivariateSeries":
        first = (self.coeffs[0][0] + c,) + self.coeffs[0][1:]
        return BivariateSeries(self.ctx, self.D, (first,) + self.coeffs[1:])

    def __mul__(self, other: "BivariateSeries") -> "BivariateSeries":
        D = min(self.D, other.D)
        rows = [[self.ctx.zero()] * (D + 1 - i) for i in range(D + 1)]
        other_terms = [
            (i, j, other.coeffs[i][j])
            for i in range(D + 1)
            for j in range(D + 1 - i)
            if not other.coeffs[i][j].is_exact_zero
        ]
        for i1 in range(D + 1):
            for j1 in range(D + 1 - i1):
                a = self.coeffs[i1][j1]
                if a.is_exact_zero:
                    continue
                room = D - i1 - j1
                for i2, j2, b in other_terms:
                    if i2 + j2 <= room:
                        rows[i1 + i2][j1 + j2] = rows[i1 + i2][j1 + j2] + a * b
        return BivariateSeries(self.ctx, D, tuple(tuple(r) for r in rows))

    def swapped(self) -> "BivariateSeries":
        """The series with X and Y exchanged."""
        return BivariateSeries(
            self.ctx,
            self.D,
            tuple(tuple(self.coeffs[j][i] for j in range(self.D + 1 - i)) for i in range(self.D + 1)),
        )

    @classmethod
    def compose_univariate(cls, outer: IwasawaSeries, inner: "BivariateSeries") -> "BivariateSeries":
        """``outer(inner(X, Y))`` for inner without constant term."""
        if not inner.coeffs[0][0].is_zero():
            raise NonzeroConstantTerm("inner bivariate series has a constant term")
        D = min(outer.D, inner.D)
        top = min(D, max(outer.degree(), 0)) if outer.polynomial_exact else D
        acc = cls.zero(outer.ctx, D).add_constant(outer[top])
        for k in range(top - 1, -1, -1):
            acc = (acc * inner).add_constant(outer[k])
        return acc

    def compose_separated(self, s: IwasawaSeries, t: IwasawaSeries) -> "BivariateSeries":
        """``self(s(X), t(Y))`` for univariate s, t without constant terms."""
        if not s.coeffs[0].is_zero() or not t.coeffs[0].is_zero():
            raise NonzeroConstantTerm("substituted series must vanish at 0")
        D = min(self.D, s.D, t.D)
        s, t = s.truncate(D), t.truncate(D)
        s_powers = [IwasawaSeries.one(self.ctx, D)]
        t_powers = [IwasawaSeries.one(self.ctx, D)]
        for _ in range(D):
            s_powers.append(s_powers[-1] * s)
            t_powers.append(t_powers[-1] * t)
        rows = [[self.ctx.zero()] * (D + 1 - i) for i in range(D + 1)]
        for i in range(D + 1):
            for j in range(D + 1 - i):
                c = self.coeffs[i][j]
                if c.is_exact_zero:
                    continue
                for a in range(i, D + 1):
                    sa = s_powers[i][a]
                    if sa.is_exact_zero:
                        continue
                    ca = c * sa
                    for b in range(j, D + 1 - a):
                        tb = t_powers[j][b]
                        if not tb.is_exact_zero:
                            rows[a][b] = rows[a][b] + ca * tb
        return BivariateSeries(self.ctx, D, tuple(tuple(r) for r in rows))

    def substitute(self, s: IwasawaSeries, t: IwasawaSeries) -> IwasawaSeries:
        """``self(s(T), t(T))`` for univariate s, t without constant terms."""
        if not s.coeffs[0].is_zero() or not t.coeffs[0].is_zero():
            raise NonzeroConstantTerm("substituted series must vanish at 0")
        D = min(self.D, s.D, t.D)
        s, t = s.truncate(D), t.truncate(D)
        t_powers = [IwasawaSeries.one(self.ctx, D)]
        for _ in range(D):
            t_powers.append(t_powers[-1] * t)
        total = IwasawaSeries.zero(self.ctx, D)
        s_power = IwasawaSeries.one(self.ctx, D)
        for i in range(D + 1):
            row = IwasawaSeries.zero(self.ctx, D)
            for j in range(D + 1 - i):
                c = self.coeffs[i][j]
                if not c.is_exact_zero:
                    row = row + t_powers[j].scale(c)
            total = total + s_power * row
            if i < D:
                s_power = s_power * s
        return total

    def evaluate(self, x: Any, y: Any, tail: Optional[Valuation] = None) -> Any:
        """Evaluate at two scalars or two quotient-ring elements; ``tail`` bounds the omitted terms."""
        y_powers = [y.ctx.one() if isinstance(y, PadicScalar) else y.ring.one()]
        for _ in range(self.D):
            y_powers.append(y_powers[-1] * y)
        acc: Any = None
        for i in range(self.D, -1, -1):
            value = y_powers[0] * self.ctx.zero()
            for j, c in enumerate(self.coeffs[i]):
                if not c.is_exact_zero:
                    value = value + y_powers[j] * c
            acc = value if acc is None else acc * x + value
        if tail is not None and tail != INF:
            acc = acc.add_error(tail)
        return acc

    def residues(self, k: int) -> Dict[Tuple[int, int], int]:
        """Nonzero coefficients modulo p**k."""
        out = {}
        for i in range(self.D + 1):
            for j in range(self.D + 1 - i):
                r = self.coeffs[i][j].residue(k)
                if r:
                    out[(i, j)] = r
        return out

    def precision_floor(self) -> Valuation:
        return min(c.precision for row in self.coeffs for c in row)

    def min_valuation(self) -> Valuation:
        """Least certified valuation lower bound over all coefficients."""
        return min(c.valuation_floor() for row in self.coeffs for c in row)


# -- operations ----------------------------------------------------------------


def series_arith(a: IwasawaSeries, b: IwasawaSeries, op: str) -> IwasawaSeries:
    """Sum or product of two series."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise InputError(f"unknown series operation {op!r}")


def compose(outer: IwasawaSeries, inner: IwasawaSeries) -> IwasawaSeries:
    return outer.compose(inner)


def reversion(s: IwasawaSeries) -> IwasawaSeries:
    return s.reversion()


def mu_lambda(g: IwasawaSeries) -> Tuple[int, int]:
    return g.mu_lambda()
