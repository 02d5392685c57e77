"""
Plus/minus L-data: L = det(u_ij)·t_Y from a supplied matrix over Λ.

The matrices u_ij^± come from global computations that this package does
not perform; they are input data.  What is computed here is the
determinant, its Iwasawa invariants, and the size of O^d/(u(ζ_n - 1)) over
the cyclotomic DVR O = Z_p[μ_{p^n}].
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from pydantic import BaseModel, Field, ValidationError

from ssiwasawa.arith.cyclotomic import eval_at_zeta, stabilization_level
from ssiwasawa.arith.padic import INF, PadicContext, PadicScalar, ScalarPayload
from ssiwasawa.arith.series import IwasawaSeries, SeriesPayload
from ssiwasawa.modules.presented import PresentedModule
from ssiwasawa.modules.snf import determinant
from ssiwasawa.utils.errors import ContextMismatch, InputError, PrecisionExhausted, ZeroToPrecision
from ssiwasawa.utils.logging import get_logger

logger = get_logger("ssiwasawa.plus_minus")

# Matrices up to this size are expanded along rows; larger ones are eliminated.
LAPLACE_MAX = 4

CoeffList = List[Union[ScalarPayload, int, str]]


class MatrixPayload(BaseModel):
    """JSON form of L-data: entries are series payloads or bare coefficient lists."""

    d: int = Field(ge=1)
    entries: List[List[Union[SeriesPayload, CoeffList]]]
    tY: Union[SeriesPayload, CoeffList]
    p: Optional[int] = None
    N: Optional[int] = None


def _parse_series(item: Union[SeriesPayload, CoeffList], ctx: PadicContext) -> IwasawaSeries:
    if isinstance(item, SeriesPayload):
        return IwasawaSeries.from_json(item.model_dump(), ctx)
    scalars = [PadicScalar.from_json(ctx, c.model_dump() if isinstance(c, ScalarPayload) else c) for c in item]
    if not scalars:
        raise InputError("empty coefficient list")
    return IwasawaSeries.from_scalars(ctx, scalars, polynomial_exact=all(s.is_exact for s in scalars))


@dataclass(frozen=True)
class PlusMinusLData:
    """A d×d matrix over Λ and the characteristic series t_Y of the torsion part."""

    entries: Sequence[Sequence[IwasawaSeries]]
    t_Y: IwasawaSeries

    def __post_init__(self) -> None:
        d = len(self.entries)
        if d < 1 or any(len(row) != d for row in self.entries):
            raise InputError(f"L-data needs a square matrix of size at least 1, got {d} rows")
        ctx = self.t_Y.ctx
        for row in self.entries:
            for s in row:
                if s.ctx != ctx:
                    raise ContextMismatch("matrix entries and t_Y live in different p-adic contexts")

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def ctx(self) -> PadicContext:
        return self.t_Y.ctx

    @classmethod
    def from_json(cls, data: dict, ctx: Optional[PadicContext] = None) -> "PlusMinusLData":
        """
        Parse ``{"d": int, "entries": [[series...]], "tY": series}``.

        Raises:
            InputError: on a malformed payload or mismatched dimensions
        """
        try:
            payload = MatrixPayload.model_validate(data)
        except ValidationError as e:
            raise InputError(f"malformed matrix payload: {e}") from e
        if ctx is None:
            if payload.p is None:
                raise InputError("matrix payload carries no prime and none was given")
            ctx = PadicContext(p=payload.p, N=payload.N or 8)
        elif payload.p is not None and payload.p != ctx.p:
            raise InputError(f"payload prime {payload.p} does not match context prime {ctx.p}")
        if len(payload.entries) != payload.d:
            raise InputError(f"declared d={payload.d} but {len(payload.entries)} rows given")
        entries = [[_parse_series(item, ctx) for item in row] for row in payload.entries]
        return cls(entries, _parse_series(payload.tY, ctx))

    def constant_matrix(self) -> List[List[PadicScalar]]:
        """u(0)."""
        return [[s[0] for s in row] for row in self.entries]


# -- determinants over Λ --------------------------------------------------------


def _exact_zero(ctx: PadicContext) -> IwasawaSeries:
    return IwasawaSeries.from_ints(ctx, [0])


def _laplace(matrix: Sequence[Sequence[IwasawaSeries]]) -> IwasawaSeries:
    if len(matrix) == 1:
        return matrix[0][0]
    acc: Optional[IwasawaSeries] = None
    for j, a in enumerate(matrix[0]):
        if a.polynomial_exact and a.degree() < 0:
            continue
        minor = [list(row[:j]) + list(row[j + 1 :]) for row in matrix[1:]]
        term = a * _laplace(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else _exact_zero(matrix[0][0].ctx)


def _lower_degree(s: IwasawaSeries, D: int) -> IwasawaSeries:
    return s if s.polynomial_exact or s.D <= D else s.truncate(D)


def _divide_by_x(s: IwasawaSeries) -> IwasawaSeries:
    coeffs = list(s.coeffs[1:]) or [s.ctx.zero()]
    return IwasawaSeries.from_scalars(s.ctx, coeffs, max(s.D - 1, 0), s.polynomial_exact)


def _times_x_power(s: IwasawaSeries, k: int) -> IwasawaSeries:
    if k == 0:
        return s
    coeffs = [s.ctx.zero()] * k + list(s.coeffs)
    return IwasawaSeries.from_scalars(s.ctx, coeffs, s.D + k, s.polynomial_exact)


def _eliminate(matrix: Sequence[Sequence[IwasawaSeries]]) -> IwasawaSeries:
    """
    Gaussian elimination in Q_p[[X]].

    The pivot is the entry whose constant term has least valuation; a column
    whose constant terms all vanish exactly has X divided out of it.
    """
    ctx = matrix[0][0].ctx
    n = len(matrix)
    work = [list(row) for row in matrix]
    truncated = [s.D for row in work for s in row if not s.polynomial_exact]
    D = min(truncated) if truncated else _inverse_degree(work)
    det = IwasawaSeries.from_ints(ctx, [1])
    x_power = 0
    for c in range(n):
        while True:
            consts = [work[r][c][0] for r in range(c, n)]
            candidates = [(a.valuation, r) for a, r in zip(consts, range(c, n)) if not a.is_zero()]
            if candidates:
                break
            if not all(a.is_exact_zero for a in consts):
                raise PrecisionExhausted(
                    f"column {c}: constant terms are zero only to precision",
                    {"column": c},
                )
            if all(work[r][c].is_zero() for r in range(c, n)):
                if all(work[r][c].polynomial_exact for r in range(c, n)):
                    return _exact_zero(ctx)
                raise ZeroToPrecision(f"column {c} vanishes to working precision", {"column": c})
            for r in range(c, n):
                work[r][c] = _divide_by_x(work[r][c])
            x_power += 1
            lowered = [work[r][c].D for r in range(c, n) if not work[r][c].polynomial_exact]
            if lowered:
                D = min(D, *lowered)
                work = [[_lower_degree(s, D) for s in row] for row in work]
                det = _lower_degree(det, D)
        _, r = min(candidates)
        if r != c:
            work[c], work[r] = work[r], work[c]
            det = -det
        pivot = work[c][c]
        det = det * pivot
        inverse = pivot.truncate(D).inverse()
        for rr in range(c + 1, n):
            b = work[rr][c]
            if b.polynomial_exact and b.degree() < 0:
                continue
            factor = b * inverse
            for j in range(c + 1, n):
                work[rr][j] = work[rr][j] - factor * work[c][j]
        # entries below the pivot are now zero; later pivots only read columns > c
    return _times_x_power(det, x_power)


def _inverse_degree(work: Sequence[Sequence[IwasawaSeries]]) -> int:
    """Truncation used to invert a polynomial pivot when every entry is an exact polynomial."""
    return max(s.degree() for row in work for s in row if s.polynomial_exact) * len(work) + 1


def series_determinant(matrix: Sequence[Sequence[IwasawaSeries]]) -> IwasawaSeries:
    """det over Λ: cofactor expansion for small matrices, elimination otherwise."""
    if len(matrix) <= LAPLACE_MAX:
        return _laplace(matrix)
    return _eliminate(matrix)


# -- L and its invariants -------------------------------------------------------


@dataclass(frozen=True)
class PlusMinusL:
    """L = det(u)·t_Y with its invariants."""

    series: IwasawaSeries
    mu: int
    lam: int
    normalized: bool


def plus_minus_L(data: PlusMinusLData) -> PlusMinusL:
    """
    Build L = det(u_ij)·t_Y and extract (μ, λ).

    ``normalized`` records whether det u(0) is a unit; a deviation is
    logged, not raised.

    Raises:
        ZeroToPrecision: when L vanishes to working precision; L may then be
            identically zero, which happens exactly when the coranks are unbounded
    """
    det = series_determinant(data.entries)
    L = det * data.t_Y
    det0 = determinant(data.constant_matrix(), data.ctx)
    normalized = det0.is_unit()
    if not normalized:
        logger.warning("det u(0) = %r is not a unit; the matrix is not normalized", det0)
    try:
        mu, lam = L.mu_lambda()
    except ZeroToPrecision as e:
        raise ZeroToPrecision(
            "L is zero to working precision: possibly identically zero, in which case the corank is unbounded",
            dict(e.details),
        ) from e
    logger.verbose("L-data of size %d: mu=%d, lambda=%d", data.d, mu, lam)
    return PlusMinusL(L, mu, lam, normalized)


class ZetaQuotient(BaseModel):
    """O^d/(u(ζ_n - 1)) over O = Z_p[μ_{p^n}] against the invariant prediction."""

    n: int
    ramification: int
    finite: bool
    ordp_size: Optional[int] = None
    mu: Optional[int] = None
    lam: Optional[int] = None
    threshold: Optional[int] = None
    predicted: Optional[int] = None
    agrees: Optional[bool] = None
    certified_digits: Optional[int] = None


def quotient_finiteness_at_zeta(data: PlusMinusLData, n: int) -> ZetaQuotient:
    """
    Evaluate u at ζ_n - 1 and take the Smith normal form over the DVR.

    The quotient is finite iff det u(ζ_n - 1) ≠ 0; past the stabilization level
    of det u its ord_p size is μ(p^n - p^(n-1)) + λ.

    Raises:
        PrecisionExhausted: if a pivot cannot be certified
    """
    if n < 1:
        raise InputError(f"evaluation level must be at least 1, got {n}")
    p = data.ctx.p
    e = p**n - p ** (n - 1)
    values = [[eval_at_zeta(s, n) for s in row] for row in data.entries]
    result = PresentedModule.from_ring_matrix(values).snf()
    report = ZetaQuotient(
        n=n,
        ramification=e,
        finite=result.is_finite,
        ordp_size=result.torsion_exponent if result.is_finite else None,
        certified_digits=None if result.certified_digits == INF else int(result.certified_digits),
    )
    try:
        mu, lam = series_determinant(data.entries).mu_lambda()
    except ZeroToPrecision:
        logger.verbose("det u vanishes to precision; no invariant prediction at n=%d", n)
        return report
    report.mu, report.lam = mu, lam
    report.threshold = stabilization_level(p, lam)
    if n >= report.threshold:
        report.predicted = mu * e + lam
        report.agrees = report.finite and report.ordp_size == report.predicted
        if not report.agrees:
            logger.warning("quotient at zeta_%d: SNF size %s, invariants predict %d", n, report.ordp_size, report.predicted)
    return report
