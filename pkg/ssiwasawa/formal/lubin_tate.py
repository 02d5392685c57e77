"""
Lubin–Tate formal groups attached to the good lift of Frobenius.

For a uniformizer π of Z_p with π ≡ p mod p², the good lift is

    f(X) = πX + Σ_{i=2}^{p} C(p, i) X^i,

so f ≡ (1+X)^p - 1 mod p² and the X^(p-1) coefficient is exactly p.  The
formal group law F_f is built from its logarithm λ_f = lim f^(k)/π^k:
exp = λ_f^{-1}, F_f(X, Y) = exp(λ_f(X) + λ_f(Y)) and [a]_f = exp(a·λ_f).
"""

import math
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple, Union

from ssiwasawa.arith import intpoly
from ssiwasawa.arith.padic import PadicContext, PadicScalar, Valuation, int_valuation
from ssiwasawa.arith.series import BivariateSeries, IwasawaSeries
from ssiwasawa.modules.snf import determinant
from ssiwasawa.utils.errors import BadUniformizer, ConvergenceGuard, NotAUnit
from ssiwasawa.utils.logging import get_logger

logger = get_logger("ssiwasawa.lubin_tate")


@dataclass(frozen=True, slots=True)
class FrobeniusLift:
    """The good lift f of Frobenius for a uniformizer π."""

    ctx: PadicContext
    pi: int
    poly: Tuple[int, ...]

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def is_multiplicative(self) -> bool:
        """True when π = p, i.e. f = (1+X)^p - 1 and F_f is the multiplicative law."""
        return self.pi == self.ctx.p

    def series(self, D: Optional[int] = None) -> IwasawaSeries:
        return IwasawaSeries.from_ints(self.ctx, self.poly, D)

    def pi_scalar(self) -> PadicScalar:
        return PadicScalar.from_int(self.ctx, self.pi)

    def good_lift_checks(self) -> Tuple[bool, bool]:
        """
        The two defining congruences.

        Returns:
            (f ≡ (1+X)^p - 1 mod p², coefficient of X^(p-1) equals p)
        """
        p = self.p
        target = intpoly.binomial_shift(p)
        diff = intpoly.sub(list(self.poly), target)
        congruent = all(c % (p * p) == 0 for c in diff)
        return congruent, self.poly[p - 1] == p


def good_frobenius_lift(ctx: PadicContext, pi: Union[int, PadicScalar]) -> FrobeniusLift:
    """
    Build f(X) = πX + Σ_{i=2}^{p} C(p, i) X^i.

    Raises:
        BadUniformizer: unless v(π) = 1 and ord_p(π/p - 1) > 0
    """
    p = ctx.p
    if isinstance(pi, PadicScalar):
        if not pi.is_exact:
            raise BadUniformizer("the uniformizer must be given exactly")
        pi = pi.lift()
    if pi == 0 or int_valuation(pi, p) != 1:
        raise BadUniformizer(f"uniformizer {pi} does not have valuation 1", {"pi": pi})
    if (pi // p - 1) % p != 0:
        raise BadUniformizer(f"uniformizer {pi} does not satisfy pi/p ≡ 1 mod p", {"pi": pi})
    poly = [0, pi] + [math.comb(p, i) for i in range(2, p + 1)]
    return FrobeniusLift(ctx, pi, tuple(poly))


@dataclass(frozen=True, slots=True, eq=False)
class FormalGroupLaw:
    """A truncated formal group law with its logarithm and exponential."""

    ctx: PadicContext
    D: int
    law: BivariateSeries
    log: IwasawaSeries
    exp: IwasawaSeries
    lift: Optional[FrobeniusLift] = None
    residual: Valuation = 0
    verified: bool = True

    def mult_by(self, a: Union[int, PadicScalar]) -> IwasawaSeries:
        """[a](X) = exp(a·log(X))."""
        if isinstance(a, int):
            a = PadicScalar.from_int(self.ctx, a)
        else:
            a = a.to_context(self.ctx)
        return self.exp.compose(self.log.scale(a))

    def add(self, x: Any, y: Any, tail: Optional[Valuation] = None) -> Any:
        """Group sum F(x, y) of two points (scalars or ring elements)."""
        return self.law.evaluate(x, y, tail)


def working_context(ctx: PadicContext, D: int, guard: Optional[int]) -> PadicContext:
    """Context with guard digits for series that carry denominators."""
    return ctx.with_precision(ctx.N + (D + 4 if guard is None else guard))


def lubin_tate_logarithm(f: FrobeniusLift, D: int, work: PadicContext) -> IwasawaSeries:
    """
    λ_f = lim f^(k)/π^k, coefficientwise, truncated at degree D.

    Iterates are taken modulo p^(N+k) so that division by π^k leaves N
    certified digits; the loop stops once two successive quotients agree.

    Raises:
        ConvergenceGuard: if no agreement within N + ⌈log_p D⌉ + 4 iterations
    """
    p = f.p
    N = work.N
    cap = N + math.ceil(math.log(max(D, 2), p)) + 4
    modulus = p ** (N + cap + 1)
    w = f.pi // p
    w_inv = pow(w, -1, modulus)
    poly = list(f.poly)
    current = intpoly.reduce_mod(poly[: D + 1], modulus)
    previous: Optional[List[int]] = None
    for k in range(1, cap + 1):
        scale = pow(w_inv, k, modulus)
        scaled = [(c * scale) % modulus for c in current] + [0] * (D + 1 - len(current))
        if previous is not None:
            # scaled/p^k agrees with previous/p^(k-1) modulo p^N
            m = p ** (N + k)
            if all((p * a - b) % m == 0 for a, b in zip(previous, scaled)):
                logger.debug("Lubin-Tate logarithm stabilized after %d iterates (degree %d)", k, D)
                coeffs = [PadicScalar.from_scaled_residue(work, c, -k, N) for c in scaled]
                return IwasawaSeries(work, D, tuple(coeffs))
        previous = scaled
        current = intpoly.compose_mod(poly, current, modulus, D)
    raise ConvergenceGuard(
        f"logarithm coefficients did not stabilize to {N} digits below degree {D}",
        iterations=cap,
        budget=cap,
    )


def lubin_tate_law(
    f: FrobeniusLift,
    D: int,
    guard: Optional[int] = None,
    verify: bool = True,
) -> FormalGroupLaw:
    """
    The Lubin–Tate law F_f truncated at total degree D.

    The functional equation f(F(X, Y)) = F(f(X), f(Y)) is checked afterwards
    at the tracked precision; the certified number of digits is recorded as
    ``residual``.
    """
    work = working_context(f.ctx, D, guard)
    log = lubin_tate_logarithm(f, D, work)
    exp = log.reversion()
    law = BivariateSeries.compose_univariate(exp, BivariateSeries.separated_sum(log, log))
    residual: Valuation = law.precision_floor()
    verified = True
    if verify:
        fs = IwasawaSeries.from_ints(work, f.poly, D)
        lhs = BivariateSeries.compose_univariate(fs.truncate(D), law)
        rhs = law.compose_separated(fs.truncate(D), fs.truncate(D))
        diff = lhs - rhs
        verified = diff.is_zero()
        residual = diff.precision_floor()
        if verified:
            logger.verbose("functional equation holds to %s digits at degree %d", residual, D)
        else:
            logger.warning("functional equation fails for the Lubin-Tate law at degree %d", D)
    return FormalGroupLaw(work, D, law, log, exp, f, residual, verified)


def mult_by(
    a: Union[int, PadicScalar],
    f: FrobeniusLift,
    D: int,
    law: Optional[FormalGroupLaw] = None,
) -> IwasawaSeries:
    """The endomorphism [a]_f = exp(a·log), truncated at degree D."""
    if law is None or law.D < D:
        law = lubin_tate_law(f, D, verify=False)
    return law.mult_by(a).truncate(D)


def division_matrix(f: FrobeniusLift, law: Optional[FormalGroupLaw] = None) -> List[List[PadicScalar]]:
    """The matrix (a_j(i)) of coefficients of [i]_f, 1 ≤ i, j ≤ p-1."""
    p = f.p
    D = max(p - 1, 2)
    if law is None or law.D < D:
        law = lubin_tate_law(f, D, verify=False)
    rows = []
    for i in range(1, p):
        series = law.mult_by(i)
        rows.append([series[j] for j in range(1, p)])
    return rows


def division_matrix_det(f: FrobeniusLift, law: Optional[FormalGroupLaw] = None) -> PadicScalar:
    """
    det(a_j(i)); a unit of Z_p for every good lift.

    Raises:
        NotAUnit: if the determinant is not a unit
    """
    det = determinant(division_matrix(f, law))
    if not det.is_unit():
        raise NotAUnit(f"division matrix determinant {det!r} is not a unit", {"p": f.p})
    return det
