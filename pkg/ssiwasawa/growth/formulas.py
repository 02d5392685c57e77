"""
Growth formulas for coranks, Sha increments and stable quotient sizes.

Only main terms and stabilization levels are produced; the bounded error
terms of the asymptotic statements are never filled in.  Where the two
displays of the Sha increment disagree, both values are reported.
"""

from typing import Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, Field, model_validator
from sympy import isprime

from ssiwasawa.arith import intpoly
from ssiwasawa.arith.cyclotomic import CycloKind, cyclo_ints, q_value, quotient_order_resultant, stabilization_level
from ssiwasawa.arith.padic import int_valuation
from ssiwasawa.arith.series import IwasawaSeries
from ssiwasawa.modules.presented import PresentedModule
from ssiwasawa.settings.config import IncrementVariant
from ssiwasawa.utils.errors import InputError, NotStabilized
from ssiwasawa.utils.logging import get_logger

logger = get_logger("ssiwasawa.growth")


class GrowthParams(BaseModel):
    """Λ-ranks and invariants of the plus/minus Selmer data."""

    p: int = Field(default=3, ge=3)
    d: int = Field(default=1, ge=0)
    n_min: int = Field(default=1, ge=1)
    n_max: int = Field(default=4, ge=1)
    r_plus: int = Field(default=0, ge=0)
    r_minus: int = Field(default=0, ge=0)
    mu_plus: int = Field(default=0, ge=0)
    mu_minus: int = Field(default=0, ge=0)
    lambda_plus: int = Field(default=0, ge=0)
    lambda_minus: int = Field(default=0, ge=0)
    s: int = Field(default=0, ge=0, description="stable Z_p-corank of the Selmer groups")
    s0: int = Field(default=0, ge=0, description="Z_p-rank of the Γ_n-coinvariants of Y")
    variant: Optional[IncrementVariant] = None

    @model_validator(mode="after")
    def check_range(self) -> "GrowthParams":
        if self.n_max < self.n_min:
            raise ValueError(f"n_max={self.n_max} is below n_min={self.n_min}")
        if not isprime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        return self

    def signed(self, n: int) -> Dict[str, int]:
        """(μ^ε, λ^ε, r^ε, r^-ε) with ε = + for even n."""
        if n % 2 == 0:
            return {"mu": self.mu_plus, "lam": self.lambda_plus, "r": self.r_plus, "r_other": self.r_minus}
        return {"mu": self.mu_minus, "lam": self.lambda_minus, "r": self.r_minus, "r_other": self.r_plus}


def _check_level(n: int) -> None:
    if n < 1:
        raise InputError(f"growth formulas need n >= 1, got {n}")


def corank_growth(params: GrowthParams, n: int) -> int:
    """Main term r^ε·q_n + r^(-ε)·q_(n-1) of the Z_p-corank at level n."""
    _check_level(n)
    sig = params.signed(n)
    return sig["r"] * q_value(params.p, n) + sig["r_other"] * q_value(params.p, n - 1)


def sha_increment(params: GrowthParams, n: int, variant: Optional[IncrementVariant] = None) -> int:
    """
    ord_p of the Sha growth from level n-1 to level n.

    as-stated:     μ^ε(p^n - p^(n-1)) + (λ^ε - s)·n + d·q_n
    proof-derived: μ^ε(p^n - p^(n-1)) + λ^ε - s0 + d·q_n - s + s0

    The two s0 terms cancel, so the proof-derived value does not depend on s0.

    Raises:
        InputError: if no variant is selected
    """
    _check_level(n)
    variant = variant or params.variant
    if variant is None:
        raise InputError("a Sha-increment variant (as-stated or proof-derived) must be selected")
    p = params.p
    sig = params.signed(n)
    base = sig["mu"] * (p**n - p ** (n - 1)) + params.d * q_value(p, n)
    if IncrementVariant(variant) is IncrementVariant.AS_STATED:
        return base + (sig["lam"] - params.s) * n
    return base + sig["lam"] - params.s0 - params.s + params.s0


def stabilization_thresholds(params: GrowthParams) -> Dict[str, int]:
    """Smallest n with p^n - p^(n-1) > λ^±, for each sign."""
    return {
        "plus": stabilization_level(params.p, params.lambda_plus),
        "minus": stabilization_level(params.p, params.lambda_minus),
    }


def growth_rows(params: GrowthParams) -> List[Dict[str, Union[int, str]]]:
    """One row per level: corank main term and both increment displays with running totals."""
    thresholds = stabilization_thresholds(params)
    rows: List[Dict[str, Union[int, str]]] = []
    stated_total = derived_total = 0
    for n in range(params.n_min, params.n_max + 1):
        stated = sha_increment(params, n, IncrementVariant.AS_STATED)
        derived = sha_increment(params, n, IncrementVariant.PROOF_DERIVED)
        stated_total += stated
        derived_total += derived
        sign = "plus" if n % 2 == 0 else "minus"
        rows.append(
            {
                "n": n,
                "sign": "+" if sign == "plus" else "-",
                "corank_main_term": corank_growth(params, n),
                "increment_as_stated": stated,
                "increment_proof_derived": derived,
                "cumulative_as_stated": stated_total,
                "cumulative_proof_derived": derived_total,
                "stable": "yes" if n >= thresholds[sign] else "no",
            }
        )
        if stated != derived:
            logger.verbose("n=%d: increment displays differ (%d vs %d)", n, stated, derived)
    return rows


# -- stable quotients of Λ/f^e ------------------------------------------------------


class StableQuotient(BaseModel):
    """ord_p #(ω_(n-1)Y/ω_nY) for Y = Λ/f^e, with its oracles."""

    n: int
    e: int
    branch: str
    size: int
    threshold: int
    resultant_oracle: int
    snf_oracle: int
    agrees: bool


def _poly_ints(f: Union[IwasawaSeries, Sequence[int]]) -> List[int]:
    return f.int_coefficients() if isinstance(f, IwasawaSeries) else intpoly.trim(list(f))


def _cyclotomic_index(f: Sequence[int], p: int, n: int) -> Optional[int]:
    """k ≤ n with f = ξ_k, or None."""
    for k in range(n + 1):
        if list(cyclo_ints(p, k, CycloKind.XI)) == list(f):
            return k
    return None


def stable_quotient_size(
    f: Union[IwasawaSeries, Sequence[int]],
    e: int,
    n: int,
    p: Optional[int] = None,
) -> StableQuotient:
    """
    Size of ω_(n-1)Y/ω_nY for Y = Λ/f^e.

    If f is prime to ω_n the size is e·(μ(f)(p^n - p^(n-1)) + λ(f)) once
    p^n - p^(n-1) > e·λ(f).  If f = ξ_k with k < n it is (e-1)·deg ξ_k.

    Raises:
        NotStabilized: if n lies below the branch's threshold
        InputError: if f shares a factor with ω_n without being some ξ_k
    """
    _check_level(n)
    if e < 1:
        raise InputError(f"exponent must be positive, got {e}")
    if p is None:
        if not isinstance(f, IwasawaSeries):
            raise InputError("the prime is required for an integer polynomial")
        p = f.ctx.p
    fi = _poly_ints(f)
    if not fi:
        raise InputError("Y = Λ/0 is not torsion")
    xi_n = list(cyclo_ints(p, n, CycloKind.XI))
    omega_n = list(cyclo_ints(p, n, CycloKind.OMEGA))
    power = [1]
    for _ in range(e):
        power = intpoly.mul(power, fi)
    if intpoly.gcd_degree(fi, omega_n) == 0:
        mu = min(int_valuation(c, p) for c in fi if c)
        lam = next(i for i, c in enumerate(fi) if c and int_valuation(c, p) == mu)
        threshold = stabilization_level(p, e * lam)
        if n < threshold:
            raise NotStabilized(
                f"n={n} is below the stabilization level {threshold} for lambda={e * lam}",
                {"n": n, "threshold": threshold},
            )
        size = e * (mu * (p**n - p ** (n - 1)) + lam)
        branch = "coprime"
        reduced = power
    else:
        k = _cyclotomic_index(fi, p, n)
        if k is None:
            raise InputError("f shares a factor with omega_n but is not a cyclotomic xi_k")
        threshold = k + 1
        if n < threshold:
            raise NotStabilized(f"n={n} does not exceed k={k}", {"n": n, "k": k})
        size = (e - 1) * intpoly.degree(fi)
        branch = f"xi_{k}"
        # ω_(n-1)Y ≅ Λ/f^(e-1) and ω_n acts on it through ξ_n
        reduced = intpoly.exact_quotient(power, fi)
    resultant = quotient_order_resultant(reduced, xi_n, p)
    module = PresentedModule.lambda_quotients(p, [xi_n], [[reduced]], names=[f"Lambda/xi_{n}"])
    snf_size = module.order_exponent()
    agrees = resultant == size and snf_size == size
    if not agrees:
        logger.warning("stable quotient at n=%d: formula %d, resultant %d, SNF %s", n, size, resultant, snf_size)
    return StableQuotient(
        n=n,
        e=e,
        branch=branch,
        size=size,
        threshold=threshold,
        resultant_oracle=resultant,
        snf_oracle=-1 if snf_size is None else snf_size,
        agrees=agrees,
    )
