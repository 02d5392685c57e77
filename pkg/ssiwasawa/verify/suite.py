"""
The verification-report runner.

A `VerificationSuite` holds named checks, runs them in registration order
and collects PASS / FAIL / INFO items with the precision each one achieved.
A check that raises is recorded as a FAIL; INFO items never fail a run.
"""

import enum
import logging
import math
import random
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel

from ssiwasawa.arith import intpoly
from ssiwasawa.arith.cyclotomic import CycloKind, cyclo_ints, eval_at_zeta, q_value, stabilization_level
from ssiwasawa.arith.padic import INF, PadicContext, PadicScalar, Valuation
from ssiwasawa.arith.series import IwasawaSeries
from ssiwasawa.formal.honda import (
    HondaGroup,
    epsilon_point,
    honda_logarithm,
    verify_c_trace,
    verify_c_trace_base,
    verify_d_trace,
    verify_d_trace_base,
)
from ssiwasawa.formal.lubin_tate import FrobeniusLift, division_matrix_det, good_frobenius_lift, lubin_tate_law
from ssiwasawa.formal.tower import extension_degree, span_check_maximal_ideal
from ssiwasawa.growth.formulas import stable_quotient_size
from ssiwasawa.modules.plus_minus import PlusMinusLData, plus_minus_L, quotient_finiteness_at_zeta, series_determinant
from ssiwasawa.modules.presented import model_E_Ln, sha_structure_size, trace_kernel_cokernel
from ssiwasawa.settings.config import EZeroConvention, Settings
from ssiwasawa.utils.errors import ZeroToPrecision
from ssiwasawa.utils.logging import get_logger

# Largest Z_p-rank of an explicit Λ-module model built by the suite.
MODULE_RANK_CAP = 81
# Total degree used for the mod-p congruences of the Lubin-Tate law.
CONGRUENCE_DEGREE = 20
RANDOM_POLYNOMIALS = 50
RANDOM_MATRICES = 10


class CheckStatus(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INFO = "INFO"


class CheckItem(BaseModel):
    """One line of the report."""

    name: str
    status: CheckStatus
    digits: Optional[int] = None
    detail: str = ""

    def render(self) -> str:
        digits = "-" if self.digits is None else str(self.digits)
        line = f"{self.status.value}  {self.name}  digits={digits}"
        return f"{line}  {self.detail}" if self.detail else line


class VerificationReport(BaseModel):
    header: List[str]
    items: List[CheckItem]

    @property
    def failed(self) -> bool:
        return any(item.status is CheckStatus.FAIL for item in self.items)

    def counts(self) -> Dict[str, int]:
        return {s.value: sum(1 for item in self.items if item.status is s) for s in CheckStatus}

    def render(self) -> str:
        counts = self.counts()
        summary = f"summary: {counts['PASS']} passed, {counts['FAIL']} failed, {counts['INFO']} informational"
        return "\n".join(self.header + [item.render() for item in self.items] + [summary]) + "\n"


def _passed(ok: bool) -> CheckStatus:
    return CheckStatus.PASS if ok else CheckStatus.FAIL


def _digits(v: Valuation) -> Optional[int]:
    return None if v == INF else int(v)


CheckFn = Callable[["VerificationSuite"], List[CheckItem]]


class VerificationSuite:
    """
    Runs registered checks against one configuration.

    Shared objects (lifts, the Honda group, its tower) are built lazily and
    reused by every check.
    """

    def __init__(self, settings: Settings, logger: Optional[logging.Logger] = None):
        self.settings = settings
        self.checks: Dict[str, CheckFn] = {}
        self.logger = logger or get_logger("ssiwasawa.verify")

    def register_check(self, name: str, check: CheckFn) -> None:
        """
        Register a check under a unique name.

        Raises:
            ValueError: If a check with the same name is already registered
        """
        if name in self.checks:
            raise ValueError(f"A check with name '{name}' is already registered")
        self.checks[name] = check
        self.logger.debug("Registered check: %s", name)

    def register_checks(self, checks: List[Tuple[str, CheckFn]]) -> None:
        for name, check in checks:
            self.register_check(name, check)

    # -- shared objects --------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.settings.prime

    @cached_property
    def ctx(self) -> PadicContext:
        return PadicContext(p=self.p, N=self.settings.precision)

    @cached_property
    def lifts(self) -> List[FrobeniusLift]:
        """The multiplicative lift π = p and the twisted lift π = p(1+p)."""
        return [good_frobenius_lift(self.ctx, self.p), good_frobenius_lift(self.ctx, self.p * (1 + self.p))]

    @cached_property
    def honda(self) -> HondaGroup:
        return honda_logarithm(
            self.lifts[0],
            self.settings.degree,
            self.settings.precision,
            guard=self.settings.guard_digits,
        )

    @property
    def relation_level(self) -> int:
        """Highest tower level the relation checks may use."""
        return 3 if extension_degree(self.p, 3, 0) <= self.settings.span_degree_cap else 2

    @property
    def module_levels(self) -> List[int]:
        return [n for n in range(1, 5) if self.p**n <= MODULE_RANK_CAP]

    # -- running ---------------------------------------------------------------------

    def header(self) -> List[str]:
        s = self.settings
        return [
            f"ssiwasawa verify: p={s.prime} N={s.precision} D={s.degree} seed={s.seed} "
            f"e0={EZeroConvention(s.e0_convention).value}",
            s.hypotheses.header(),
        ]

    def run(self) -> VerificationReport:
        items: List[CheckItem] = []
        for name, check in self.checks.items():
            self.logger.verbose("running check group %s", name)
            try:
                items.extend(check(self))
            except Exception as e:
                self.logger.error("Error running check '%s': %s", name, e)
                items.append(CheckItem(name=name, status=CheckStatus.FAIL, detail=f"{type(e).__name__}: {e}"))
        return VerificationReport(header=self.header(), items=items)


# -- formal groups ---------------------------------------------------------------------


def check_good_lifts(suite: VerificationSuite) -> List[CheckItem]:
    """Good Frobenius lifts for pi = p and pi = p(1+p)."""
    items = []
    p = suite.p
    for f in suite.lifts:
        congruent, coefficient = f.good_lift_checks()
        items.append(
            CheckItem(
                name=f"good lift pi={f.pi}",
                status=_passed(congruent and coefficient),
                detail=f"f = (1+X)^p - 1 mod p^2: {congruent}; X^{p - 1} coefficient is p: {coefficient}",
            )
        )
    exact = list(suite.lifts[0].poly) == intpoly.binomial_shift(p)
    items.append(CheckItem(name="pi=p gives (1+X)^p - 1", status=_passed(exact)))
    return items


def check_lubin_tate_congruences(suite: VerificationSuite) -> List[CheckItem]:
    """F_f ≡ X+Y+XY and [a]_f ≡ (1+X)^a - 1 modulo p."""
    p = suite.p
    D = min(suite.settings.degree, CONGRUENCE_DEGREE)
    items = []
    for f in suite.lifts:
        law = lubin_tate_law(f, D)
        law_ok = law.law.residues(1) == {(1, 0): 1, (0, 1): 1, (1, 1): 1}
        mult_ok = all(
            law.mult_by(a).residues(1) == [math.comb(a, i) % p for i in range(D + 1)] for a in range(1, p)
        )
        items.append(
            CheckItem(
                name=f"F_f = X+Y+XY mod p (pi={f.pi})",
                status=_passed(law_ok and law.verified),
                digits=_digits(law.residual),
                detail=f"degree {D}",
            )
        )
        items.append(CheckItem(name=f"[a]_f = (1+X)^a - 1 mod p (pi={f.pi})", status=_passed(mult_ok)))
    return items


def check_division_determinant(suite: VerificationSuite) -> List[CheckItem]:
    """det of the division-point matrix is a unit."""
    items = []
    for f in suite.lifts:
        det = division_matrix_det(f)
        items.append(CheckItem(name=f"det(a_j(i)) is a unit (pi={f.pi})", status=CheckStatus.PASS, detail=repr(det)))
    return items


def check_span(suite: VerificationSuite) -> List[CheckItem]:
    """Division points reach every valuation of the maximal ideal."""
    items = []
    cap = suite.settings.span_degree_cap
    for n in (1, 2):
        if extension_degree(suite.p, n, 0) > cap:
            items.append(
                CheckItem(name=f"division points span M_{n}", status=CheckStatus.INFO, detail="skipped: degree above cap")
            )
            continue
        report = span_check_maximal_ideal(suite.lifts[0], n, suite.settings.precision, degree_cap=cap)
        items.append(
            CheckItem(
                name=f"division points span M_{n}",
                status=_passed(report.passed and report.trace_is_minus_p),
                digits=report.budget,
                detail=f"rank {report.lattice_rank}, missing {report.missing}",
            )
        )
    return items


def check_honda(suite: VerificationSuite) -> List[CheckItem]:
    """Honda group: integrality, homomorphism, height two and the point epsilon."""
    H = suite.honda
    p = suite.p
    need = min(4, suite.settings.precision)
    items = [
        CheckItem(name="Honda law is integral", status=_passed(H.integral), detail=f"degree {H.D}"),
        CheckItem(
            name="l(G(X,Y)) = l(X) + l(Y)",
            status=_passed(H.homomorphism_digits >= need),
            digits=_digits(H.homomorphism_digits),
        ),
    ]
    if H.D >= p * p:
        items.append(CheckItem(name="Honda law has height 2", status=_passed(H.height_two())))
    eps = epsilon_point(H)
    t = PadicScalar.from_fraction(H.ctx, Fraction(p, p + 1))
    residual = H.log.evaluate(eps.coordinate, (H.D + 1) - math.ceil(math.log(H.D + 1, p))) - t
    ok = residual.is_zero() and residual.precision >= need and eps.coordinate.valuation == 1
    items.append(
        CheckItem(
            name="l(epsilon) = p/(p+1), v(epsilon) = 1",
            status=_passed(ok),
            digits=_digits(residual.precision),
            detail=repr(eps.coordinate.to_context(H.target)),
        )
    )
    return items


def check_trace_relations(suite: VerificationSuite) -> List[CheckItem]:
    """Trace relations between the c and d points."""
    H = suite.honda
    level = suite.relation_level
    tower = H.tower(level)
    need = min(3, suite.settings.precision)
    configured = EZeroConvention(suite.settings.e0_convention)
    checks = [verify_c_trace(H, tower, 2)]
    if level >= 3:
        checks += [verify_c_trace(H, tower, 3), verify_d_trace(H, tower, 2)]
    for convention in EZeroConvention:
        checks.append(verify_c_trace_base(H, tower, convention, informational=convention is not configured))
    checks.append(verify_d_trace_base(H, tower))
    items = []
    for rel in checks:
        ok = rel.holds and (rel.digits is None or rel.digits >= need) and rel.group_route is not False
        status = CheckStatus.INFO if rel.informational else _passed(ok)
        detail = f"u = {rel.unit}" if rel.unit else ""
        if rel.group_route is not None:
            detail = f"{detail} group route {'agrees' if rel.group_route else 'disagrees'}".strip()
        items.append(CheckItem(name=rel.name, status=status, digits=rel.digits, detail=detail))
    if level < 3:
        items.append(CheckItem(name="level-3 relations", status=CheckStatus.INFO, detail="skipped: tower degree above cap"))
    return items


# -- modules -----------------------------------------------------------------------------


def check_module_models(suite: VerificationSuite) -> List[CheckItem]:
    """Λ-module models: ranks and the trace kernel and cokernel."""
    p = suite.p
    items = []
    for n in suite.module_levels:
        model = model_E_Ln(p, n)
        result = model.snf()
        ok = result.free_rank == p**n and result.torsion_exponent == 0
        items.append(CheckItem(name=f"rank G(L_{n}) = p^{n}", status=_passed(ok), detail=f"rank {result.free_rank}"))
    for n in suite.module_levels:
        if n < 2:
            continue
        data = trace_kernel_cokernel(p, n)
        items.append(
            CheckItem(
                name=f"ker Tr at n={n} has rank p^n - p^(n-1)",
                status=_passed(data.kernel_rank == p**n - p ** (n - 1)),
                detail=f"rank {data.kernel_rank}",
            )
        )
        status = CheckStatus.PASS if data.matches_q else (CheckStatus.FAIL if n == 2 else CheckStatus.INFO)
        items.append(
            CheckItem(
                name=f"coker Tr at n={n} has p-rank q_n",
                status=status,
                detail=f"p-rank {data.cokernel_p_rank}, q_{n} = {data.q_n}",
            )
        )
    return items


def check_sha_sizes(suite: VerificationSuite) -> List[CheckItem]:
    """Sha sizes against the SNF and resultant oracles."""
    p = suite.p
    items = []
    for n in suite.module_levels:
        for d in (1, 2):
            sha = sha_structure_size(p, n, d)
            items.append(
                CheckItem(
                    name=f"Sha size n={n} d={d}",
                    status=_passed(sha.consistent),
                    detail=f"ord_p {sha.ordp}, SNF {sha.snf_exponent}, resultant {sha.resultant_exponent}",
                )
            )
    if p == 3:
        anchor = sha_structure_size(3, 2, 1).ordp
        items.append(CheckItem(name="ord_3 #Lambda/(w2+, w2-) = 2", status=_passed(anchor == 2)))
    return items


def check_plus_minus_L(suite: VerificationSuite) -> List[CheckItem]:
    """Plus/minus L from sample matrices."""
    ctx = suite.ctx
    p = suite.p
    one, zero = IwasawaSeries.from_ints(ctx, [1]), IwasawaSeries.from_ints(ctx, [0])
    data = PlusMinusLData([[one, zero], [zero, IwasawaSeries.from_ints(ctx, [p, 1])]], one)
    L = plus_minus_L(data)
    return [
        CheckItem(
            name="L of diag(1, p+X) has mu=0, lambda=1",
            status=_passed((L.mu, L.lam) == (0, 1)),
            detail=f"mu={L.mu}, lambda={L.lam}, normalized={L.normalized}",
        )
    ]


# -- growth ------------------------------------------------------------------------------


def _random_polynomial(rng: random.Random, p: int, mu: int, lam: int) -> List[int]:
    units = [u for u in range(-p + 1, p) if u % p]
    coeffs = [p ** (mu + 1) * rng.randint(-p, p) for _ in range(lam)]
    coeffs.append(p**mu * rng.choice(units))
    coeffs += [p**mu * rng.randint(-p * p, p * p) for _ in range(rng.randint(0, 3))]
    return coeffs


def _zeta_levels(suite: VerificationSuite) -> List[int]:
    return [n for n in range(1, 5) if extension_degree(suite.p, n, 0) <= suite.settings.span_degree_cap]


def check_evaluation_law(suite: VerificationSuite) -> List[CheckItem]:
    """ord_p g(ζ_n - 1) = μ + λ/(p^n - p^(n-1)) past the stabilization level."""
    rng = random.Random(suite.settings.seed)
    p = suite.p
    levels = _zeta_levels(suite)
    checked = failures = 0
    for _ in range(RANDOM_POLYNOMIALS):
        mu, lam = rng.randint(0, 2), rng.randint(0, 10)
        g = IwasawaSeries.from_ints(suite.ctx, _random_polynomial(rng, p, mu, lam))
        for n in levels:
            e = p**n - p ** (n - 1)
            if e <= lam:
                continue
            checked += 1
            if eval_at_zeta(g, n).ordp() != mu + Fraction(lam, e):
                failures += 1
    items = [
        CheckItem(
            name="ord_p g(zeta_n - 1) = mu + lambda/(p^n - p^(n-1))",
            status=_passed(failures == 0 and checked > 0),
            detail=f"{checked} evaluations, {failures} mismatches",
        )
    ]
    checked = failures = 0
    for _ in range(RANDOM_MATRICES):
        entries = [
            [IwasawaSeries.from_ints(suite.ctx, [rng.randint(-p * p, p * p) for _ in range(rng.randint(1, 3))]) for _ in range(2)]
            for _ in range(2)
        ]
        data = PlusMinusLData(entries, IwasawaSeries.from_ints(suite.ctx, [1]))
        try:
            _, lam = series_determinant(entries).mu_lambda()
        except ZeroToPrecision:
            continue
        for n in levels:
            if n < stabilization_level(p, lam):
                continue
            checked += 1
            if not quotient_finiteness_at_zeta(data, n).agrees:
                failures += 1
    items.append(
        CheckItem(
            name="SNF size at zeta_n - 1 = mu(det)(p^n - p^(n-1)) + lambda(det)",
            status=_passed(failures == 0),
            detail=f"{checked} evaluations, {failures} mismatches",
        )
    )
    return items


def check_stable_quotients(suite: VerificationSuite) -> List[CheckItem]:
    """Stable quotient sizes against their oracles."""
    p = suite.p
    cases = [
        ("Lambda/p", [p], 1),
        ("Lambda/(p+X)", [p, 1], 1),
        ("Lambda/xi_1", list(cyclo_ints(p, 1, CycloKind.XI)), 1),
        ("Lambda/(p+X)^2", [p, 1], 2),
    ]
    items = []
    for label, f, e in cases:
        for n in (n for n in suite.module_levels if n >= 2):
            result = stable_quotient_size(f, e, n, p)
            items.append(
                CheckItem(
                    name=f"stable quotient {label} n={n}",
                    status=_passed(result.agrees),
                    detail=f"{result.branch}: size {result.size}, resultant {result.resultant_oracle}, SNF {result.snf_oracle}",
                )
            )
    return items


def check_q_values(suite: VerificationSuite) -> List[CheckItem]:
    """q_n alternating sums against the closed form."""
    p = suite.p
    ok = all(q_value(p, n) == _q_closed_form(p, n) for n in range(8))
    return [CheckItem(name="q_n alternating sums", status=_passed(ok))]


def _q_closed_form(p: int, n: int) -> int:
    """(p^n - 1)/(p + 1) for even n, (p^n - p)/(p + 1) for odd n."""
    return (p**n - 1) // (p + 1) if n % 2 == 0 else (p**n - p) // (p + 1)


DEFAULT_CHECKS: List[Tuple[str, CheckFn]] = [
    ("good_lifts", check_good_lifts),
    ("lubin_tate_congruences", check_lubin_tate_congruences),
    ("division_determinant", check_division_determinant),
    ("span", check_span),
    ("honda", check_honda),
    ("trace_relations", check_trace_relations),
    ("q_values", check_q_values),
    ("module_models", check_module_models),
    ("sha_sizes", check_sha_sizes),
    ("plus_minus_L", check_plus_minus_L),
    ("evaluation_law", check_evaluation_law),
    ("stable_quotients", check_stable_quotients),
]


def default_suite(settings: Settings) -> VerificationSuite:
    suite = VerificationSuite(settings)
    suite.register_checks(DEFAULT_CHECKS)
    return suite


def run_verification(settings: Settings) -> VerificationReport:
    """Run every default check for one configuration."""
    return default_suite(settings).run()
