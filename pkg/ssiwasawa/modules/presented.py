"""
Finitely presented modules over Z_p, over quotients Λ/(g) and over the cyclotomic DVR.

Every module is carried by restriction of scalars: a quotient Λ/(g) with g
monic of degree r is the free Z_p-module on 1, X, ..., X^(r-1), and a
relation ρ contributes the rows X^j·ρ mod g.  Invariants then come from the
Z_p Smith normal form.
"""

import enum
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel

from ssiwasawa.arith import intpoly
from ssiwasawa.arith.cyclotomic import CycloKind, cyclo_ints, q_sum, q_value, quotient_order_resultant
from ssiwasawa.arith.eisenstein import RingElement
from ssiwasawa.modules.snf import Entry, SNFResult, snf
from ssiwasawa.utils.errors import InputError
from ssiwasawa.utils.logging import get_logger

logger = get_logger("ssiwasawa.modules")

IntPoly = Sequence[int]


class BaseRing(str, enum.Enum):
    ZP = "Z_p"
    LAMBDA_QUOTIENT = "Lambda/(g)"
    DVR = "Z_p[mu_p^n]"


@dataclass
class PresentedModule:
    """Z_p^ngens modulo the row span of ``relations``; ``blocks`` names the Λ-summands."""

    p: int
    ngens: int
    relations: List[List[Entry]]
    base: BaseRing = BaseRing.ZP
    blocks: List[Tuple[str, int]] = field(default_factory=list)
    _snf: Optional[SNFResult] = field(default=None, repr=False)

    @classmethod
    def over_zp(cls, p: int, ngens: int, relations: Sequence[Sequence[Entry]] = ()) -> "PresentedModule":
        rows = [list(r) for r in relations]
        if any(len(r) != ngens for r in rows):
            raise InputError(f"every relation must have {ngens} entries")
        return cls(p, ngens, rows)

    @classmethod
    def lambda_quotients(
        cls,
        p: int,
        moduli: Sequence[IntPoly],
        relations: Sequence[Sequence[IntPoly]] = (),
        names: Optional[Sequence[str]] = None,
    ) -> "PresentedModule":
        """
        ⊕_i Λ/(g_i) modulo Λ-relations; relation k has one polynomial per summand.

        Raises:
            InputError: if a modulus is not monic
        """
        for g in moduli:
            if intpoly.trim(g)[-1] != 1:
                raise InputError("quotient moduli must be monic")
        sizes = [intpoly.degree(g) for g in moduli]
        offsets = [sum(sizes[:i]) for i in range(len(sizes))]
        ngens = sum(sizes)
        rows: List[List[Entry]] = []
        for rel in relations:
            if len(rel) != len(moduli):
                raise InputError(f"a relation needs one polynomial per summand ({len(moduli)})")
            for j in range(ngens):
                row = [0] * ngens
                for block, (g, poly) in enumerate(zip(moduli, rel)):
                    reduced = intpoly.rem_monic([0] * j + list(poly), g)
                    for i, c in enumerate(reduced):
                        row[offsets[block] + i] = c
                if any(row):
                    rows.append(row)
        labels = list(names) if names else [f"summand_{i}" for i in range(len(moduli))]
        base = BaseRing.LAMBDA_QUOTIENT if moduli else BaseRing.ZP
        return cls(p, ngens, rows, base, list(zip(labels, sizes)))

    @classmethod
    def from_ring_matrix(cls, matrix: Sequence[Sequence[RingElement]]) -> "PresentedModule":
        """O^d modulo the rows of a d×d matrix over an Eisenstein ring O."""
        first = matrix[0][0]
        e = first.ring.degree
        d = len(matrix[0])
        blocks = [[entry.multiplication_matrix() for entry in row] for row in matrix]
        rows: List[List[Entry]] = []
        for row_blocks in blocks:
            for j in range(e):
                rows.append([row_blocks[k][r][j] for k in range(d) for r in range(e)])
        return cls(first.ring.ctx.p, d * e, rows, BaseRing.DVR, [(first.ring.label, e)] * d)

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        zeros_right = [0] * other.ngens
        zeros_left = [0] * self.ngens
        rows = [list(r) + zeros_right for r in self.relations] + [zeros_left + list(r) for r in other.relations]
        return PresentedModule(self.p, self.ngens + other.ngens, rows, self.base, self.blocks + other.blocks)

    def snf(self) -> SNFResult:
        if self._snf is None:
            self._snf = snf(self.relations, self.ngens, self.p)
        return self._snf

    @property
    def rank(self) -> int:
        return self.snf().free_rank

    def order_exponent(self) -> Optional[int]:
        """ord_p of the order, or None for an infinite module."""
        result = self.snf()
        return result.torsion_exponent if result.is_finite else None


def module_snf(m: PresentedModule) -> SNFResult:
    """Pivot valuations, free rank and torsion order of a presented module."""
    return m.snf()


# -- the model of G(L_n) ----------------------------------------------------------


def _omega_pm(p: int, n: int, plus: bool) -> Tuple[int, ...]:
    return cyclo_ints(p, n, CycloKind.OMEGA_PLUS if plus else CycloKind.OMEGA_MINUS)


def _omega_tilde_pm(p: int, n: int, plus: bool) -> Tuple[int, ...]:
    return cyclo_ints(p, n, CycloKind.OMEGA_TILDE_PLUS if plus else CycloKind.OMEGA_TILDE_MINUS)


def _model_blocks(p: int, n: int) -> Tuple[List[Tuple[int, ...]], List[Tuple[int, ...]]]:
    """Moduli of the summands d_n Λ_n ⊕ d_(n-1) Λ_(n-1) and the Γ-fixed generator of each."""
    if n == 0:
        return [_omega_pm(p, 0, True)], [_omega_tilde_pm(p, 0, True)]
    plus = n % 2 == 0
    return (
        [_omega_pm(p, n, plus), _omega_pm(p, n - 1, not plus)],
        [_omega_tilde_pm(p, n, plus), _omega_tilde_pm(p, n - 1, not plus)],
    )


def model_E_Ln(p: int, n: int) -> PresentedModule:
    """
    (Λ/ω_n^ε ⊕ Λ/ω_(n-1)^(-ε)) modulo the diagonal copy of G(Q_p), ε = (-1)^n.

    In Λ/ω_n^ε the Γ-invariants are spanned by ω̃_n^ε, the image of G(Q_p).
    """
    if n < 1:
        raise InputError(f"model needs n >= 1, got {n}")
    moduli, fixed = _model_blocks(p, n)
    sign = "+" if n % 2 == 0 else "-"
    other = "-" if sign == "+" else "+"
    module = PresentedModule.lambda_quotients(
        p,
        moduli,
        names=[f"d_{n} Lambda/omega_{n}^{sign}", f"d_{n - 1} Lambda/omega_{n - 1}^{other}"],
    )
    module.relations.append(_fixed_row(moduli, fixed))
    logger.debug("model of G(L_%d): %d generators", n, module.ngens)
    return module


def _fixed_row(moduli: Sequence[IntPoly], fixed: Sequence[IntPoly]) -> List[Entry]:
    """The diagonal Z_p-relation (ω̃, ω̃') in the Z_p-coordinates of the summands."""
    row: List[Entry] = []
    for g, w in zip(moduli, fixed):
        reduced = intpoly.rem_monic(w, g)
        row += [reduced[i] if i < len(reduced) else 0 for i in range(intpoly.degree(g))]
    return row


class TraceData(BaseModel):
    """Kernel and cokernel of the trace G(L_n) -> G(L_(n-1))."""

    p: int
    n: int
    kernel_rank: int
    cokernel_p_rank: int
    cokernel_exponent: int
    cokernel_pivots: List[int]
    q_n: int
    matches_q: bool


def _basis_images(
    source: Sequence[int],
    target: Sequence[int],
    scale: int,
) -> List[List[int]]:
    """Coordinates of scale·X^j (j < deg source) reduced modulo the target modulus."""
    rows = []
    width = intpoly.degree(target)
    for j in range(intpoly.degree(source)):
        reduced = intpoly.rem_monic([0] * j + [scale], target)
        rows.append([reduced[i] if i < len(reduced) else 0 for i in range(width)])
    return rows


def trace_kernel_cokernel(p: int, n: int) -> TraceData:
    """
    The trace on the explicit models: (d_n, 0) ↦ (0, -d_(n-2)) and
    (0, d_(n-1)) ↦ (p·d_(n-1), 0); for n = 1 the target is G(Q_p) = Z_p d_0,
    with d_1 ↦ d_0 (up to a unit) and d_0 ↦ p·d_0.

    The cokernel is the target generators modulo the image and the target's
    diagonal relation; the kernel rank follows from the ranks.
    """
    if n < 1:
        raise InputError(f"trace needs n >= 1, got {n}")
    src_moduli, _ = _model_blocks(p, n)
    tgt_moduli, tgt_fixed = _model_blocks(p, n - 1)
    widths = [intpoly.degree(g) for g in tgt_moduli]
    ngens = sum(widths)
    offsets = [sum(widths[:i]) for i in range(len(widths))]

    def place(block: int, vec: List[int]) -> List[int]:
        row = [0] * ngens
        for i, c in enumerate(vec):
            row[offsets[block] + i] = c
        return row

    rows: List[List[int]] = []
    if n == 1:
        rows += [place(0, v) for v in _basis_images(src_moduli[0], tgt_moduli[0], 1)]
        rows += [place(0, v) for v in _basis_images(src_moduli[1], tgt_moduli[0], p)]
    else:
        rows += [place(1, v) for v in _basis_images(src_moduli[0], tgt_moduli[1], -1)]
        rows += [place(0, v) for v in _basis_images(src_moduli[1], tgt_moduli[0], p)]
        rows.append([int(c) for c in _fixed_row(tgt_moduli, tgt_fixed)])
    result = snf(rows, ngens, p)
    source_rank = p**n
    target_rank = p ** (n - 1) if n >= 2 else 1
    image_rank = target_rank - result.free_rank
    q = q_value(p, n)
    if result.p_rank != q:
        logger.warning("trace cokernel at n=%d has p-rank %d, q_n = %d", n, result.p_rank, q)
    return TraceData(
        p=p,
        n=n,
        kernel_rank=source_rank - image_rank,
        cokernel_p_rank=result.p_rank,
        cokernel_exponent=result.torsion_exponent,
        cokernel_pivots=[v for v in result.pivots if v > 0],
        q_n=q,
        matches_q=result.p_rank == q,
    )


# -- Sha structure ------------------------------------------------------------------


class ShaStructure(BaseModel):
    """ord_p of (Λ/(ω̃_n^+, ω̃_n^-))^d with its cross-checks."""

    p: int
    n: int
    d: int
    ordp: int
    descriptor: str
    per_level: List[int]
    snf_exponent: int
    resultant_exponent: int
    consistent: bool


def sha_module(p: int, n: int, d: int = 1) -> PresentedModule:
    """(Λ/(ω̃_n^+, ω̃_n^-))^d presented over the lower-degree modulus."""
    plus, minus = _omega_tilde_pm(p, n, True), _omega_tilde_pm(p, n, False)
    modulus, other = (minus, plus) if len(minus) <= len(plus) else (plus, minus)
    single = PresentedModule.lambda_quotients(p, [modulus], [[other]], names=["Lambda/(w+, w-)"])
    module = single
    for _ in range(d - 1):
        module = module.direct_sum(single)
    return module


def sha_structure_size(p: int, n: int, d: int = 1) -> ShaStructure:
    """ord_p # = d·Σ_{k≤n} q_k, checked against the SNF and resultant oracles."""
    if d < 1 or n < 0:
        raise InputError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    ordp = d * q_sum(p, n)
    module = sha_module(p, n, d)
    snf_exp = module.order_exponent()
    plus, minus = _omega_tilde_pm(p, n, True), _omega_tilde_pm(p, n, False)
    res_exp = d * quotient_order_resultant(plus, minus, p)
    consistent = snf_exp == ordp == res_exp
    if not consistent:
        logger.warning("Sha size at n=%d: formula %d, SNF %s, resultant %d", n, ordp, snf_exp, res_exp)
    return ShaStructure(
        p=p,
        n=n,
        d=d,
        ordp=ordp,
        descriptor=f"(Lambda/(omega_tilde_{n}^+, omega_tilde_{n}^-))^{d}",
        per_level=[d * q_value(p, k) for k in range(n + 1)],
        snf_exponent=-1 if snf_exp is None else snf_exp,
        resultant_exponent=res_exp,
        consistent=consistent,
    )
