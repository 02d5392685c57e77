"""
Smith normal form over Z_p, echelon forms of Z_p-lattices, and determinants over Q_p.

A relation matrix has one row per relation and one column per generator;
the module it presents is Z_p^g / rowspace.  Pivots are chosen by minimal
p-adic valuation (ties broken by position, so the pivot sequence is
deterministic), and elimination is fraction-free and unimodular:

    row_k <- u * row_k - (b / p^v) * row_pivot,   pivot = u * p^v, u a unit.

After a column is cleared, the pivot row and column are dropped; the
column operations that would clear the pivot row only rescale the
remaining columns by units, which does not change invariant factors.

Exact integer matrices are eliminated exactly (prime-to-p row content is
divided out as it appears).  Anything else is eliminated on residues modulo
p^M, M being the least precision among the entries; a block that is zero
modulo p^M while generators remain cannot be certified.
"""

from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

from ssiwasawa.arith.padic import INF, PadicContext, PadicScalar, int_valuation
from ssiwasawa.utils.errors import InputError, PrecisionExhausted
from ssiwasawa.utils.logging import get_logger

logger = get_logger("ssiwasawa.snf")

Entry = Union[PadicScalar, int]


@dataclass(frozen=True)
class SNFResult:
    """Invariant-factor data of a presented Z_p-module."""

    pivots: Tuple[int, ...]
    ngens: int
    free_rank: int
    certified_digits: Union[int, float] = INF

    @property
    def torsion_exponent(self) -> int:
        """ord_p of the order of the torsion submodule."""
        return sum(self.pivots)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def p_rank(self) -> int:
        """Number of nontrivial cyclic torsion factors."""
        return sum(1 for v in self.pivots if v > 0)


def _integral_ints(rows: Sequence[Sequence[Entry]], p: int) -> Tuple[List[List[int]], Union[int, float]]:
    """Lift entries to integers; returns the rows and the common precision (INF if exact)."""
    precision: Union[int, float] = INF
    for row in rows:
        for x in row:
            if isinstance(x, PadicScalar):
                if x.unit and x.valuation < 0:
                    raise InputError(f"entry {x!r} is not in Z_{p}")
                precision = min(precision, x.precision)
    out = [[x if isinstance(x, int) else x.lift() for x in row] for row in rows]
    return out, precision


def snf(
    rows: Sequence[Sequence[Entry]],
    ngens: Optional[int] = None,
    p: Optional[int] = None,
) -> SNFResult:
    """
    Invariant factors of Z_p^ngens / (row span).

    Args:
        rows: Relation matrix, entries PadicScalar or int
        ngens: Number of generators (defaults to the row length)
        p: The prime, required when every entry is a plain int

    Raises:
        PrecisionExhausted: when a pivot cannot be certified within precision
    """
    if p is None:
        p = next((x.ctx.p for row in rows for x in row if isinstance(x, PadicScalar)), None)
        if p is None:
            if not rows or not any(rows):
                return SNFResult((), ngens or 0, ngens or 0)
            raise InputError("the prime is required for an all-integer relation matrix")
    if ngens is None:
        ngens = len(rows[0]) if rows else 0
    ints, precision = _integral_ints(rows, p)
    if precision == INF:
        pivots = _eliminate_exact(ints, ngens, p)
    else:
        pivots = _eliminate_modular(ints, ngens, p, int(precision))
    pivots.sort()
    result = SNFResult(tuple(pivots), ngens, ngens - len(pivots), precision)
    logger.debug("snf: %d generators, pivots %s, free rank %d", ngens, result.pivots, result.free_rank)
    return result


def _pick_pivot(rows: List[List[int]], cols: List[int], p: int) -> Optional[Tuple[int, int, int]]:
    best: Optional[Tuple[int, int, int]] = None
    for i, row in enumerate(rows):
        for j in cols:
            x = row[j]
            if x == 0:
                continue
            v = int_valuation(x, p)
            if best is None or v < best[0]:
                best = (v, i, j)
                if v == 0:
                    return best
    return best


def _strip_content(row: List[int], p: int) -> List[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
    if g <= 1:
        return row
    while g % p == 0:
        g //= p
    return row if g == 1 else [x // g for x in row]


def _eliminate_exact(rows: List[List[int]], ngens: int, p: int) -> List[int]:
    rows = [list(r) for r in rows if any(r)]
    cols = list(range(ngens))
    pivots: List[int] = []
    while rows and cols:
        found = _pick_pivot(rows, cols, p)
        if found is None:
            break
        v, i, j = found
        pivot_row = rows.pop(i)
        a = pivot_row[j]
        u = a // p**v
        scale = p**v
        new_rows = []
        for row in rows:
            b = row[j]
            if b:
                q = b // scale
                row = [u * x - q * y for x, y in zip(row, pivot_row)]
                row = _strip_content(row, p)
            if any(row[c] for c in cols if c != j):
                new_rows.append(row)
        rows = new_rows
        cols.remove(j)
        pivots.append(v)
    return pivots


def _eliminate_modular(rows: List[List[int]], ngens: int, p: int, M: int) -> List[int]:
    modulus = p**M
    rows = [[x % modulus for x in r] for r in rows]
    rows = [r for r in rows if any(r)]
    cols = list(range(ngens))
    pivots: List[int] = []
    while rows and cols:
        found = _pick_pivot(rows, cols, p)
        if found is None:
            break
        v, i, j = found
        pivot_row = rows.pop(i)
        scale = p**v
        u_inv = pow(pivot_row[j] // scale, -1, modulus)
        new_rows = []
        for row in rows:
            b = row[j]
            if b:
                q = (b // scale) * u_inv % modulus
                row = [(x - q * y) % modulus for x, y in zip(row, pivot_row)]
            if any(row[c] for c in cols if c != j):
                new_rows.append(row)
        rows = new_rows
        cols.remove(j)
        pivots.append(v)
    if cols and len(rows) > 0:
        raise PrecisionExhausted(
            f"{len(rows)} relations vanish modulo p^{M} on {len(cols)} uncleared generators",
            {"precision": M, "generators": len(cols)},
        )
    return pivots


# -- lattices -------------------------------------------------------------------


@dataclass
class EchelonForm:
    """Row echelon basis of a Z_p-lattice; row k has its pivot in column ``pivot_cols[k]``."""

    basis: List[List[PadicScalar]]
    pivot_cols: List[int]
    ncols: int
    dependent: int = 0
    pivot_valuations: List[int] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vector: Sequence[PadicScalar]) -> bool:
        """Membership of a vector of Z_p^n in the lattice, to the tracked precision."""
        target = list(vector)
        for row, c in zip(self.basis, self.pivot_cols):
            t = target[c]
            if t.is_zero():
                continue
            a = row[c]
            if t.valuation < a.valuation:
                return False
            q = t / a
            target = [x - q * y for x, y in zip(target, row)]
        return all(x.is_zero() for x in target)


def echelon(rows: Sequence[Sequence[PadicScalar]], ncols: Optional[int] = None) -> EchelonForm:
    """
    Row echelon form over Z_p with minimal-valuation pivots.

    Raises:
        PrecisionExhausted: if an entry known only to a precision below the
            chosen pivot valuation would be divided by the pivot
    """
    work = [list(r) for r in rows]
    n = ncols if ncols is not None else (len(work[0]) if work else 0)
    basis: List[List[PadicScalar]] = []
    pivot_cols: List[int] = []
    valuations: List[int] = []
    for c in range(n):
        candidates = [(r[c].valuation, k) for k, r in enumerate(work) if not r[c].is_zero()]
        if not candidates:
            continue
        v, k = min(candidates)
        for r in work:
            x = r[c]
            if x.is_zero() and not x.is_exact_zero and x.precision < v:
                raise PrecisionExhausted(
                    f"column {c}: an entry known only modulo p^{x.precision} undercuts pivot valuation {v}",
                    {"column": c, "pivot_valuation": v},
                )
        pivot = work.pop(k)
        a = pivot[c]
        reduced = []
        for r in work:
            b = r[c]
            if not b.is_exact_zero:
                q = b / a
                r = [x - q * y for x, y in zip(r, pivot)]
            reduced.append(r)
        work = reduced
        basis.append(pivot)
        pivot_cols.append(c)
        valuations.append(int(v))
    return EchelonForm(basis, pivot_cols, n, dependent=len(work), pivot_valuations=valuations)


# -- determinants ---------------------------------------------------------------


def determinant(matrix: Sequence[Sequence[PadicScalar]], ctx: Optional[PadicContext] = None) -> PadicScalar:
    """
    Determinant over Q_p by Gaussian elimination with minimal-valuation pivots.

    A column that is zero to precision yields a zero-to-precision result whose
    precision is a certified lower bound for the valuation of the determinant.
    """
    n = len(matrix)
    if ctx is None:
        ctx = matrix[0][0].ctx
    if n == 0:
        return ctx.one()
    work = [list(r) for r in matrix]
    det = ctx.one()
    for c in range(n):
        candidates = [(work[r][c].valuation, r) for r in range(c, n) if not work[r][c].is_zero()]
        if not candidates:
            if all(work[r][c].is_exact_zero for r in range(c, n)):
                return ctx.zero()
            bound = int(det.valuation) + min(int(work[r][c].valuation_floor()) for r in range(c, n))
            for cc in range(c + 1, n):
                bound += min(int(work[r][cc].valuation_floor()) for r in range(c, n)) if not all(
                    work[r][cc].is_exact_zero for r in range(c, n)
                ) else 0
            return PadicScalar(ctx, 0, bound, bound)
        _, r = min(candidates)
        if r != c:
            work[c], work[r] = work[r], work[c]
            det = -det
        a = work[c][c]
        det = det * a
        for rr in range(c + 1, n):
            b = work[rr][c]
            if b.is_exact_zero:
                continue
            q = b / a
            work[rr] = [x - q * y for x, y in zip(work[rr], work[c])]
    return det
