"""
Tests for Smith normal forms, echelon lattices and determinants.
"""

import pytest

from ssiwasawa.arith.padic import PadicScalar
from ssiwasawa.modules.snf import determinant, echelon, snf
from ssiwasawa.utils.errors import InputError


def _scalars(ctx, rows):
    return [[PadicScalar.from_int(ctx, x) for x in row] for row in rows]


def test_diagonal_relations():
    result = snf([[3, 0], [0, 9]], 2, 3)
    assert result.pivots == (1, 2)
    assert result.torsion_exponent == 3
    assert result.p_rank == 2
    assert result.is_finite


def test_unit_pivots_and_free_part():
    result = snf([[2, 4]], 2, 3)
    assert result.pivots == (0,)
    assert result.free_rank == 1
    assert not result.is_finite


def test_row_and_column_mixing():
    """Test that Z_3^2/((3, 3), (0, 3)) has invariant factors 3, 3."""
    result = snf([[3, 3], [0, 3]], 2, 3)
    assert result.pivots == (1, 1)


def test_inexact_entries_use_their_precision(ctx):
    x = PadicScalar.from_residue(ctx, 6, precision=4)
    result = snf([[x]])
    assert result.pivots == (1,)
    assert result.certified_digits == 4


def test_prime_required_for_integer_matrices():
    with pytest.raises(InputError):
        snf([[3]])
    assert snf([], 2).free_rank == 2


def test_echelon_membership(ctx):
    lattice = echelon(_scalars(ctx, [[3, 0], [0, 1]]), 2)
    assert lattice.rank == 2
    assert lattice.contains(_scalars(ctx, [[3, 5]])[0])
    assert not lattice.contains(_scalars(ctx, [[1, 0]])[0])


def test_determinant(ctx):
    assert determinant(_scalars(ctx, [[1, 2], [3, 4]])) == -2
    assert determinant(_scalars(ctx, [[0, 0], [0, 1]])).is_exact_zero
