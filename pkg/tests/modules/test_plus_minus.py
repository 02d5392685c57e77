"""
Tests for plus/minus L-data, determinants over Λ and quotients at ζ_n - 1.
"""

import logging

import pytest

from ssiwasawa.arith.padic import PadicContext
from ssiwasawa.arith.series import IwasawaSeries
from ssiwasawa.modules.plus_minus import (
    PlusMinusLData,
    plus_minus_L,
    quotient_finiteness_at_zeta,
    series_determinant,
)
from ssiwasawa.utils.errors import ContextMismatch, InputError, ZeroToPrecision


def _data(entries, tY=(1,), p=3, N=8):
    return PlusMinusLData.from_json({"d": len(entries), "entries": entries, "tY": list(tY), "p": p, "N": N})


def test_single_entry_invariants():
    result = plus_minus_L(_data([[[0, 3, 0, 1]]]))
    assert (result.mu, result.lam) == (0, 3)
    assert not result.normalized


def test_diagonal_matrix_invariants():
    """Test that diag(1, p + X) gives μ = 0 and λ = 1."""
    result = plus_minus_L(_data([[[1], [0]], [[0], [3, 1]]]))
    assert (result.mu, result.lam) == (0, 1)


def test_t_y_multiplies_the_determinant():
    result = plus_minus_L(_data([[[1]]], tY=[3]))
    assert (result.mu, result.lam) == (1, 0)
    assert result.normalized


def test_normalization_deviation_is_logged(caplog):
    with caplog.at_level(logging.WARNING):
        plus_minus_L(_data([[[3, 1]]]))
    assert "not normalized" in caplog.text


def test_zero_l_is_reported():
    with pytest.raises(ZeroToPrecision):
        plus_minus_L(_data([[[0]]]))


def test_elimination_determinant(ctx):
    """Test det of a lower bidiagonal 5×5 matrix with (3 + X) on the diagonal."""
    d = 5
    diag = IwasawaSeries.from_ints(ctx, [3, 1])
    one = IwasawaSeries.from_ints(ctx, [1])
    zero = IwasawaSeries.from_ints(ctx, [0])
    matrix = [[diag if i == j else one if i == j + 1 else zero for j in range(d)] for i in range(d)]
    det = series_determinant(matrix)
    assert det.mu_lambda() == (0, 5)
    assert det[0] == 3**5


def test_payload_errors(ctx):
    with pytest.raises(InputError):
        PlusMinusLData.from_json({"d": 2, "entries": [[[1], [0]]], "tY": [1], "p": 3})
    with pytest.raises(InputError):
        PlusMinusLData.from_json({"d": 1, "entries": [[[1]]], "tY": [1]})
    with pytest.raises(InputError):
        PlusMinusLData.from_json({"d": 1, "entries": [[[1]]], "tY": [1], "p": 5}, ctx)
    with pytest.raises(InputError):
        PlusMinusLData.from_json({"d": 0, "entries": [], "tY": [1], "p": 3})
    with pytest.raises(InputError):
        _data([[[]]])


def test_mixed_contexts_are_rejected(ctx):
    other = PadicContext(p=5, N=6)
    with pytest.raises(ContextMismatch):
        PlusMinusLData([[IwasawaSeries.from_ints(other, [1])]], IwasawaSeries.from_ints(ctx, [1]))


def test_quotient_at_zeta_matches_invariants():
    """Test O^2/diag(p, 1) at ζ_2 - 1 has ord_3 size p^2 - p."""
    report = quotient_finiteness_at_zeta(_data([[[3], [0]], [[0], [1]]]), 2)
    assert report.finite
    assert report.ramification == 6
    assert report.ordp_size == 6
    assert (report.mu, report.lam) == (1, 0)
    assert report.predicted == 6
    assert report.agrees


def test_quotient_at_zeta_edge_cases():
    report = quotient_finiteness_at_zeta(_data([[[0, 1]]]), 1)
    assert report.finite
    assert report.ordp_size == 1
    infinite = quotient_finiteness_at_zeta(_data([[[0]]]), 2)
    assert not infinite.finite
    assert infinite.predicted is None
    with pytest.raises(InputError):
        quotient_finiteness_at_zeta(_data([[[1]]]), 0)
