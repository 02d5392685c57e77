"""
Tests for good Frobenius lifts and Lubin–Tate formal groups.
"""

import math

import pytest

from ssiwasawa.arith import intpoly
from ssiwasawa.arith.padic import PadicContext
from ssiwasawa.formal.lubin_tate import division_matrix_det, good_frobenius_lift, lubin_tate_law, mult_by
from ssiwasawa.utils.errors import BadUniformizer


@pytest.mark.parametrize("p", [3, 5, 7])
def test_good_lift_identities(p):
    """Test that both uniformizers give good lifts and π = p gives (1+X)^p - 1."""
    ctx = PadicContext(p=p, N=6)
    for pi in (p, p * (1 + p)):
        f = good_frobenius_lift(ctx, pi)
        assert f.good_lift_checks() == (True, True)
        assert f.poly[1] == pi
    assert list(good_frobenius_lift(ctx, p).poly) == intpoly.binomial_shift(p)
    assert good_frobenius_lift(ctx, p).is_multiplicative


@pytest.mark.parametrize("pi", [0, 9, 6, 1])
def test_bad_uniformizers(ctx, pi):
    with pytest.raises(BadUniformizer):
        good_frobenius_lift(ctx, pi)


def test_multiplicative_law(ctx):
    """Test that π = p gives the multiplicative law X + Y + XY exactly."""
    law = lubin_tate_law(good_frobenius_lift(ctx, 3), 8)
    assert law.verified
    assert law.law.residues(2) == {(1, 0): 1, (0, 1): 1, (1, 1): 1}
    assert law.mult_by(2).residues(2)[:4] == [0, 2, 1, 0]


@pytest.mark.parametrize("p", [3, 5])
def test_law_is_multiplicative_mod_p_for_a_general_uniformizer(p):
    """Test F_f ≡ X+Y+XY and [a]_f ≡ (1+X)^a - 1 modulo p for π = p(1+p)."""
    ctx = PadicContext(p=p, N=4)
    D = 10
    f = good_frobenius_lift(ctx, p * (1 + p))
    law = lubin_tate_law(f, D)
    assert law.verified
    assert law.law.residues(1) == {(1, 0): 1, (0, 1): 1, (1, 1): 1}
    for a in range(1, p):
        assert mult_by(a, f, D, law).residues(1) == [math.comb(a, i) % p for i in range(D + 1)]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_division_matrix_determinant_is_a_unit(p):
    ctx = PadicContext(p=p, N=6)
    for pi in (p, p * (1 + p)):
        assert division_matrix_det(good_frobenius_lift(ctx, pi)).is_unit()
