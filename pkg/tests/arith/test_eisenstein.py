"""
Tests for Eisenstein quotient rings and exact integer polynomials.
"""

from fractions import Fraction

import pytest

from ssiwasawa.arith import intpoly
from ssiwasawa.arith.eisenstein import EisensteinRing
from ssiwasawa.utils.errors import NotEisenstein


@pytest.fixture
def ring(ctx):
    """Z_3[T]/(T^2 + 3T + 3), the ring of integers of Q_3(ζ_3)."""
    return EisensteinRing(ctx, (3, 3, 1), level=1, label="xi_1")


def test_rejects_non_eisenstein_moduli(ctx):
    for modulus in [(1, 0, 1), (9, 0, 1), (3, 1, 1), (3, 0, 2)]:
        with pytest.raises(NotEisenstein):
            EisensteinRing(ctx, modulus)


def test_uniformizer_valuations(ring):
    """Test that T has ord_p 1/2 and p has ord_p 1."""
    T = ring.generator()
    assert T.valuation() == 1
    assert T.ordp() == Fraction(1, 2)
    assert ring.from_int(3).ordp() == 1
    assert (T * T).ordp() == 1


def test_reduction_uses_the_modulus(ring):
    assert ring.from_ints([3, 3, 1]).is_exact_zero
    assert ring.generator() ** 2 == ring.from_ints([-3, -3])


def test_trace(ring):
    assert ring.one().trace() == 2
    assert ring.generator().trace() == -3


def test_intpoly_division_and_resultant():
    q, r = intpoly.divmod_monic([1, 0, 0, 1], [1, 1])
    assert q == [1, -1, 1]
    assert r == []
    assert intpoly.exact_quotient(intpoly.binomial_shift(9), intpoly.binomial_shift(3)) == [3, 9, 18, 21, 15, 6, 1]
    with pytest.raises(ValueError):
        intpoly.exact_quotient([1, 0, 1], [1, 1])
    assert intpoly.int_resultant([3, 1], [3, 3, 1]) == 3
    assert intpoly.gcd_degree([0, 1], [0, 0, 1]) == 1


def test_mul_mod_matches_plain_product():
    a = [5, 7, 11, 13]
    b = [2, 3, 17]
    m = 3**5
    assert intpoly.mul_mod(a, b, m) == intpoly.reduce_mod(intpoly.mul(a, b), m)
    assert intpoly.mul_mod(a, b, m, cap=2) == intpoly.reduce_mod(intpoly.mul(a, b, cap=2), m)


def test_intpoly_exact_operations():
    assert intpoly.mul([1, 1], [1, 1]) == [1, 2, 1]
    assert intpoly.mul([1, 1], [1, 1], cap=1) == [1, 2]
    assert intpoly.mul([], [1, 1]) == []
    assert intpoly.compose([1, 0, 1], [0, 1, 1]) == [1, 0, 1, 2, 1]
    assert intpoly.compose([], [0, 1]) == []
    assert intpoly.derivative([5, 3, 0, 2]) == [3, 0, 6]
    assert intpoly.derivative([7]) == []
    assert intpoly.evaluate([1, 2, 3], 2) == 17
    assert intpoly.evaluate([], 5) == 0


def test_intpoly_division_keeps_the_remainder():
    q, r = intpoly.divmod_monic([1, 2, 3, 4], [1, 0, 1])
    assert q == [3, 4]
    assert r == [-2, -2]
    assert intpoly.rem_monic([0, 0, 0, 1], [1, 0, 1]) == [0, -1]
    with pytest.raises(ValueError):
        intpoly.divmod_monic([1, 1], [1, 2])


def test_compose_mod_agrees_with_exact_composition():
    f = [0, 3, 0, 1]
    g = [0, 1, 2]
    m, cap = 3**4, 5
    exact = intpoly.reduce_mod(intpoly.compose(f, g)[: cap + 1], m)
    assert intpoly.compose_mod(f, g, m, cap) == exact
