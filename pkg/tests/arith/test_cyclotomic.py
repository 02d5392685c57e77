"""
Tests for the cyclotomic family, q-values and evaluation at ζ_n - 1.
"""

import random
from fractions import Fraction

import pytest

from ssiwasawa.arith import intpoly
from ssiwasawa.arith.cyclotomic import (
    CycloKind,
    cyclo_degree,
    cyclo_family,
    cyclo_ints,
    degree_table_rows,
    eval_at_zeta,
    ordp_fractional,
    q_sum,
    q_table_rows,
    q_value,
    quotient_order_resultant,
    stabilization_level,
)
from ssiwasawa.arith.series import IwasawaSeries
from ssiwasawa.utils.errors import InputError, NotFinite


def test_xi_one():
    """Test that ξ_1 = ((1+X)^3 - 1)/X at p = 3."""
    assert cyclo_ints(3, 1, CycloKind.XI) == (3, 3, 1)
    assert cyclo_ints(3, 0, CycloKind.XI) == (0, 1)
    assert cyclo_ints(3, 1, CycloKind.PHI) == (1, 1, 1)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_family_degrees(p):
    for n in range(1, 4):
        assert cyclo_degree(p, n, CycloKind.XI) == p**n - p ** (n - 1)
        assert cyclo_degree(p, n, CycloKind.OMEGA) == p**n


def test_omega_factors_into_xis():
    """Test that ω_n = X·ω̃_n^+·ω̃_n^-."""
    p = 3
    for n in range(1, 4):
        plus = cyclo_ints(p, n, CycloKind.OMEGA_TILDE_PLUS)
        minus = cyclo_ints(p, n, CycloKind.OMEGA_TILDE_MINUS)
        assert intpoly.mul([0, 1], intpoly.mul(plus, minus)) == list(cyclo_ints(p, n, CycloKind.OMEGA))


def test_omega_plus_degree_at_even_level():
    assert cyclo_degree(3, 2, CycloKind.OMEGA_PLUS) == 9 - 3 + 1
    assert cyclo_degree(3, 2, CycloKind.OMEGA_MINUS) == 3


def test_q_values():
    """Test q_n at p = 3 against the hand-computed values."""
    assert [q_value(3, n) for n in range(6)] == [0, 0, 2, 6, 20, 60]
    assert q_sum(3, 2) == 2
    assert q_sum(3, 3) == 8
    assert q_sum(3, 4) == 28
    with pytest.raises(InputError):
        q_value(3, -1)


def test_q_values_telescope():
    for p in (3, 5):
        for n in range(2, 7):
            assert q_value(p, n) + q_value(p, n - 1) == p ** (n - 1) - 1


def test_stabilization_level():
    assert stabilization_level(3, 0) == 1
    assert stabilization_level(3, 2) == 2
    assert stabilization_level(3, 6) == 3
    with pytest.raises(InputError):
        stabilization_level(3, -1)


def test_resultant_oracle_for_sha_quotients():
    """Test ord_3 #Λ/(ω̃_n^+, ω̃_n^-) = Σ_{k≤n} q_k for n = 2, 3."""
    for n, expected in [(2, 2), (3, 8)]:
        plus = cyclo_ints(3, n, CycloKind.OMEGA_TILDE_PLUS)
        minus = cyclo_ints(3, n, CycloKind.OMEGA_TILDE_MINUS)
        assert quotient_order_resultant(plus, minus, 3) == expected


def test_resultant_of_unit_ideal():
    assert quotient_order_resultant([1], cyclo_ints(3, 2, CycloKind.XI), 3) == 0


def test_resultant_with_common_factor():
    with pytest.raises(NotFinite):
        quotient_order_resultant(cyclo_ints(3, 1, CycloKind.XI), cyclo_ints(3, 1, CycloKind.OMEGA), 3)


def test_eval_at_zeta(ctx):
    """Test ord_p of a few values at ζ_n - 1."""
    X = IwasawaSeries.from_ints(ctx, [0, 1])
    assert ordp_fractional(eval_at_zeta(X, 1)) == Fraction(1, 2)
    assert ordp_fractional(eval_at_zeta(X, 2)) == Fraction(1, 6)
    three = IwasawaSeries.from_ints(ctx, [3])
    assert ordp_fractional(eval_at_zeta(three, 2)) == 1
    g = IwasawaSeries.from_ints(ctx, [0, 3, 0, 1])
    assert ordp_fractional(eval_at_zeta(g, 2)) == Fraction(1, 2)


def test_xi_vanishes_at_its_own_level(ctx):
    assert eval_at_zeta(cyclo_family(ctx, 2, CycloKind.XI), 2).is_exact_zero


def test_evaluation_law_on_random_polynomials(ctx):
    """Test ord_p g(ζ_n - 1) = μ + λ/(p^n - p^(n-1)) past the stabilization level."""
    rng = random.Random(7)
    for _ in range(20):
        lam = rng.randint(0, 5)
        mu = rng.randint(0, 1)
        coeffs = [3 ** (mu + 1) * rng.randint(-4, 4) for _ in range(lam)]
        coeffs.append(3**mu * rng.choice([1, 2, 4, 5]))
        coeffs += [rng.randint(-9, 9) * 3**mu for _ in range(2)]
        g = IwasawaSeries.from_ints(ctx, coeffs)
        assert g.mu_lambda() == (mu, lam)
        for n in range(stabilization_level(3, lam), 3):
            e = 3**n - 3 ** (n - 1)
            assert ordp_fractional(eval_at_zeta(g, n)) == mu + Fraction(lam, e)


def test_tables():
    rows = q_table_rows(3, 5)
    assert [r["q_n"] for r in rows] == [0, 0, 2, 6, 20, 60]
    assert rows[4]["sum_q"] == 28
    assert rows[2]["deg_omega_tilde_plus"] == 6
    assert rows[2]["deg_omega_tilde_minus"] == 2
    degrees = degree_table_rows(3, 2)
    assert degrees[2]["deg_xi"] == 6
    assert degrees[2]["deg_omega"] == 9
