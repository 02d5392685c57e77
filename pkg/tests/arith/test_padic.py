"""
Tests for bounded-precision p-adic scalars.
"""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from ssiwasawa.arith.padic import (
    INF,
    PadicContext,
    PadicScalar,
    int_valuation,
    mul_inv,
    teichmuller,
    teichmuller_residue,
    valuation_of,
)
from ssiwasawa.utils.errors import ContextMismatch, NotAUnit, PrecisionExhausted, ZeroResidue


def test_context_rejects_non_odd_primes():
    """Test that p = 2 and composite moduli are rejected."""
    with pytest.raises(ValidationError):
        PadicContext(p=2, N=4)
    with pytest.raises(ValidationError):
        PadicContext(p=9, N=4)


def test_int_valuation():
    assert int_valuation(18, 3) == 2
    assert int_valuation(-27, 3) == 3
    assert int_valuation(5, 3) == 0
    with pytest.raises(ValueError):
        int_valuation(0, 3)


def test_exact_integers(ctx):
    """Test that integers are exact and normalized to unit * p^v."""
    x = PadicScalar.from_int(ctx, 18)
    assert x.is_exact
    assert x.valuation == 2
    assert x.unit == 2
    assert x.lift() == 18
    assert x.to_json() == {"u": "2", "v": 2}


def test_fraction_with_prime_to_p_denominator(ctx):
    """Test that 1/2 carries the context precision and multiplies back to 1."""
    half = PadicScalar.from_fraction(ctx, Fraction(1, 2))
    assert not half.is_exact
    assert half.precision == ctx.N
    assert half * 2 == 1


def test_fraction_with_p_power_denominator_is_exact(ctx):
    x = PadicScalar.from_fraction(ctx, Fraction(2, 9))
    assert x.is_exact
    assert x.valuation == -2
    with pytest.raises(NotAUnit):
        x.lift()


def test_zero_to_precision_is_not_exact_zero(ctx):
    """Test that a residue with all digits zero is distinguished from exact zero."""
    z = PadicScalar.from_residue(ctx, 0)
    assert z.is_zero()
    assert not z.is_exact_zero
    assert ctx.zero().is_exact_zero
    assert valuation_of(ctx.zero()) == INF
    with pytest.raises(PrecisionExhausted):
        valuation_of(z)
    with pytest.raises(PrecisionExhausted):
        z.inverse()


def test_precision_propagates_through_addition(ctx):
    a = PadicScalar.from_residue(ctx, 1, precision=3)
    b = PadicScalar.from_int(ctx, 1)
    s = a + b
    assert s.precision == 3
    assert s.residue(3) == 2
    with pytest.raises(PrecisionExhausted):
        s.residue(4)


def test_inverse_of_p_has_negative_valuation(ctx):
    inv = PadicScalar.from_int(ctx, 3).inverse()
    assert inv.valuation == -1
    assert inv * 3 == 1


def test_mul_inv_requires_a_unit(ctx):
    assert mul_inv(PadicScalar.from_int(ctx, 2)) * 2 == 1
    with pytest.raises(NotAUnit):
        mul_inv(PadicScalar.from_int(ctx, 3))


def test_context_mismatch(ctx, ctx5):
    with pytest.raises(ContextMismatch):
        PadicScalar.from_int(ctx, 1) + PadicScalar.from_int(ctx5, 1)


def test_scalar_payload(ctx):
    """Test parsing of unit/valuation/precision payloads and bare integers."""
    x = PadicScalar.from_json(ctx, {"u": "2", "v": 1, "prec": 4})
    assert x.valuation == 1
    assert x.precision == 4
    assert x.lift() == 6
    assert PadicScalar.from_json(ctx, "12").lift() == 12
    assert PadicScalar.from_json(ctx, {"u": "0"}).is_exact_zero


def test_teichmuller_lift(ctx):
    """Test that the Teichmüller lift of 2 mod 3 is -1."""
    t = teichmuller(PadicContext(p=3, N=5), 2)
    assert t.lift() == 3**5 - 1
    assert teichmuller_residue(3, 2, 5) == 242
    assert teichmuller_residue(5, 1, 4) == 1
    with pytest.raises(ZeroResidue):
        teichmuller(ctx, 3)


def test_teichmuller_is_a_root_of_unity(ctx5):
    t = teichmuller(ctx5, 2)
    assert t**4 == 1
    assert t.residue(1) == 2
