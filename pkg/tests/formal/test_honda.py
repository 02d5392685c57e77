"""
Tests for the Honda formal group, the point epsilon and the trace relations.
"""

from fractions import Fraction

import pytest

from ssiwasawa.arith.padic import PadicContext, PadicScalar
from ssiwasawa.formal.honda import (
    c_point,
    d_pm_point,
    epsilon_point,
    honda_logarithm,
    pm_membership,
    point_level,
    verify_c_trace,
    verify_c_trace_base,
    verify_d_trace_base,
)
from ssiwasawa.formal.lubin_tate import good_frobenius_lift
from ssiwasawa.settings.config import EZeroConvention
from ssiwasawa.utils.errors import InputError


@pytest.fixture(scope="module")
def honda():
    """The Honda group over Z_3 for π = 3, truncated at degree 15."""
    f = good_frobenius_lift(PadicContext(p=3, N=4), 3)
    return honda_logarithm(f, 15)


def test_integrality_and_homomorphism(honda):
    assert honda.integral
    assert honda.homomorphism_digits >= 4


def test_height_two(honda):
    assert honda.height_two()


def test_epsilon(honda):
    """Test v(ε) = 1 and ℓ(ε) = p/(p+1)."""
    eps = epsilon_point(honda)
    assert eps.coordinate.valuation == 1
    assert eps.ordp() == 1
    target = PadicScalar.from_fraction(honda.ctx, Fraction(3, 4))
    residual = honda.log.evaluate(eps.coordinate, 13) - target
    assert residual.is_zero()
    assert residual.precision >= 4


def test_point_levels():
    assert point_level(2, EZeroConvention.ZERO) == 2
    assert point_level(2, EZeroConvention.PRIMITIVE) == 3


def test_c_point_needs_a_tall_enough_tower(honda):
    with pytest.raises(InputError):
        c_point(honda, honda.tower(1), 2)


def test_c_trace_relation(honda):
    """Test Tr c_2 = -c_0 in a tower of level 2."""
    check = verify_c_trace(honda, honda.tower(2), 2)
    assert check.holds
    assert check.digits is None or check.digits >= 3


def test_c_trace_base(honda):
    """Test Tr c_1 = u·c_0 with u a unit."""
    check = verify_c_trace_base(honda, honda.tower(2))
    assert check.holds
    assert check.unit is not None
    assert not check.informational


def test_d_trace_base(honda):
    check = verify_d_trace_base(honda, honda.tower(2))
    assert check.holds


def test_signed_d_points(honda):
    tower = honda.tower(2)
    d1 = d_pm_point(honda, tower, 1, "-")
    assert d1.label == "d_1"
    assert d_pm_point(honda, tower, 1, "+").label == "d_0"
    assert pm_membership(d1, "-")
    with pytest.raises(InputError):
        d_pm_point(honda, tower, 1, "x")
    with pytest.raises(InputError):
        pm_membership(d1, "x")
