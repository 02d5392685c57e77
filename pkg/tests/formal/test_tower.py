"""
Tests for division-point towers, traces and the maximal-ideal span check.
"""

import pytest

from ssiwasawa.arith.cyclotomic import CycloKind, cyclo_ints
from ssiwasawa.formal.lubin_tate import good_frobenius_lift
from ssiwasawa.formal.tower import (
    build_tower,
    extension_degree,
    field_trace,
    in_level,
    span_check_maximal_ideal,
    tower_modulus,
)
from ssiwasawa.utils.errors import CapExceeded, InputError


@pytest.fixture
def lift(ctx):
    """The multiplicative lift (1+X)^3 - 1."""
    return good_frobenius_lift(ctx, 3)


def test_multiplicative_tower_moduli_are_cyclotomic(lift):
    for n in (1, 2, 3):
        assert tower_modulus(lift, n) == cyclo_ints(3, n, CycloKind.XI)


def test_extension_degrees():
    assert extension_degree(3, 2, 0) == 6
    assert extension_degree(3, 3, 1) == 9
    assert extension_degree(3, 1, 1) == 1


def test_division_points(lift):
    tower = build_tower(lift, 2)
    assert tower.degree == 6
    assert tower.division_point(0).value.is_exact_zero
    assert tower.division_point(2).value == tower.ring.generator()
    with pytest.raises(InputError):
        tower.division_point(3)
    with pytest.raises(InputError):
        build_tower(lift, 0)


def test_levels_and_traces(lift):
    """Test that e_1 lies in k_1, e_2 does not, and both traces equal -p."""
    tower = build_tower(lift, 2)
    e1, e2 = tower.division_point(1), tower.division_point(2)
    assert in_level(e1, 1)
    assert not in_level(e2, 1)
    assert field_trace(e2, 1) == -3
    assert field_trace(e1, 0) == -3


def test_trace_for_a_general_uniformizer(ctx):
    """Test Tr e_1 = -p when Galois conjugates come from [u]_f series."""
    tower = build_tower(good_frobenius_lift(ctx, 12), 1)
    assert tower.modulus == (12, 3, 1)
    assert field_trace(tower.division_point(1), 0) == -3


@pytest.mark.parametrize("n", [1, 2])
def test_span_check(lift, n):
    report = span_check_maximal_ideal(lift, n, 6)
    assert report.passed
    assert report.missing == []
    assert report.trace_is_minus_p
    assert report.lattice_rank == extension_degree(3, n, 0)


def test_span_check_budget_and_cap(lift):
    report = span_check_maximal_ideal(lift, 1, 1)
    assert report.budget_limited
    assert not report.passed
    with pytest.raises(CapExceeded):
        span_check_maximal_ideal(lift, 2, 6, degree_cap=5)
