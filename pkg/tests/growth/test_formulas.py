"""
Tests for corank growth, Sha increments and stable quotient sizes.
"""

import pytest
from pydantic import ValidationError

from ssiwasawa.arith.cyclotomic import CycloKind, cyclo_ints
from ssiwasawa.arith.series import IwasawaSeries
from ssiwasawa.growth.formulas import (
    GrowthParams,
    corank_growth,
    growth_rows,
    sha_increment,
    stable_quotient_size,
    stabilization_thresholds,
)
from ssiwasawa.modules.presented import sha_structure_size
from ssiwasawa.settings.config import IncrementVariant
from ssiwasawa.utils.errors import InputError, NotStabilized


def test_corank_main_term():
    """Test that the rank of the even-sign module carries q_n at even levels."""
    assert corank_growth(GrowthParams(r_plus=1), 4) == 20
    assert corank_growth(GrowthParams(r_minus=1), 4) == 6
    assert corank_growth(GrowthParams(r_minus=1), 3) == 6
    with pytest.raises(InputError):
        corank_growth(GrowthParams(), 0)


@pytest.mark.parametrize("variant", list(IncrementVariant))
def test_sha_increment_with_mu(variant):
    params = GrowthParams(mu_plus=1, d=1)
    assert sha_increment(params, 2, variant) == 8


def test_increment_displays_differ_with_lambda():
    params = GrowthParams(lambda_plus=2, d=1)
    assert sha_increment(params, 2, IncrementVariant.AS_STATED) == 2 + 2 * 2
    assert sha_increment(params, 2, IncrementVariant.PROOF_DERIVED) == 2 + 2


def test_proof_derived_increment_ignores_s0():
    values = {
        sha_increment(GrowthParams(lambda_plus=3, s=1, s0=s0, d=1), 2, IncrementVariant.PROOF_DERIVED)
        for s0 in (0, 1, 4)
    }
    assert values == {2 + 3 - 1}


def test_increment_needs_a_variant():
    with pytest.raises(InputError):
        sha_increment(GrowthParams(), 2)
    assert sha_increment(GrowthParams(d=1, variant=IncrementVariant.AS_STATED), 3) == 6


def test_thresholds():
    params = GrowthParams(lambda_plus=2, lambda_minus=6)
    assert stabilization_thresholds(params) == {"plus": 2, "minus": 3}


def test_rows_accumulate_to_the_sha_size():
    """Test that with only d nonzero the running totals match the Sha module size."""
    rows = growth_rows(GrowthParams(d=2, n_max=4))
    assert [row["n"] for row in rows] == [1, 2, 3, 4]
    assert [row["sign"] for row in rows] == ["-", "+", "-", "+"]
    for row in rows:
        expected = sha_structure_size(3, int(row["n"]), 2).ordp
        assert row["cumulative_as_stated"] == expected
        assert row["cumulative_proof_derived"] == expected
    assert rows[-1]["cumulative_as_stated"] == 56


def test_params_validation():
    with pytest.raises(ValidationError):
        GrowthParams(n_min=3, n_max=2)
    with pytest.raises(ValidationError):
        GrowthParams(p=9)
    with pytest.raises(ValidationError):
        GrowthParams(r_plus=-1)


def test_stable_quotient_coprime_branch(ctx):
    """Test Λ/(p + X) and Λ/p."""
    linear = stable_quotient_size([3, 1], 1, 1, 3)
    assert linear.branch == "coprime"
    assert linear.size == 1
    assert linear.agrees
    assert stable_quotient_size(IwasawaSeries.from_ints(ctx, [3]), 1, 2).size == 3**2 - 3


def test_stable_quotient_cyclotomic_branch():
    """Test Λ/ξ_1^e above level 1."""
    xi_1 = list(cyclo_ints(3, 1, CycloKind.XI))
    simple = stable_quotient_size(xi_1, 1, 2, 3)
    assert simple.branch == "xi_1"
    assert simple.size == 0
    assert simple.agrees
    squared = stable_quotient_size(xi_1, 2, 2, 3)
    assert squared.size == 2
    assert squared.resultant_oracle == 2
    assert squared.agrees


def test_stable_quotient_errors():
    xi_1 = list(cyclo_ints(3, 1, CycloKind.XI))
    with pytest.raises(NotStabilized):
        stable_quotient_size(xi_1, 1, 1, 3)
    with pytest.raises(NotStabilized):
        stable_quotient_size([3, 0, 0, 1], 1, 1, 3)
    with pytest.raises(InputError):
        stable_quotient_size([0, 3, 1], 1, 2, 3)
    with pytest.raises(InputError):
        stable_quotient_size([3, 1], 1, 2)
    with pytest.raises(InputError):
        stable_quotient_size([3, 1], 0, 2, 3)
    with pytest.raises(InputError):
        stable_quotient_size([0], 1, 2, 3)
