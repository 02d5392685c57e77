"""
Tests for presented modules: Λ-quotients, the model of G(L_n), trace data and Sha sizes.
"""

import pytest

from ssiwasawa.arith.cyclotomic import CycloKind, cyclo_family, cyclo_ints, eval_at_zeta
from ssiwasawa.arith.series import IwasawaSeries
from ssiwasawa.modules.presented import (
    BaseRing,
    PresentedModule,
    model_E_Ln,
    module_snf,
    sha_module,
    sha_structure_size,
    trace_kernel_cokernel,
)
from ssiwasawa.utils.errors import InputError


def test_lambda_quotient_ranks():
    """Test that Λ/(g) is free of rank deg g over Z_p."""
    module = PresentedModule.lambda_quotients(3, [cyclo_ints(3, 2, CycloKind.XI)])
    assert module.base is BaseRing.LAMBDA_QUOTIENT
    assert module.rank == 6


def test_lambda_quotient_with_relation():
    """Test that Λ/(p + X, ξ_1) has order p."""
    module = PresentedModule.lambda_quotients(3, [[3, 1]], [[cyclo_ints(3, 1, CycloKind.XI)]])
    assert module.order_exponent() == 1


def test_lambda_quotient_rejects_non_monic_moduli():
    with pytest.raises(InputError):
        PresentedModule.lambda_quotients(3, [[3, 2]])
    with pytest.raises(InputError):
        PresentedModule.lambda_quotients(3, [[3, 1]], [[[1], [1]]])


def test_over_zp_and_direct_sum():
    a = PresentedModule.over_zp(3, 1, [[9]])
    b = PresentedModule.over_zp(3, 2, [[3, 0]])
    total = a.direct_sum(b)
    assert total.ngens == 3
    assert module_snf(total).pivots == (1, 2)
    assert total.rank == 1
    with pytest.raises(InputError):
        PresentedModule.over_zp(3, 2, [[1]])


def test_dvr_quotient_at_zeta(ctx):
    """Test O^2/diag(p, 1) at ζ_2 - 1 and O/(ζ_1 - 1)."""
    three = IwasawaSeries.from_ints(ctx, [3])
    one = IwasawaSeries.from_ints(ctx, [1])
    zero = IwasawaSeries.from_ints(ctx, [0])
    matrix = [[eval_at_zeta(s, 2) for s in row] for row in [[three, zero], [zero, one]]]
    module = PresentedModule.from_ring_matrix(matrix)
    assert module.base is BaseRing.DVR
    assert module.order_exponent() == 3**2 - 3
    X = cyclo_family(ctx, 0, CycloKind.XI)
    assert PresentedModule.from_ring_matrix([[eval_at_zeta(X, 1)]]).order_exponent() == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_model_rank(n):
    assert model_E_Ln(3, n).rank == 3**n
    with pytest.raises(InputError):
        model_E_Ln(3, 0)


def test_trace_kernel_and_cokernel():
    """Test the trace G(L_2) -> G(L_1) at p = 3."""
    data = trace_kernel_cokernel(3, 2)
    assert data.kernel_rank == 6
    assert data.cokernel_p_rank == 2
    assert data.q_n == 2
    assert data.matches_q


@pytest.mark.parametrize("n", [1, 3, 4])
def test_trace_kernel_rank(n):
    assert trace_kernel_cokernel(3, n).kernel_rank == 3**n - 3 ** (n - 1)


def test_sha_sizes():
    """Test ord_3 of (Λ/(ω̃_n^+, ω̃_n^-))^d against both oracles."""
    small = sha_structure_size(3, 2)
    assert small.ordp == 2
    assert small.consistent
    large = sha_structure_size(3, 3, 2)
    assert large.ordp == 16
    assert large.snf_exponent == 16
    assert large.resultant_exponent == 16
    assert sha_structure_size(3, 4).per_level == [0, 0, 2, 6, 20]
    assert sha_module(3, 2, 2).order_exponent() == 4
    with pytest.raises(InputError):
        sha_structure_size(3, 2, 0)
