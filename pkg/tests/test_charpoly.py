import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skipfree import (
    Polynomial,
    continuous_charpoly_seq,
    direct_determinant,
    discrete_charpoly_seq,
    poly_add,
    poly_derivative,
    poly_eval,
    poly_mul,
    poly_scale,
    transient_block,
)
from skipfree.corpus import random_continuous_chain, random_discrete_chain

coeff_lists = st.lists(
    st.floats(-10, 10, allow_nan=False, allow_infinity=False), min_size=1, max_size=8
)


def test_polynomial_trims_exact_trailing_zeros_only():
    assert Polynomial((1.0, 2.0, 0.0, 0.0)).coeffs == (1.0, 2.0)
    assert Polynomial((0.0,)).coeffs == (0.0,)
    assert Polynomial((1.0, 1e-300)).coeffs == (1.0, 1e-300)  # tiny is kept
    assert Polynomial((3.0,)).degree == 0


def test_poly_ops_worked_values():
    assert poly_mul([1, -0.5], [1, -0.3]).coeffs == pytest.approx((1.0, -0.8, 0.15))
    assert poly_eval([1, -0.5, -0.18], 1.0) == pytest.approx(0.32)
    assert poly_derivative([1, -0.5, -0.18]).coeffs == (-0.5, -0.36)
    assert poly_add([1, 2], [0, 0, 3]).coeffs == (1.0, 2.0, 3.0)
    assert poly_scale([1, -2], -0.5).coeffs == (-0.5, 1.0)


@settings(max_examples=60, deadline=None)
@given(a=coeff_lists, b=coeff_lists, x=st.floats(-2, 2))
def test_poly_ring_semantics_at_points(a, b, x):
    total = poly_eval(poly_add(a, b), x)
    assert total == pytest.approx(poly_eval(a, x) + poly_eval(b, x), rel=1e-9, abs=1e-9)
    prod = poly_eval(poly_mul(a, b), x)
    direct = poly_eval(a, x) * poly_eval(b, x)
    assert prod == pytest.approx(direct, rel=1e-9, abs=1e-6)


@settings(max_examples=40, deadline=None)
@given(a=coeff_lists, x=st.floats(-1, 1))
def test_poly_derivative_matches_finite_differences(a, x):
    h = 1e-6
    fd = (poly_eval(a, x + h) - poly_eval(a, x - h)) / (2 * h)
    scale = 1.0 + max(abs(c) for c in a)
    assert abs(poly_eval(poly_derivative(a), x) - fd) <= 1e-4 * scale


def test_poly_eval_complex_point():
    # (1+i)^2 = 2i, so 1 + z^2 evaluates to 1 + 2i
    assert poly_eval([1, 0, 1], 1 + 1j) == pytest.approx(1 + 2j)


def test_discrete_seq_base_and_worked_chain(d1_geometric, d2_mixed):
    assert discrete_charpoly_seq(d1_geometric)[1].coeffs == (1.0, -0.5)
    seq = discrete_charpoly_seq(d2_mixed)
    # oracle: (1-0.2s)(1-0.3s) - 0.24 s^2 expanded by hand
    assert seq[2].coeffs == pytest.approx((1.0, -0.5, -0.18))


def test_discrete_seq_pure_birth_is_constant_one(d3_pure_birth):
    for g in discrete_charpoly_seq(d3_pure_birth):
        assert g.coeffs == (1.0,)


def test_continuous_seq_worked_chains(rate2_single, rates12_pure_birth, rates11_coupled):
    assert continuous_charpoly_seq(rate2_single)[1].coeffs == (2.0, 1.0)
    assert continuous_charpoly_seq(rates12_pure_birth)[2].coeffs == (2.0, 3.0, 1.0)
    # oracle: (s+1)(s+2) - 1*1 expanded directly
    assert continuous_charpoly_seq(rates11_coupled)[2].coeffs == (1.0, 3.0, 1.0)


def test_direct_determinant_values(d2_mixed):
    assert direct_determinant([[0.5]], 1.0, "discrete") == pytest.approx(0.5)
    assert direct_determinant(transient_block(d2_mixed, 1), 1.0, "discrete") == pytest.approx(0.32)
    assert direct_determinant([[-1, 1], [0, -2]], 0.0, "continuous") == pytest.approx(2.0)
    with pytest.raises(ValueError):
        direct_determinant([[0.5]], 1.0, "laplace")
    with pytest.raises(ValueError):
        direct_determinant([[1, 2, 3]], 1.0, "discrete")


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 10))
def test_discrete_recurrence_agrees_with_determinants(seed, d):
    rng = np.random.default_rng(seed)
    chain = random_discrete_chain(rng, d)
    seq = discrete_charpoly_seq(chain)
    for n in range(d):
        block = transient_block(chain, n)
        for s in rng.uniform(-1.0, 1.0, size=20):
            direct = direct_determinant(block, s, "discrete")
            assert abs(poly_eval(seq[n + 1], s) - direct) <= 1e-10 * (1 + abs(direct))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 10))
def test_continuous_recurrence_agrees_with_determinants(seed, d):
    rng = np.random.default_rng(seed)
    chain = random_continuous_chain(rng, d)
    seq = continuous_charpoly_seq(chain)
    for n in range(d):
        block = transient_block(chain, n)
        for s in rng.uniform(0.0, 5.0, size=20):
            direct = direct_determinant(block, s, "continuous")
            assert abs(poly_eval(seq[n + 1], s) - direct) <= 1e-10 * (1 + abs(direct))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 10))
def test_structural_exactness(seed, d):
    rng = np.random.default_rng(seed)
    discrete = discrete_charpoly_seq(random_discrete_chain(rng, d))
    for n, g in enumerate(discrete):
        assert g.coeffs[0] == 1.0  # exactly, by construction
        assert g.degree <= n
    continuous = continuous_charpoly_seq(random_continuous_chain(rng, d))
    for n, g in enumerate(continuous):
        assert g.degree == n
        assert g.coeffs[-1] == 1.0
