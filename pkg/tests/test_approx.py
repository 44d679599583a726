import cvxpy as cp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardy_bap.approx import best_approx, chebyshev_lp, convolution_lower_bound, mixed_approx_l1
from hardy_bap.inequalities import random_polynomial_corpus
from hardy_bap.kernels import KernelSpec
from hardy_bap.series import (ConditioningWarning, grid_points, hardy_norm, monomial, polynomial,
                              sample_boundary)
from hardy_bap.special import ExtremalFamily

from oracles import CAYLEY_L1


def _socp_oracle(fvals, V, q):
    """Same discrete problem solved as a second-order cone program (independent solver)."""
    c = cp.Variable(V.shape[1], complex=True)
    r = cp.abs(fvals - V @ c)
    obj = cp.max(r) if q == "inf" else cp.sum(r) / fvals.size
    prob = cp.Problem(cp.Minimize(obj))
    prob.solve(solver=cp.CLARABEL)
    return prob.value


def _basis(z, n):
    return z[:, None] ** np.arange(n)[None, :]


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("rho", [0.3, 0.5, 0.7])
def test_cayley_l1_elliptic(n, rho):
    res = best_approx(ExtremalFamily.cayley_rational(rho), n, 1)
    assert res.value == pytest.approx(CAYLEY_L1[(n, rho)], rel=1e-9)
    assert res.lower_bound <= res.value + 1e-12
    assert res.gap < 1e-8


@pytest.mark.parametrize("f,n", [(ExtremalFamily.cayley_rational(0.6), 2),
                                 (polynomial([0.3, -1, 0.5j, 0.2, 0.1 - 0.3j]), 2),
                                 (ExtremalFamily.blaschke_shift(1, 2, 0.5), 1),
                                 (polynomial([1, 1, 1]), 1)])
@pytest.mark.parametrize("q", ["inf", 1])
def test_against_socp_oracle(f, n, q):
    M = 256
    g = sample_boundary(f, 1.0, M)
    ref = _socp_oracle(g.samples, _basis(grid_points(1.0, M), n), q)
    res = best_approx(f, n, q, grid=M)
    assert res.value == pytest.approx(ref, rel=1e-6, abs=1e-8)
    assert res.lower_bound <= ref + 1e-7


def test_l1_lp_route_matches_irls():
    f = ExtremalFamily.cayley_rational(0.5)
    a = best_approx(f, 2, 1, grid=512, method="irls")
    b = best_approx(f, 2, 1, grid=512, method="lp")
    assert a.value == pytest.approx(b.value, rel=1e-7)
    assert b.method == "lp-cutting-plane" and a.method == "irls"


def test_scipy_backend_matches_highs():
    f = polynomial([0.2, 1, -0.4, 0.3j, 0.25])
    a = best_approx(f, 2, "inf", grid=512, backend="highs")
    b = best_approx(f, 2, "inf", grid=512, backend="scipy")
    assert a.value == pytest.approx(b.value, rel=1e-8)


def test_minimax_enclosure_and_convergence():
    f = ExtremalFamily.cayley_rational(0.8)
    res = best_approx(f, 3, "inf")
    assert 0 <= res.gap <= 1e-5
    fine = best_approx(f, 3, "inf", grid=16384)
    assert abs(fine.value - res.value) <= max(res.grid_bias, 1e-9) + 1e-9


def test_q2_closed_form():
    f = ExtremalFamily.cayley_rational(0.5)
    for n in range(4):
        res = best_approx(f, n, 2)
        assert res.value == pytest.approx(0.5 ** n / np.sqrt(0.75), rel=1e-12)


def test_n0_is_norm():
    f = polynomial([1, 0.5j, -0.25])
    for q in (1, 2, "inf"):
        assert best_approx(f, 0, q).value == pytest.approx(hardy_norm(f, q), rel=1e-12)


def test_monomial_distance_is_one():
    for q in (1, "inf"):
        for n in (1, 3):
            res = best_approx(monomial(n) + monomial(0, 0.7), n, q)
            assert res.value == pytest.approx(1.0, abs=1e-9)


def test_inner_family_distance():
    # f = z^n B with B inner: E_n(f)_inf = 1
    res = best_approx(ExtremalFamily.blaschke_shift(2, 5, 0.9), 2, "inf")
    assert res.value == pytest.approx(1.0, abs=1e-8)


def test_small_radius_solve():
    f = polynomial([0, 0, 1, 0.5])
    res = best_approx(f, 2, "inf", radius=0.5, grid=512)
    z = grid_points(0.5, 512)
    ref = _socp_oracle(sample_boundary(f, 0.5, 512).samples, _basis(z, 2), "inf")
    assert res.value == pytest.approx(ref, rel=1e-6)
    # Cauchy bound on the smaller circle and the trivial upper bound
    assert 0.25 - 1e-12 <= res.value <= 0.25 * 1.25 + 1e-12


def test_boundary_grid_input():
    g = sample_boundary(ExtremalFamily.cayley_rational(0.5), 1.0, 1024)
    assert best_approx(g, 1, 1).value == pytest.approx(CAYLEY_L1[(1, 0.5)], rel=1e-9)
    assert best_approx(g, 1, 2).value == pytest.approx(0.5 / np.sqrt(0.75), rel=1e-9)


def test_errors_and_warnings():
    with pytest.raises(ValueError):
        best_approx(monomial(1), -1, 1)
    with pytest.warns(ConditioningWarning), pytest.raises(ValueError):
        best_approx(monomial(1), 200, 1, grid=256)
    with pytest.raises(ValueError):
        best_approx(monomial(1), 1, 3)
    with pytest.warns(ConditioningWarning):
        best_approx(monomial(60), 51, 2)


corpus = random_polynomial_corpus(100, 40, seed=11)


@settings(max_examples=25)
@given(st.integers(0, 99), st.integers(0, 6))
def test_approximation_chain(i, n):
    f = corpus[i]
    e1, e2, einf = (best_approx(f, n, q, grid=1024).value for q in (1, 2, "inf"))
    tol = 1e-5
    assert e1 <= e2 + tol and e2 <= einf + tol
    assert einf <= hardy_norm(f, "inf", m=1024) + tol
    assert abs(f[n]) <= min(e1, e2, einf) + tol


def test_mixed_monomial():
    for N in (1, 3, 5):
        res = mixed_approx_l1(monomial(N), N)
        assert res.value == pytest.approx(1.0, abs=1e-9)
        assert res.value_half == pytest.approx(res.value, abs=1e-9)


def test_mixed_below_l1_distance():
    # allowing conjugate-analytic terms can only lower the distance
    f = ExtremalFamily.cayley_rational(0.6)
    for N in (1, 2, 3):
        mixed = mixed_approx_l1(f, N).value
        assert mixed <= best_approx(f, N, 1).value + 1e-9
        assert mixed >= abs(0.6 ** N) - 1e-9


def test_mixed_against_socp_oracle():
    f = polynomial([0.1, 0.4, -0.3, 1, 0.8j, -0.5, 0.2])
    M, N, md = 256, 3, 16
    z = grid_points(1.0, M)
    V = np.hstack([_basis(z, N), np.conj(z)[:, None] ** np.arange(1, md + 1)[None, :]])
    ref = _socp_oracle(sample_boundary(f, 1.0, M).samples, V, 1)
    res = mixed_approx_l1(f, N, neg_degree=md, grid=M)
    assert res.value == pytest.approx(ref, rel=1e-6)


def test_mixed_validation():
    with pytest.raises(ValueError):
        mixed_approx_l1(monomial(1), 1, neg_degree=200, grid=256)
    with pytest.raises(ValueError):
        mixed_approx_l1(monomial(1), -1)


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("rho", [0.3, 0.5, 0.7])
def test_convolution_lower_bound_is_sharp_for_cayley(n, rho):
    lb = convolution_lower_bound(KernelSpec.geometric(n, n + 1), ExtremalFamily.cayley_rational(rho), 1)
    assert lb == pytest.approx(CAYLEY_L1[(n, rho)], rel=1e-9)


@settings(max_examples=20)
@given(st.integers(0, 99), st.integers(1, 4), st.integers(1, 4))
def test_convolution_is_lower_bound(i, n, extra):
    f = corpus[i]
    K = KernelSpec.geometric(n, n + extra)
    for q in (1, "inf"):
        lb = convolution_lower_bound(K, f, q, grid=1024)
        assert lb <= best_approx(f, n, q, grid=1024).value + 1e-6


def test_convolution_requires_certificate():
    with pytest.raises(ValueError):
        convolution_lower_bound(KernelSpec.geometric(2, 2), monomial(2), 1)


def test_chebyshev_lp_direct():
    M = 512
    z = grid_points(1.0, M)
    f = z ** 2
    c, ub, lb, _ = chebyshev_lp(f, _basis(z, 1), 16, 1e-10, "auto")
    assert ub == pytest.approx(1.0) and lb <= ub
