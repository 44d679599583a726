import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardy_bap.approx import mixed_approx_l1
from hardy_bap.inequalities import (HOLDS, VIOLATED, WITHIN, InequalityReport, _verdict,
                                    bohr_weights, check_inequality, mixed_distance_check,
                                    weighted_check, weighted_witness,
                                    equality_characterization_check, find_landau_violation,
                                    gap_probe, landau_admissible, r_class_membership,
                                    random_polynomial_corpus, sharpness_sweep)
from hardy_bap.series import EXACT, TRUNCATED, PowerSeries, monomial, polynomial
from hardy_bap.special import ExtremalFamily

CORPUS = random_polynomial_corpus(60, 40, seed=5)


@pytest.mark.parametrize("n,N,c,expect", [(1, 3, 0.5, True), (1, 2, 0.1, False), (0, 1, 0.5, True),
                                          (1, 4, 0.3, True), (1, 3, 0.6, False), (2, 4, 0.5, False),
                                          (3, 7, 0.5, True), (3, 7, 0.51, False)])
def test_landau_admissible(n, N, c, expect):
    assert landau_admissible(n, N, c) is expect


def test_landau_admissible_preconditions():
    for bad in [(-1, 2, 0.5), (2, 2, 0.5), (1, 3, 0.0)]:
        with pytest.raises(ValueError):
            landau_admissible(*bad)


def test_verdict_rule():
    assert _verdict(1.0, 1.0 - 5e-6, 1e-5) == HOLDS
    assert _verdict(1.0, 0.9, 1e-5) == VIOLATED
    assert _verdict(1.0, 1.0 - 2e-5, 1e-5, uncertainty=1e-4) == WITHIN
    r = InequalityReport("landau", {}, 1.0, 0.99, 0.99, VIOLATED, 1e-5)
    assert r.slack == pytest.approx(-0.01) and r.violated


def test_monomial_holds_with_zero_slack():
    rep = check_inequality(monomial(2), 2, 5, 0.5)
    assert rep.lhs == 1 and rep.rhs == pytest.approx(1) and rep.verdict == HOLDS
    assert abs(rep.slack) < 1e-9


def test_blaschke_slack_shrinks():
    slacks = [check_inequality(ExtremalFamily.blaschke_shift(1, 3, r), 1, 3, 0.5).slack
              for r in (0.5, 0.9, 0.99)]
    assert all(s >= -1e-9 for s in slacks)
    assert slacks[0] > slacks[1] > slacks[2]
    assert slacks[2] == pytest.approx(0.5 * (1 - 0.99) ** 2, rel=1e-4)


def test_inadmissible_blaschke_n1_N2_does_not_violate():
    # an inner function vanishing to order n has E_n = 1 while the lhs stays <= 1
    rep = check_inequality(ExtremalFamily.blaschke_shift(1, 2, 0.9), 1, 2, 0.5)
    assert rep.lhs == pytest.approx(0.995) and rep.verdict == HOLDS


def test_gap_probe_violates_when_N_le_2n():
    f = gap_probe(1, 2, 0.9)
    rep = check_inequality(f, 1, 2, 0.5)
    # E_1(z + a z^2) <= sqrt(1 + 4 a^2) with a = 0.1
    assert rep.rhs <= np.sqrt(1 + 4 * 0.01) + 1e-9
    assert rep.verdict == VIOLATED


@pytest.mark.parametrize("case", [(1, 2, 0.5), (1, 3, 0.6), (2, 4, 0.5), (0, 1, 0.6)])
def test_witness_found_for_inadmissible(case):
    reps = find_landau_violation(*case)
    assert any(r.verdict == VIOLATED for r in reps)


@pytest.mark.parametrize("case", [(0, 1, 0.5), (1, 3, 0.5), (2, 5, 0.5), (1, 4, 0.3)])
def test_no_witness_for_admissible(case):
    assert all(r.verdict == HOLDS for r in find_landau_violation(*case))


@settings(max_examples=30)
@given(st.integers(0, len(CORPUS) - 1), st.sampled_from([(0, 1, 0.5), (1, 3, 0.5), (2, 5, 0.5),
                                                          (1, 4, 0.3), (2, 9, 0.2)]))
def test_admissible_holds_on_corpus(i, case):
    assert check_inequality(CORPUS[i], *case).verdict == HOLDS


def test_sharpness_sweep_values():
    sw = sharpness_sweep(1, 3, [0.0, 0.5, 0.9, 0.99])
    assert sw.within_bounds()
    assert sw.ratios[0] == pytest.approx(0.5, abs=1e-9)
    assert 0.875 - 1e-4 <= sw.ratios[1] <= 1 + 1e-4
    assert sw.ratios[3] >= 0.99995 - 1e-4
    assert sw.sharp_column == pytest.approx([1.0, 1.5, 1.9, 1.99])
    with pytest.raises(ValueError):
        sharpness_sweep(1, 2, [0.5])


@pytest.mark.parametrize("n,N", [(0, 1), (2, 5), (1, 4)])
def test_sharpness_sweep_other_orders(n, N):
    assert sharpness_sweep(n, N, [0.3, 0.8, 0.95]).within_bounds()


def test_mixed_distance_examples():
    rep = mixed_distance_check(monomial(3), 1, 3)
    assert rep.lhs == pytest.approx(0.5) and rep.rhs == pytest.approx(1) and rep.verdict == HOLDS
    rep = mixed_distance_check(polynomial([0.5, -0.2j]), 2, 5)
    assert rep.lhs == pytest.approx(0, abs=1e-9) and rep.rhs == pytest.approx(0, abs=1e-9)
    assert rep.verdict == HOLDS
    for rho in (0.0, 0.3, 0.6, 0.9):
        assert mixed_distance_check(ExtremalFamily.blaschke_shift(1, 3, rho), 1, 3).verdict == HOLDS
    with pytest.raises(ValueError):
        mixed_distance_check(monomial(2), 1, 2)


@settings(max_examples=10)
@given(st.integers(0, len(CORPUS) - 1), st.sampled_from([(0, 1), (1, 3), (1, 4)]))
def test_mixed_distance_dominates_landau(i, nN):
    f = CORPUS[i]
    c1 = mixed_distance_check(f, *nN, grid=1024, neg_degree=32)
    landau = check_inequality(f, *nN, 0.5, grid=1024)
    assert c1.lhs >= landau.lhs - 1e-6
    assert c1.verdict == HOLDS


def test_weighted_landau_special_case():
    psi = np.array([0.5])
    for f in CORPUS[:10]:
        rep = weighted_check(f, 1, psi)
        assert rep.extra["admissible"] and rep.verdict == HOLDS
        assert rep.lhs == pytest.approx(check_inequality(f, 1, 3, 0.5).lhs)


def test_bohr_admissibility_boundary():
    assert bohr_weights(1 / 3 - 1e-6).sum() <= 0.5
    assert bohr_weights(1 / 3 + 1e-3).sum() > 0.5


def test_bohr_inequality_on_corpus():
    psi = bohr_weights(0.33)
    for f in CORPUS:
        assert weighted_check(f, 0, psi).verdict == HOLDS


def test_bohr_witness_above_one_third():
    rep = weighted_witness(0, bohr_weights(0.4))
    assert rep.extra["rho0"] == pytest.approx(5 / 6, abs=1e-9)
    assert rep.verdict == VIOLATED and not rep.extra["admissible"]
    # f_rho has f_0 = -rho and f_k = (1 - rho^2) rho^(k-1)
    rho = 5 / 6
    expect = rho + (1 - rho ** 2) * sum(0.4 ** k * rho ** (k - 1) for k in range(1, 201))
    assert rep.lhs == pytest.approx(expect, rel=1e-12)


def test_weighted_witness_general_n():
    # weights concentrated on k = 2n+1 with total 0.6 behave like c = 0.6
    rep = weighted_witness(1, np.array([0.6]))
    assert rep.verdict == VIOLATED


def test_witness_needs_excess_mass():
    with pytest.raises(ValueError):
        weighted_witness(0, bohr_weights(0.3))


def test_r_class_examples():
    assert r_class_membership(monomial(3), 3)
    assert r_class_membership(polynomial([0, 0, 0, 1, 0.5]), 3)
    assert not r_class_membership(polynomial([0, 0, 0, 1, 2]), 3)
    with pytest.raises(ValueError):
        r_class_membership(monomial(2), 3)


@settings(max_examples=15)
@given(st.integers(1, 4), st.floats(0.0, 0.7), st.floats(0, 6.28), st.floats(0.2, 2.0))
def test_r_class_forward_direction(N, rho, phi, a):
    # a z^N / (1 - rho e^{i phi} z): Re 1/(1 - w) >= 1/(1 + rho) >= 1/2
    k = np.arange(400)
    c = np.zeros(N + 400, dtype=complex)
    c[N:] = a * (rho * np.exp(1j * phi)) ** k
    f = PowerSeries(c, TRUNCATED, a * rho ** 400 / (1 - rho)) if rho > 0 else PowerSeries(c, EXACT)
    assert r_class_membership(f, N)
    res = mixed_approx_l1(f, N, grid=2048, neg_degree=32)
    assert res.value == pytest.approx(a, abs=1e-4 * max(a, 1))


def test_equality_characterization_examples():
    r = equality_characterization_check(polynomial([1, 0, 1]), 2, "inf")
    assert r.predicted_equality and r.observed_equality and r.agrees
    r = equality_characterization_check(polynomial([0, 0, 1, 1]), 2, "inf")
    assert not r.predicted_equality and not r.observed_equality and r.best_approximation > 1
    r = equality_characterization_check(polynomial([0, 0, 1, 0, 0.25]), 2, 1)
    assert r.predicted_equality and r.agrees
    assert r.best_approximation == pytest.approx(1.0, abs=1e-4)
    r = equality_characterization_check(polynomial([0, 0, 1, 0, 2]), 2, 1)
    assert not r.predicted_equality and r.agrees
    with pytest.raises(ValueError):
        equality_characterization_check(monomial(3), 2, 1)


def test_random_corpus_is_seeded():
    a = random_polynomial_corpus(5, seed=42)
    b = random_polynomial_corpus(5, seed=42)
    assert all(np.array_equal(x.coeffs, y.coeffs) for x, y in zip(a, b))
    assert all(x.degree() <= 40 and x.tail_kind == EXACT for x in a)
