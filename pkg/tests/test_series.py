import json
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardy_bap.series import (EXACT, TRUNCATED, BoundaryGrid, ConditioningWarning, DomainError,
                              HardyExponent, PowerSeries, SingularityError, as_series, evaluate,
                              fourier_coefficients, geometric_rational, hadamard, hardy_norm,
                              monomial, polynomial, sample_boundary)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)
coeff_lists = st.lists(complexes, min_size=1, max_size=60)


def test_exponent_parse():
    assert HardyExponent.parse("inf") is HardyExponent.INF
    assert HardyExponent.parse(1) is HardyExponent.ONE
    assert HardyExponent.parse(2.0) is HardyExponent.TWO
    with pytest.raises(ValueError):
        HardyExponent.parse(3)


def test_monomial_and_indexing():
    e3 = monomial(3, 2.0)
    assert e3[3] == 2 and e3[2] == 0 and e3[100] == 0
    assert e3.degree() == 3
    t = geometric_rational(0.5).series(10)
    assert t.tail_kind == TRUNCATED
    with pytest.raises(IndexError):
        t[11]


def test_exact_series_has_zero_tail():
    assert PowerSeries([1, 2], EXACT, tail_bound=5.0).tail_bound == 0.0


def test_truncated_resize_rules():
    t = PowerSeries([1, 0.5, 0.25], TRUNCATED, 0.25)
    with pytest.raises(ValueError):
        t.resized(5)
    r = t.resized(1)
    assert r.tail_bound == pytest.approx(0.5)


@given(coeff_lists, st.floats(0, 1), st.floats(0, 2 * np.pi))
def test_horner_matches_polyval(c, r, theta):
    z = r * np.exp(1j * theta)
    f = polynomial(c)
    assert evaluate(f, z) == pytest.approx(np.polyval(np.array(c)[::-1], z), rel=1e-9, abs=1e-9)


def test_evaluate_domain():
    with pytest.raises(DomainError):
        evaluate(monomial(1), 1.01)
    with pytest.raises(DomainError):
        evaluate(geometric_rational(0.5).series(20), 1.0)
    assert evaluate(geometric_rational(0.5).series(200), 0.5) == pytest.approx(1 / 0.75)


@given(coeff_lists, st.sampled_from([64, 128, 256]), st.sampled_from([1.0, 0.9, 0.5]))
def test_fft_sampling_matches_direct(c, m, r):
    f = polynomial(c)
    g = sample_boundary(f, r, m)
    direct = evaluate(f, r * np.exp(2j * np.pi * np.arange(m) / m))
    assert np.allclose(g.samples, direct, atol=1e-9 * max(1, np.abs(c).sum()))


def test_sampling_folds_high_degree():
    # degree beyond the grid size still samples exactly
    f = monomial(70) + monomial(1)
    g = sample_boundary(f, 1.0, 64)
    z = np.exp(2j * np.pi * np.arange(64) / 64)
    assert np.allclose(g.samples, z ** 70 + z)


@given(st.lists(complexes, min_size=1, max_size=30))
def test_fourier_roundtrip(c):
    f = polynomial(c)
    back = fourier_coefficients(sample_boundary(f, 1.0, 128))
    assert np.allclose(back.coeffs[:len(c)], c, atol=1e-9 * (1 + np.abs(c).max()))
    assert np.allclose(back.coeffs[len(c):], 0, atol=1e-9 * (1 + np.abs(c).max()))


def test_fourier_at_small_radius_warns():
    g = BoundaryGrid(1e-3, np.ones(256))
    with pytest.warns(ConditioningWarning):
        fourier_coefficients(g)


def test_pole_on_grid_is_rejected():
    from hardy_bap.series import ClosedForm
    f = ClosedForm("1/(1-z)", lambda z: 1 / (1 - z), lambda m: None, (1.0 + 0j,))
    with pytest.raises(SingularityError):
        sample_boundary(f, 1.0, 64)


def test_truncated_without_bound_not_sampled_on_circle():
    with pytest.raises(DomainError):
        sample_boundary(PowerSeries([1, 1], TRUNCATED), 1.0, 64)
    sample_boundary(PowerSeries([1, 1], TRUNCATED), 0.9, 64)


def test_grid_validation():
    with pytest.raises(ValueError):
        BoundaryGrid(1.0, np.ones(100))
    with pytest.raises(DomainError):
        BoundaryGrid(1.5, np.ones(64))
    with pytest.raises(ValueError):
        sample_boundary(monomial(1), 1.0, 1000)


@given(coeff_lists, coeff_lists)
def test_hadamard_coefficientwise(a, b):
    h = hadamard(polynomial(a), polynomial(b))
    m = min(len(a), len(b))
    assert np.allclose(h.coeffs[:m], np.array(a[:m]) * np.array(b[:m]))
    assert h.tail_kind == EXACT


def test_hadamard_exact_cover():
    t = geometric_rational(0.5).series(50)
    assert hadamard(t, monomial(3)).tail_kind == EXACT
    assert hadamard(t, t).tail_kind == TRUNCATED


@given(coeff_lists)
def test_parseval(c):
    f = polynomial(c)
    assert hardy_norm(f, 2) == pytest.approx(hardy_norm(sample_boundary(f, 1.0, 256), 2), rel=1e-9, abs=1e-12)


def test_norms_of_cayley():
    f = geometric_rational(0.5)
    assert hardy_norm(f, "inf") == pytest.approx(2.0)
    assert hardy_norm(f, 2) == pytest.approx(1 / np.sqrt(0.75), rel=1e-12)
    assert hardy_norm(f.series(200), 2) == pytest.approx(1 / np.sqrt(0.75), rel=1e-12)


@given(coeff_lists)
def test_norm_chain(c):
    f = polynomial(c)
    n1, n2, ninf = (hardy_norm(f, q, m=512) for q in (1, 2, "inf"))
    assert n1 <= n2 * (1 + 1e-12) + 1e-12 and n2 <= ninf * (1 + 1e-12) + 1e-12


@given(coeff_lists, st.booleans())
def test_json_roundtrip(c, truncated):
    f = PowerSeries(c, TRUNCATED, 0.125) if truncated else polynomial(c)
    g = PowerSeries.from_json(f.to_json())
    assert np.array_equal(g.coeffs, f.coeffs)
    assert g.tail_kind == f.tail_kind and g.tail_bound == f.tail_bound


def test_json_format_and_mismatch():
    d = json.loads(monomial(1).to_json())
    assert d == {"coeffs": [[0.0, 0.0], [1.0, 0.0]], "truncation": 1, "tail_kind": EXACT}
    with pytest.raises(ValueError):
        PowerSeries.from_json_dict({"coeffs": [1, 2], "truncation": 5})


def test_as_series():
    assert as_series(geometric_rational(0.5), 10).truncation == 10
    with pytest.raises(TypeError):
        as_series("nope")


def test_tail_bound_is_valid():
    rho = 0.7
    s = geometric_rational(rho).series(30)
    true_tail = sum(rho ** k for k in range(31, 2000))
    assert s.tail_bound >= true_tail * (1 - 1e-12)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        sample_boundary(s, 1.0, 64)
