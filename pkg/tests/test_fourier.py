import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from reverse_bernstein import fourier as fr
from reverse_bernstein.fourier import DomainError, TrigSeries


def random_series(seed, band, real=True, zero_mean=False):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(2 * band + 1) + 1j * rng.standard_normal(2 * band + 1)
    s = TrigSeries(c)
    if real:
        s = s.realified()
    if zero_mean:
        s = fr.project_tail(s, 1)
    return s


def quad_coeff(f, j):
    re = quad(lambda x: f(x) * np.cos(j * x), -np.pi, np.pi, limit=200, points=[0.0])[0]
    im = -quad(lambda x: f(x) * np.sin(j * x), -np.pi, np.pi, limit=200, points=[0.0])[0]
    return (re + 1j * im) / (2 * np.pi)


def dense_sup_oracle(s, n=20_001):
    """Dense grid plus bounded scalar polishing of the best few cells."""
    x = np.linspace(-np.pi, np.pi, n)
    v = np.abs(fr.evaluate(s, x))
    h = x[1] - x[0]
    best = v.max()
    peaks = np.flatnonzero((v >= np.roll(v, 1)) & (v >= np.roll(v, -1)))
    for i in peaks[np.argsort(v[peaks])[-8:]]:
        r = minimize_scalar(lambda t: -abs(fr.evaluate(s, t)), bounds=(x[i] - h, x[i] + h), method="bounded", options={"xatol": 1e-13})
        best = max(best, -r.fun)
    return best


def c1(x):
    return np.pi / 2 - abs(x)


seeds = st.integers(0, 2**32 - 1)
bands = st.integers(1, 12)


# -- evaluate -------------------------------------------------------------------


def test_evaluate_trivial():
    assert fr.evaluate(TrigSeries.from_dict({0: 1}), 1.3) == 1
    assert fr.evaluate(TrigSeries.from_dict({1: 1, -1: 1}, is_real=True), 0.0) == pytest.approx(2.0, abs=1e-15)


def test_evaluate_truncated_triangle_matches_tail_oracle():
    # coefficients by quadrature, independent of the piecewise module
    s = TrigSeries(np.array([quad_coeff(c1, j) for j in range(-9, 10)])).realified()
    tail = 4 / np.pi * (np.pi**2 / 8 - sum(1.0 / j**2 for j in range(1, 10, 2)))
    value = fr.evaluate(s, 0.0)
    assert np.pi / 2 - value == pytest.approx(tail, abs=1e-8)
    assert abs(value - np.pi / 2) < 0.07


def test_real_series_evaluate_is_real():
    s = random_series(1, 6)
    assert np.isrealobj(fr.evaluate(s, np.linspace(-3, 3, 7)))
    z = fr.evaluate(TrigSeries(s.coeffs), 0.7)
    assert abs(z.imag) < 1e-12


def test_angles_are_reduced():
    s = random_series(2, 4)
    assert fr.evaluate(s, 0.3 + 4 * np.pi) == pytest.approx(fr.evaluate(s, 0.3), abs=1e-12)
    assert fr.normalize_angle(-np.pi) == pytest.approx(np.pi)


# -- derivative and I -------------------------------------------------------------


def test_derivative_examples():
    assert fr.derivative(TrigSeries.from_dict({1: 1})) == TrigSeries.from_dict({1: 1j})
    assert not np.any(fr.derivative(TrigSeries.from_dict({0: 5})).coeffs)
    assert fr.derivative(TrigSeries.from_dict({2: 1, -2: 1})) == TrigSeries.from_dict({2: 2j, -2: -2j})


def test_antiderivative_examples():
    assert fr.antiderivative_I(TrigSeries.from_dict({1: 1})) == TrigSeries.from_dict({1: -1j})
    s = TrigSeries.from_dict({3: 2 + 1j, -3: 2 - 1j}, is_real=True)
    assert fr.antiderivative_I(fr.derivative(s)).allclose(s, atol=1e-15)
    with pytest.raises(DomainError):
        fr.antiderivative_I(TrigSeries.from_dict({0: 1}))


@given(seeds, bands)
def test_I_inverts_derivative(seed, band):
    s = random_series(seed, band, zero_mean=True)
    assert fr.antiderivative_I(fr.derivative(s)).allclose(s, atol=1e-13)
    assert fr.derivative(fr.antiderivative_I(s)).allclose(s, atol=1e-13)
    assert fr.antiderivative_I(s)[0] == 0


@given(seeds, st.integers(1, 5), bands)
def test_I_preserves_tail(seed, k, band):
    s = fr.project_tail(random_series(seed, band + k), k)
    assert fr.antiderivative_I(s).in_tail(k)
    assert fr.derivative(s).in_tail(k)


# -- inner product and projections --------------------------------------------------


def test_inner_product_examples():
    e1, e2 = TrigSeries.from_dict({1: 1}), TrigSeries.from_dict({2: 1})
    assert fr.inner_product(e1, e1) == 1
    assert fr.inner_product(e1, e2) == 0


@given(seeds, bands)
def test_anti_self_adjoint(seed, band):
    a = random_series(seed, band, real=False, zero_mean=True)
    b = random_series(seed + 1, band + 2, real=False, zero_mean=True)
    lhs = fr.inner_product(fr.antiderivative_I(a), b) + fr.inner_product(a, fr.antiderivative_I(b))
    assert abs(lhs) < 1e-12


def test_project_tail_examples():
    s = TrigSeries.from_dict({0: 1, 1: 1, 5: 2})
    assert fr.project_tail(s, 2) == TrigSeries.from_dict({5: 2}, band=5)
    t = random_series(3, 5)
    assert fr.project_tail(t, 1).allclose(t - TrigSeries.from_dict({0: t[0]}))


@given(seeds, st.integers(1, 6), bands)
def test_project_tail_properties(seed, k, band):
    s, t = random_series(seed, band), random_series(seed + 7, band)
    P = lambda u: fr.project_tail(u, k)
    assert P(P(s)) == P(s)
    assert fr.inner_product(P(s), t) == pytest.approx(fr.inner_product(s, P(t)), abs=1e-12)
    p = random_series(seed + 3, k - 1)
    assert abs(fr.inner_product(P(s), p)) == 0


@given(seeds, st.integers(0, 8))
def test_parseval_against_quadrature(seed, band):
    s = random_series(seed, band)
    direct = quad(lambda x: fr.evaluate(s, x) ** 2, -np.pi, np.pi, limit=200)[0] / (2 * np.pi)
    assert fr.inner_product(s, s).real == pytest.approx(direct, rel=1e-9, abs=1e-12)


# -- norms ---------------------------------------------------------------------------


def test_sup_norm_examples():
    assert fr.sup_norm_estimate(TrigSeries.from_dict({1: 1, -1: 1}, is_real=True)) == pytest.approx(2, abs=1e-10)
    assert fr.sup_norm_estimate(TrigSeries.from_dict({0: 3}, is_real=True)) == 3


def test_sup_norm_of_truncated_triangle():
    s = TrigSeries(np.array([quad_coeff(c1, j) for j in range(-101, 102)])).realified()
    partial_sum_at_0 = 4 / np.pi * sum(1.0 / j**2 for j in range(1, 102, 2))
    est = fr.sup_norm_estimate(s)
    assert est == pytest.approx(partial_sum_at_0, abs=1e-10)
    assert 0 < np.pi / 2 - est < 1e-2


@given(seeds, bands, st.booleans())
def test_sup_norm_bounds(seed, band, real):
    s = random_series(seed, band, real=real)
    est = fr.sup_norm_estimate(s)
    x, v = fr.sample_grid(s, 16 * (band + 1))
    assert est >= np.abs(v).max()
    assert est == pytest.approx(dense_sup_oracle(s), rel=1e-10)


def test_l1_examples():
    two_cos = TrigSeries.from_dict({1: 1, -1: 1}, is_real=True)
    oracle = quad(lambda x: abs(2 * np.cos(x)), -np.pi, np.pi, points=[-np.pi / 2, np.pi / 2])[0] / (2 * np.pi)
    assert fr.l1_norm_estimate(two_cos) == pytest.approx(oracle, abs=1e-8)
    assert fr.l1_norm_estimate(two_cos) == pytest.approx(4 / np.pi, abs=1e-12)
    assert fr.l1_norm_estimate(TrigSeries.from_dict({0: 2}, is_real=True)) == 2
    assert fr.l1_norm_estimate(TrigSeries.zero(3)) == 0
    with pytest.raises(DomainError):
        fr.l1_norm_estimate(TrigSeries.from_dict({1: 1}))


@given(seeds, bands)
def test_l1_against_quadrature(seed, band):
    s = random_series(seed, band)
    roots = fr.sign_changes(s)
    oracle = quad(lambda x: abs(fr.evaluate(s, x)), -np.pi, np.pi, points=list(roots), limit=500)[0] / (2 * np.pi)
    assert fr.l1_norm_estimate(s) == pytest.approx(oracle, abs=1e-8)


def test_json_round_trip():
    s = random_series(9, 4)
    back = TrigSeries.from_json(s.to_json())
    assert back == s and back.is_real
    obj = s.to_json_obj()
    assert obj["band"] == 4 and len(obj["coeffs"]) == 9 and obj["coeffs"][0][0] == -4
