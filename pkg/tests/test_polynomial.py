from fractions import Fraction as F

from hypothesis import given, strategies as st

from reverse_bernstein.polynomial import RationalPoly, is_simple_root, isolate_roots, poly_gcd, real_roots, square_free

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def from_roots(*roots):
    p = RationalPoly.constant(1)
    for r in roots:
        p = p * RationalPoly([-F(r), 1])
    return p


def test_arithmetic_and_calculus():
    x = RationalPoly.x()
    p = x * x - RationalPoly.constant(2)
    assert p.degree == 2
    assert p(F(3)) == 7
    assert p.derivative() == RationalPoly([0, 2])
    assert p.integral()(F(3)) == F(9) - 6
    assert p.definite_integral(0, 1) == F(1, 3) - 2


def test_divmod_and_gcd():
    a = from_roots(1, 2, F(1, 3))
    b = from_roots(2, 5)
    q, r = a.divmod(b)
    assert q * b + r == a and r.degree < b.degree
    assert poly_gcd(a, b) == from_roots(2)
    assert square_free(a * from_roots(2)) == a.monic()


@given(st.lists(small_q, min_size=1, max_size=6), small_q)
def test_shift_and_scale(coeffs, h):
    p = RationalPoly(coeffs)
    assert p.shift(h)(F(1, 2)) == p(F(1, 2) + h)
    assert p.scale(h)(F(2, 3)) == p(h * F(2, 3))


@given(st.lists(small_q, min_size=1, max_size=5, unique=True))
def test_rational_roots_found_exactly(roots):
    p = from_roots(*roots)
    found = real_roots(p, -6, 6)
    assert [r.value for r in found] == sorted(roots)
    assert all(r.exact for r in found)


def test_irrational_roots_certified():
    p = RationalPoly([-2, 0, 1])
    rs = real_roots(p, 0, 2)
    assert len(rs) == 1 and not rs[0].exact
    assert abs(rs[0].value - 2**0.5) < 1e-15
    assert rs[0].lo ** 2 <= 2 <= rs[0].hi ** 2


def test_open_interval_excludes_endpoints():
    p = from_roots(0, 1, F(1, 2))
    assert [r.value for r in real_roots(p, 0, 1)] == [F(1, 2)]
    assert len(isolate_roots(p, 0, 1)) == 1


def test_multiplicity():
    p = from_roots(F(1, 2), F(1, 2), F(3, 2))
    flags = {float(r.value): is_simple_root(p, r) for r in real_roots(p, 0, 2)}
    assert flags == {0.5: False, 1.5: True}
    q = RationalPoly([-2, 0, 1]) * RationalPoly([-2, 0, 1])
    (r,) = real_roots(q, 0, 2)
    assert not is_simple_root(q, r)
