"""The named functions: triangular cosine/sine, the kernels J_m and the
extremal functions, all as exact piecewise polynomials."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .piecewise import CirclePiecewisePoly, derivative, iterate_antiderivative
from .polynomial import RationalPoly


def _triangle(k: int, offset: Fraction) -> CirclePiecewisePoly:
    # corners at t = (j + offset) / k, peaks (value 1/(2k)) at even j
    if k < 1:
        raise ValueError("k must be a positive integer")
    h = Fraction(1, 2 * k)
    down = RationalPoly([h, -1])
    up = RationalPoly([-h, 1])
    breaks, pieces = [], []
    for j in range(-2 * k - 1, 2 * k + 2):
        t = (j + offset) / k
        if -1 < t <= 1:
            breaks.append(t)
            pieces.append(down if j % 2 == 0 else up)
    return CirclePiecewisePoly(breaks, pieces, pi_power=1, continuity=0)


@lru_cache(maxsize=None)
def make_c(k: int) -> CirclePiecewisePoly:
    """Triangular cosine ``c_k(x) = c(kx)/k`` with ``c(x) = pi/2 - |x|``."""
    return _triangle(k, Fraction(0))


@lru_cache(maxsize=None)
def make_s(k: int) -> CirclePiecewisePoly:
    """Triangular sine ``s_k(x) = c(pi/2 - kx)/k``; peaks at ``pi/(2k)``."""
    return _triangle(k, Fraction(1, 2))


def make_c_prime(k: int) -> CirclePiecewisePoly:
    """The +-1 square wave ``c_k'`` (right limits at the corners)."""
    return derivative(make_c(k))


def make_s_prime(k: int) -> CirclePiecewisePoly:
    return derivative(make_s(k))


@lru_cache(maxsize=None)
def make_J(m: int) -> CirclePiecewisePoly:
    """Kernel ``J_m``: the sawtooth ``J_1(x) = x`` on (-pi, pi) with ``J_1(pi) = 0``,
    and ``J_m = I^{m-1} J_1``."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m == 1:
        # one piece starting at pi: x = pi * (u - 1)
        return CirclePiecewisePoly(
            [Fraction(1)], [RationalPoly([-1, 1])], pi_power=1, continuity=-1,
            point_values=[(Fraction(1), Fraction(0))],
        )
    return iterate_antiderivative(make_J(m - 1), 1)


@lru_cache(maxsize=None)
def make_extremal(k: int, m: int) -> CirclePiecewisePoly:
    """``I^m c_k' = I^{m-1} c_k``, the function attaining equality."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return iterate_antiderivative(make_c(k), m - 1)
