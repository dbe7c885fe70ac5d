"""Sharp constants of the reverse Bernstein inequality.

``B_m`` comes from an alternating integral recursion of polynomials on
[0, 1]; then ``C_{k,m} = (2k/pi)^m / B_m`` and ``D_{k,m} = 1 / C_{k,m}``.
Everything is exact until the float views at the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .piecewise import PiScaled, inner_product_exact, sup_norm_exact
from .polynomial import RationalPoly
from .waves import make_c_prime, make_extremal, make_J, make_s_prime

__all__ = [
    "RationalPoly",
    "ConstantsRecord",
    "CrossValidation",
    "poly_P",
    "B",
    "euler_number",
    "C",
    "D_exact",
    "cross_validate",
]


@lru_cache(maxsize=None)
def poly_P(m: int) -> RationalPoly:
    """``P_0 = 1``; ``P_{m+1}(x)`` is ``int_0^x P_m`` for even m and ``int_x^1 P_m`` for odd m."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return RationalPoly.constant(1)
    prev = poly_P(m - 1)
    F = prev.integral()
    if (m - 1) % 2 == 0:
        return F
    return RationalPoly.constant(F(Fraction(1))) - F


@lru_cache(maxsize=None)
def B(m: int) -> Fraction:
    """``P_m(0)`` for even m, ``P_m(1)`` for odd m."""
    P = poly_P(m)
    return P(Fraction(0)) if m % 2 == 0 else P(Fraction(1))


def euler_number(m: int) -> int:
    """``B_m * m!``, which is the m-th up/down number."""
    v = B(m) * factorial(m)
    if v.denominator != 1:
        raise ArithmeticError(f"B_{m} * {m}! = {v} is not an integer")
    return v.numerator


def D_exact(k: int, m: int) -> PiScaled:
    """``D_{k,m} = (pi/2k)^m * B_m`` as an exact (rational, pi-power) pair."""
    _check_km(k, m)
    return PiScaled(B(m) / Fraction(2 * k) ** m, m)


def _check_km(k: int, m: int) -> None:
    if k < 1 or m < 1:
        raise ValueError(f"k and m must be positive integers, got k={k}, m={m}")


@dataclass(frozen=True)
class ConstantsRecord:
    k: int
    m: int
    B_m: Fraction
    C_exact: PiScaled
    D_exact: PiScaled
    euler_number: int

    @property
    def C_km(self) -> float:
        return float(self.C_exact)

    @property
    def D_km(self) -> float:
        return float(self.D_exact)

    def as_row(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "B_m": str(self.B_m),
            "euler_number": self.euler_number,
            "C_km": self.C_km,
            "D_km": self.D_km,
            "C_exact": f"{self.C_exact.coeff}*pi^{self.C_exact.pi_power}",
            "D_exact": f"{self.D_exact.coeff}*pi^{self.D_exact.pi_power}",
        }


@lru_cache(maxsize=None)
def C(k: int, m: int) -> ConstantsRecord:
    _check_km(k, m)
    D = D_exact(k, m)
    return ConstantsRecord(k, m, B(m), D.inverse(), D, euler_number(m))


@dataclass(frozen=True)
class CrossValidation:
    k: int
    m: int
    sup_norm_path: PiScaled
    recursion_path: PiScaled
    resonance_path: PiScaled
    tol: float

    @property
    def rel_error(self) -> float:
        a, b = float(self.sup_norm_path), float(self.recursion_path)
        return abs(a - b) / abs(b)

    @property
    def resonance_rel_error(self) -> float:
        a, b = float(abs(self.resonance_path)), float(self.recursion_path)
        return abs(a - b) / abs(b)

    @property
    def exact_agreement(self) -> bool:
        s, r = self.sup_norm_path, self.recursion_path
        return s.exact and s.pi_power == r.pi_power and s.coeff == r.coeff

    @property
    def passed(self) -> bool:
        return self.rel_error <= self.tol and self.resonance_rel_error <= self.tol

    def describe(self) -> str:
        status = "ok" if self.passed else "MISMATCH"
        return (
            f"k={self.k} m={self.m} {status}: sup-norm {self.sup_norm_path} = {float(self.sup_norm_path):.16g}, "
            f"recursion {self.recursion_path} = {float(self.recursion_path):.16g}, "
            f"|<J_m, phi>| = {float(abs(self.resonance_path)):.16g}"
        )


def cross_validate(k: int, m: int, tol: float = 1e-10) -> CrossValidation:
    """Compute ``D_{k,m}`` from the sup-norm of the extremal function, from the
    recursion, and as ``|<J_m, c_k'>|`` (odd m) or ``|<J_m, s_k'>|`` (even m)."""
    _check_km(k, m)
    sup = sup_norm_exact(make_extremal(k, m))
    phi = make_c_prime(k) if m % 2 else make_s_prime(k)
    res = inner_product_exact(make_J(m), phi)
    return CrossValidation(k, m, sup, D_exact(k, m), res, tol)
