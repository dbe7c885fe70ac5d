"""Univariate polynomials with exact rational coefficients.

Root isolation uses Sturm sequences over the rationals, so every root count
is exact; refinement is plain bisection on ``Fraction`` endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Rational = Union[int, Fraction]


def _trim(coeffs: Iterable[Rational]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial ``sum(coeffs[i] * x**i)``; ``coeffs`` ascending, no trailing zeros."""

    coeffs: tuple[Fraction, ...] = ()

    def __init__(self, coeffs: Iterable[Rational] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def constant(cls, c: Rational) -> RationalPoly:
        return cls([c])

    @classmethod
    def x(cls) -> RationalPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x):
        """Horner evaluation in floating point; ``x`` may be a numpy array."""
        acc = 0.0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def __add__(self, other: RationalPoly) -> RationalPoly:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return RationalPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> RationalPoly:
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other: RationalPoly) -> RationalPoly:
        return self + (-other)

    def __mul__(self, other) -> RationalPoly:
        if not isinstance(other, RationalPoly):
            return RationalPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> RationalPoly:
        return RationalPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def integral(self) -> RationalPoly:
        """Antiderivative vanishing at 0."""
        return RationalPoly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def definite_integral(self, a: Rational, b: Rational) -> Fraction:
        F = self.integral()
        return F(Fraction(b)) - F(Fraction(a))

    def shift(self, h: Rational) -> RationalPoly:
        """Return ``q(x) = p(x + h)`` (Taylor shift)."""
        h = Fraction(h)
        out: list[Fraction] = []
        for c in reversed(self.coeffs):
            # out <- out * (x + h) + c
            nxt = [Fraction(0)] * (len(out) + 1)
            for i, a in enumerate(out):
                nxt[i] += a * h
                nxt[i + 1] += a
            nxt[0] += c
            out = nxt
        return RationalPoly(out)

    def scale(self, s: Rational) -> RationalPoly:
        """Return ``q(x) = p(s * x)``."""
        s = Fraction(s)
        return RationalPoly(c * s**i for i, c in enumerate(self.coeffs))

    def divmod(self, other: RationalPoly) -> tuple[RationalPoly, RationalPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        while len(rem) - 1 >= dq and rem:
            shift = len(rem) - 1 - dq
            f = rem[-1] / lead
            quot[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return RationalPoly(quot), RationalPoly(rem)

    def __floordiv__(self, other: RationalPoly) -> RationalPoly:
        return self.divmod(other)[0]

    def __mod__(self, other: RationalPoly) -> RationalPoly:
        return self.divmod(other)[1]

    def monic(self) -> RationalPoly:
        return self * (1 / self.leading) if self.coeffs else self

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"RationalPoly({[str(c) for c in self.coeffs]})"


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def square_free(p: RationalPoly) -> RationalPoly:
    """Product of the distinct irreducible factors of ``p`` (monic)."""
    if p.degree <= 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def sturm_sequence(p: RationalPoly) -> list[RationalPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _sign_changes(seq: Sequence[RationalPoly], x: Fraction) -> int:
    signs = [s for s in (q(x) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def isolate_roots(p: RationalPoly, lo: Rational, hi: Rational) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(a, b)``, each holding exactly one distinct root of ``p``
    in the open interval ``(lo, hi)``.

    A root that lands exactly on a bisection point is returned as ``(r, r)``.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    q = square_free(p)
    if q(lo) == 0:
        q = q // RationalPoly([-lo, 1])
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)
    out: list[tuple[Fraction, Fraction]] = []

    def rec(a: Fraction, b: Fraction) -> None:
        # Sturm counts distinct roots in (a, b]; q(a) != 0 holds throughout
        n = _sign_changes(seq, a) - _sign_changes(seq, b) - (1 if q(b) == 0 else 0)
        if n == 0:
            return
        if n == 1:
            out.append((a, b))
            return
        mid = (a + b) / 2
        rec(a, mid)
        if q(mid) == 0:
            out.append((mid, mid))
        rec(mid, b)

    rec(lo, hi)
    return out


def refine_root(p: RationalPoly, a: Fraction, b: Fraction, width: float = 1e-15) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval by bisection until ``b - a <= width``
    (relative to ``max(1, |a|)``). ``p`` must have exactly one distinct root
    in the open interval ``(a, b)``."""
    if a == b:
        return a, b
    q = square_free(p)
    # the target root lies strictly inside (a, b); endpoint roots are other roots
    for end in (a, b):
        if q(end) == 0:
            q = q // RationalPoly([-end, 1])
    fa = q(a)
    tol = Fraction(width) * max(1, abs(a))
    while b - a > tol:
        mid = (a + b) / 2
        fm = q(mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    return a, b


class Root(NamedTuple):
    value: Union[Fraction, float]
    exact: bool
    lo: Fraction
    hi: Fraction


def real_roots(p: RationalPoly, lo: Rational, hi: Rational, max_denominator: int = 10**6) -> list[Root]:
    """Distinct real roots of ``p`` in the open interval ``(lo, hi)``.

    ``value`` is a ``Fraction`` when the root is rational with a small
    denominator (confirmed by exact evaluation); otherwise it is the float
    midpoint of a certified isolating interval ``[lo, hi]`` of width ~1e-16.
    """
    roots: list[Root] = []
    q = square_free(p)
    for a, b in isolate_roots(p, lo, hi):
        a, b = refine_root(q, a, b, width=1e-12)
        if a == b:
            roots.append(Root(a, True, a, b))
            continue
        guess = ((a + b) / 2).limit_denominator(max_denominator)
        if a <= guess <= b and q(guess) == 0:
            roots.append(Root(guess, True, guess, guess))
            continue
        a, b = refine_root(q, a, b, width=1e-16)
        roots.append(Root(float((a + b) / 2), a == b, a, b))
    return roots


def is_simple_root(p: RationalPoly, root: Root) -> bool:
    """True iff ``root`` is a simple root of ``p``.

    A root is multiple exactly when it is also a root of ``gcd(p, p')``.
    """
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return True
    if root.lo == root.hi:
        return g(root.lo) != 0
    if g(root.lo) == 0 or g(root.hi) == 0:
        return False
    return not isolate_roots(g, root.lo, root.hi)
