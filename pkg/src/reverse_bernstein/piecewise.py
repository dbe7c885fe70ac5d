"""Exact piecewise-polynomial functions on the circle.

An angle is written ``x = pi * t`` with ``t`` in (-1, 1]. A function is stored
as ``f(x) = pi**d * q_i(u)`` on its ``i``-th piece, where ``u = t - b_i`` is
the offset from the piece's breakpoint ``b_i`` (in units of pi) and ``q_i``
has rational coefficients. The common power ``d`` is what makes the functions
here exact: c_k, s_k, J_m and their primitives are all homogeneous in pi.

Piece ``i`` covers ``[b_i, b_{i+1})``; the last piece wraps through pi to
``b_0 + 2``. At a breakpoint the value is the right limit unless an isolated
point value overrides it (``point_values``).
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

import numpy as np

from .fourier import DomainError, TrigSeries, normalize_angle
from .polynomial import RationalPoly, is_simple_root, real_roots

Number = Union[Fraction, float]


@dataclass(frozen=True)
class PiScaled:
    """The real number ``coeff * pi**pi_power``; exact when ``coeff`` is a Fraction."""

    coeff: Number
    pi_power: int

    @property
    def exact(self) -> bool:
        return isinstance(self.coeff, Fraction)

    def __float__(self) -> float:
        return float(self.coeff) * np.pi**self.pi_power

    def __mul__(self, other: PiScaled) -> PiScaled:
        return PiScaled(self.coeff * other.coeff, self.pi_power + other.pi_power)

    def inverse(self) -> PiScaled:
        return PiScaled(1 / self.coeff, -self.pi_power)

    def __abs__(self) -> PiScaled:
        return PiScaled(abs(self.coeff), self.pi_power)

    def as_tuple(self) -> tuple:
        c = self.coeff
        return (str(c) if isinstance(c, Fraction) else float(c), self.pi_power)

    def __str__(self) -> str:
        return f"{self.coeff} * pi^{self.pi_power}"


class ZeroPoint(NamedTuple):
    """A zero (or a sign-changing jump) of a piecewise function.

    ``t`` is the angle in units of pi (a Fraction when exact). ``jump`` marks a
    value discontinuity at the point; ``is_zero`` is False for a jump across
    zero whose stored value is not 0.
    """

    t: Number
    simple: bool
    sign_change: bool
    jump: bool
    is_zero: bool = True

    @property
    def angle(self) -> float:
        return float(self.t) * np.pi


def _to_t(x) -> np.ndarray:
    return np.asarray(normalize_angle(x)) / np.pi


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _side_sign(q: RationalPoly, at: Fraction, side: int) -> int:
    """Sign of ``q`` just to the right (side=+1) or left (side=-1) of ``at``."""
    d = q
    n = 0
    while not d.is_zero():
        v = d(at)
        if v != 0:
            return _sign(v) * (side**n)
        d = d.derivative()
        n += 1
    return 0


@dataclass(frozen=True)
class CirclePiecewisePoly:
    breaks: tuple[Fraction, ...]
    pieces: tuple[RationalPoly, ...]
    pi_power: int = 0
    continuity: int = -1
    point_values: tuple[tuple[Fraction, Fraction], ...] = ()
    _float_breaks: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        breaks = tuple(Fraction(b) for b in self.breaks)
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(
            self, "point_values", tuple(sorted((Fraction(t), Fraction(v)) for t, v in self.point_values))
        )
        if not breaks or len(breaks) != len(self.pieces):
            raise ValueError("need one piece per breakpoint")
        if any(b <= a for a, b in zip(breaks, breaks[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if not (-1 < breaks[0] and breaks[-1] <= 1):
            raise ValueError("breakpoints must lie in (-1, 1] (units of pi)")
        for t, _ in self.point_values:
            if t not in breaks:
                raise ValueError("point values are only allowed at breakpoints")
        max_deg = max(q.degree for q in self.pieces)
        for i in range(len(breaks)):
            left, right = self._left_poly(i), self.pieces[i]
            L = self.lengths[i - 1]
            for r in range(min(self.continuity, max_deg) + 1):
                if left(L) != right(Fraction(0)):
                    raise ValueError(f"derivative {r} jumps at t={breaks[i]} despite continuity={self.continuity}")
                left, right = left.derivative(), right.derivative()
        object.__setattr__(self, "_float_breaks", np.array([float(b) for b in breaks]))

    # -- geometry ------------------------------------------------------------

    @property
    def n_pieces(self) -> int:
        return len(self.breaks)

    @property
    def lengths(self) -> tuple[Fraction, ...]:
        b = self.breaks
        return tuple(b[i + 1] - b[i] for i in range(len(b) - 1)) + (b[0] + 2 - b[-1],)

    def _left_poly(self, i: int) -> RationalPoly:
        return self.pieces[i - 1]

    def locate(self, t: Fraction) -> tuple[int, Fraction]:
        """Piece index and local offset ``u`` for the exact position ``t``."""
        t = Fraction(t)
        t = t - 2 * ((t + 1) // 2) if not (-1 < t <= 1) else t
        if t == -1:
            t = Fraction(1)
        i = bisect.bisect_right(self.breaks, t) - 1
        if i < 0:
            return self.n_pieces - 1, t + 2 - self.breaks[-1]
        return i, t - self.breaks[i]

    # -- evaluation ----------------------------------------------------------

    def value_at(self, t: Fraction) -> Fraction:
        """Exact coefficient of ``pi**pi_power`` at the angle ``pi * t``."""
        t = Fraction(t)
        i, u = self.locate(t)
        for bt, v in self.point_values:
            if u == 0 and bt == self.breaks[i]:
                return v
        return self.pieces[i](u)

    def __call__(self, x):
        """Float evaluation at angle(s) ``x`` (radians)."""
        t = _to_t(x)
        ts = np.atleast_1d(t)
        idx = np.searchsorted(self._float_breaks, ts, side="right") - 1
        u = np.where(idx < 0, ts + 2 - self._float_breaks[-1], ts - self._float_breaks[np.maximum(idx, 0)])
        idx = np.where(idx < 0, self.n_pieces - 1, idx)
        out = np.empty_like(ts)
        for i, q in enumerate(self.pieces):
            sel = idx == i
            if np.any(sel):
                out[sel] = q.eval_float(u[sel])
        for bt, v in self.point_values:
            out[ts == float(bt)] = float(v)
        out *= np.pi**self.pi_power
        return out[0] if np.ndim(t) == 0 else out

    # -- algebra -------------------------------------------------------------

    def scaled(self, c: Fraction) -> CirclePiecewisePoly:
        c = Fraction(c)
        return CirclePiecewisePoly(
            self.breaks,
            [q * c for q in self.pieces],
            self.pi_power,
            self.continuity,
            [(t, v * c) for t, v in self.point_values],
        )

    def __neg__(self) -> CirclePiecewisePoly:
        return self.scaled(Fraction(-1))

    def refine(self, breaks: Iterable[Fraction]) -> CirclePiecewisePoly:
        """Same function on a finer set of breakpoints (must contain the current ones)."""
        new = sorted(set(Fraction(b) for b in breaks) | set(self.breaks))
        pieces = []
        for b in new:
            i, u = self.locate(b)
            pieces.append(self.pieces[i].shift(u))
        return CirclePiecewisePoly(new, pieces, self.pi_power, self.continuity, self.point_values)

    def __add__(self, other: CirclePiecewisePoly) -> CirclePiecewisePoly:
        if self.pi_power != other.pi_power:
            raise ValueError("can only add functions with the same power of pi")
        grid = sorted(set(self.breaks) | set(other.breaks))
        a, b = self.refine(grid), other.refine(grid)
        pts = {t: a.value_at(t) + b.value_at(t) for t, _ in a.point_values + b.point_values}
        return CirclePiecewisePoly(
            grid,
            [p + q for p, q in zip(a.pieces, b.pieces)],
            self.pi_power,
            min(self.continuity, other.continuity),
            pts.items(),
        )

    def __sub__(self, other: CirclePiecewisePoly) -> CirclePiecewisePoly:
        return self + (-other)

    def mean(self) -> PiScaled:
        """``(1/2pi) int f dx``, exactly."""
        total = sum((q.definite_integral(0, L) for q, L in zip(self.pieces, self.lengths)), Fraction(0))
        return PiScaled(total / 2, self.pi_power)

    def is_even(self) -> bool:
        return self._parity_check(1)

    def is_odd(self) -> bool:
        return self._parity_check(-1)

    def _parity_check(self, sign: int) -> bool:
        # f(-t) = sign * f(t) as piecewise polynomials on a symmetric grid
        grid = sorted(set(self.breaks) | {-b if b != 1 else Fraction(1) for b in self.breaks})
        f = self.refine(grid)
        for i, b in enumerate(grid):
            L = f.lengths[i]
            # mirror of [b, b+L) is (-b-L, -b]
            j, u0 = f.locate(-b - L)
            if u0 != 0:
                return False
            mirrored = f.pieces[j].shift(L).scale(-1)  # q_j(L - u)
            if f.pieces[i] != mirrored * sign:
                return False
        return True

    # -- serialisation -------------------------------------------------------

    def to_json_obj(self) -> dict:
        d = self.pi_power

        def frac(c: Fraction, p: int) -> list:
            return [c.numerator, c.denominator, p]

        return {
            "breakpoints": [frac(b, 1) for b in self.breaks],
            "pieces": [[frac(c, d - n) for n, c in enumerate(q.coeffs)] for q in self.pieces],
            "continuity": self.continuity,
            "point_values": [[frac(t, 1), frac(v, d)] for t, v in self.point_values],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> CirclePiecewisePoly:
        """Inverse of ``to_json_obj``.

        Piece terms are coefficients of ``(x - x_i)**n``; they must share a
        common degree of homogeneity ``pi_power + n`` in pi.
        """
        breaks = []
        for num, den, p in obj["breakpoints"]:
            if p != 1:
                raise ValueError("breakpoints must be rational multiples of pi")
            breaks.append(Fraction(num, den))
        d = None
        pieces = []
        for terms in obj["pieces"]:
            coeffs = []
            for n, (num, den, p) in enumerate(terms):
                c = Fraction(num, den)
                if c != 0:
                    if d is None:
                        d = p + n
                    elif p + n != d:
                        raise ValueError("piece terms are not homogeneous in pi")
                coeffs.append(c)
            pieces.append(RationalPoly(coeffs))
        if d is None:
            d = 0
        pts = [(Fraction(t[0], t[1]), Fraction(v[0], v[1])) for t, v in obj.get("point_values", [])]
        return cls(breaks, pieces, d, int(obj.get("continuity", -1)), pts)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> CirclePiecewisePoly:
        return cls.from_json_obj(json.loads(text))


# -- constructors ---------------------------------------------------------------


def constant(c: Fraction, pi_power: int = 0) -> CirclePiecewisePoly:
    return CirclePiecewisePoly([Fraction(1)], [RationalPoly.constant(c)], pi_power, continuity=10**6)


def zero_function() -> CirclePiecewisePoly:
    return constant(Fraction(0))


# -- operations ---------------------------------------------------------------


def evaluate_exact(f: CirclePiecewisePoly, x) -> float:
    """Value at angle ``x``; right limit at jumps unless a point value is stored."""
    return f(x)


def derivative(f: CirclePiecewisePoly, order: int = 1) -> CirclePiecewisePoly:
    """Piecewise derivative (a.e.); right limits at corners, point values dropped."""
    for _ in range(order):
        f = CirclePiecewisePoly(
            f.breaks, [q.derivative() for q in f.pieces], f.pi_power - 1, max(f.continuity - 1, -1)
        )
    return f


def antiderivative_zero_mean(f: CirclePiecewisePoly) -> CirclePiecewisePoly:
    """The continuous primitive with zero average (the operator I)."""
    if f.mean().coeff != 0:
        raise DomainError(f"antiderivative needs a zero-mean function, mean is {f.mean()}")
    prims = []
    start = Fraction(0)
    for q, L in zip(f.pieces, f.lengths):
        Q = q.integral() + RationalPoly.constant(start)
        prims.append(Q)
        start = Q(L)
    shifted = CirclePiecewisePoly(f.breaks, prims, f.pi_power + 1, -1)
    avg = shifted.mean().coeff
    prims = [Q - RationalPoly.constant(avg) for Q in prims]
    return CirclePiecewisePoly(f.breaks, prims, f.pi_power + 1, f.continuity + 1)


def iterate_antiderivative(f: CirclePiecewisePoly, m: int) -> CirclePiecewisePoly:
    for _ in range(m):
        f = antiderivative_zero_mean(f)
    return f


def _abs_max_on_piece(q: RationalPoly, L: Fraction) -> tuple[Number, bool]:
    cands: list[tuple[float, Number, bool]] = []
    for u in (Fraction(0), L):
        v = abs(q(u))
        cands.append((float(v), v, True))
    dq = q.derivative()
    if not dq.is_zero():
        for r in real_roots(dq, 0, L):
            if r.exact:
                v = abs(q(r.value))
                cands.append((float(v), v, True))
            else:
                v = float(abs(q((r.lo + r.hi) / 2)))
                cands.append((v, v, False))
    best = max(cands, key=lambda c: c[0])
    return best[1], best[2]


def sup_norm_exact(f: CirclePiecewisePoly) -> PiScaled:
    """Maximum of ``|f|`` over the closure of each piece.

    Candidates are the piece ends and the real roots of each piece's
    derivative; rational critical points are found exactly, the rest are
    certified by Sturm isolation and bisection to ~1e-16. Isolated point
    values never raise the norm.
    """
    best: tuple[float, Number] = (-1.0, Fraction(0))
    for q, L in zip(f.pieces, f.lengths):
        v, _ = _abs_max_on_piece(q, L)
        if float(v) > best[0]:
            best = (float(v), v)
    return PiScaled(best[1], f.pi_power)


def _piece_abs_integral(q: RationalPoly, L: Fraction) -> Number:
    if q.is_zero():
        return Fraction(0)
    Q = q.integral()
    pts: list[Number] = [Fraction(0)]
    exact = True
    for r in real_roots(q, 0, L):
        if r.exact:
            pts.append(r.value)
        else:
            exact = False
            pts.append((r.lo + r.hi) / 2)
    pts.append(L)
    total = sum((abs(Q(b) - Q(a)) for a, b in zip(pts, pts[1:])), Fraction(0))
    return total if exact else float(total)


def l1_norm_exact(f: CirclePiecewisePoly) -> PiScaled:
    """``(1/2pi) int |f| dx``, splitting each piece at its certified real roots."""
    total: Number = Fraction(0)
    for q, L in zip(f.pieces, f.lengths):
        total = total + _piece_abs_integral(q, L)
    return PiScaled(total / 2, f.pi_power)


def inner_product_exact(f: CirclePiecewisePoly, g: CirclePiecewisePoly) -> PiScaled:
    """``(1/2pi) int f g dx`` for real piecewise functions, exactly."""
    grid = sorted(set(f.breaks) | set(g.breaks))
    a, b = f.refine(grid), g.refine(grid)
    total = sum(
        ((p * q).definite_integral(0, L) for p, q, L in zip(a.pieces, b.pieces, a.lengths)),
        Fraction(0),
    )
    return PiScaled(total / 2, f.pi_power + g.pi_power)


def signed_zero_set(f: CirclePiecewisePoly) -> list[ZeroPoint]:
    """All zeros on the circle, plus sign changes across jumps.

    Interior zeros of a piece are isolated exactly (Sturm) and flagged simple
    iff they are not roots of ``gcd(q, q')``. At a breakpoint:

    * a value jump whose stored point value is 0 is a simple zero iff the
      sign changes across it (so the sawtooth ``J_1`` has a simple zero at pi);
    * a continuous zero where the one-sided derivatives differ is never simple
      (so a corner zero such as ``J_2 - p`` at pi is not simple);
    * a jump across zero with a nonzero stored value is reported with
      ``is_zero=False``.
    """
    out: list[ZeroPoint] = []
    pvals = dict(f.point_values)
    for i, (q, L) in enumerate(zip(f.pieces, f.lengths)):
        if q.is_zero():
            raise DomainError(f"piece {i} is identically zero")
        b = f.breaks[i]
        left = f.pieces[i - 1]
        Lp = f.lengths[i - 1]
        lv, rv = left(Lp), q(Fraction(0))
        value = pvals.get(b, rv)
        sl, sr = _side_sign(left, Lp, -1), _side_sign(q, Fraction(0), +1)
        change = sl * sr < 0
        if lv != rv:
            if value == 0:
                out.append(ZeroPoint(b, change, change, True))
            elif change:
                out.append(ZeroPoint(b, False, True, True, is_zero=False))
        elif value == 0:
            dl, dr = left.derivative()(Lp), q.derivative()(Fraction(0))
            out.append(ZeroPoint(b, dl == dr and dr != 0, change, False))
        for r in real_roots(q, 0, L):
            t = b + r.value if r.exact else float(b) + r.value
            simple = is_simple_root(q, r)
            if r.exact:
                ch = _side_sign(q, r.value, -1) * _side_sign(q, r.value, +1) < 0
            else:
                ch = _sign(q(r.lo)) * _sign(q(r.hi)) < 0
            out.append(ZeroPoint(_wrap_t(t), simple, ch, False))
    out.sort(key=lambda z: float(z.t))
    return out


def _wrap_t(t: Number) -> Number:
    if t > 1:
        return t - 2
    return t


def _poly_exp_integral(derivs0: np.ndarray, derivsL: np.ndarray, L: float, a: np.ndarray) -> np.ndarray:
    """``int_0^L q(u) e^{a u} du`` for nonzero ``a`` (vector), via repeated integration by parts."""
    s0 = np.zeros_like(a)
    sL = np.zeros_like(a)
    sign = 1.0
    apow = a.copy()
    for d0, dL in zip(derivs0, derivsL):
        s0 = s0 + sign * d0 / apow
        sL = sL + sign * dL / apow
        sign = -sign
        apow = apow * a
    return np.exp(a * L) * sL - s0


def to_trig_series(f: CirclePiecewisePoly, band: int) -> TrigSeries:
    """Fourier coefficients ``(1/2pi) int f e^{-ijx} dx`` for ``|j| <= band``,
    computed piece by piece in closed form."""
    j = np.arange(-band, band + 1)
    nz = j != 0
    a = -1j * np.pi * j[nz].astype(float)
    out = np.zeros(2 * band + 1, dtype=complex)
    for q, b, L in zip(f.pieces, f.breaks, f.lengths):
        if q.is_zero():
            continue
        derivs0, derivsL = [], []
        d = q
        while not d.is_zero():
            derivs0.append(float(d(Fraction(0))))
            derivsL.append(float(d(L)))
            d = d.derivative()
        integ = _poly_exp_integral(np.array(derivs0), np.array(derivsL), float(L), a)
        out[nz] += np.exp(-1j * np.pi * j[nz] * float(b)) * integ
    out *= np.pi**f.pi_power / 2
    out[band] = float(f.mean())  # exact, so a zero mean stays exactly zero
    return TrigSeries(out, is_real=True)
