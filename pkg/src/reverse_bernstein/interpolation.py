"""Parity-preserving trigonometric interpolation of the kernels J_m.

For odd m the interpolant lives in the odd polynomials of degree k-1 and
matches J_m at the multiples of pi/k; for even m it lives in the even ones
and matches at the odd multiples of pi/(2k). The residual ``J_m - p`` then
changes sign exactly where the square wave c_k' (odd m) or s_k' (even m)
does, which makes ``p`` the best L1 approximation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .constants import D_exact
from .fourier import TWO_PI, DomainError, TrigSeries, _primitive_values, derivative as trig_derivative, evaluate, normalize_angle
from .piecewise import CirclePiecewisePoly, derivative as pw_derivative, sup_norm_exact
from .waves import make_c_prime, make_J, make_s_prime


@dataclass(frozen=True)
class NodeSet:
    """Interpolation nodes ``A`` in (0, pi) and the full prescribed zero set.

    Angles are stored exactly as rational multiples of pi.
    """

    k: int
    m_parity: str
    nodes: tuple[Fraction, ...]
    full_zero_set: tuple[Fraction, ...]

    @classmethod
    def for_kernel(cls, k: int, m: int) -> NodeSet:
        if k < 1 or m < 1:
            raise ValueError("k and m must be positive integers")
        if m % 2:
            nodes = tuple(Fraction(j, k) for j in range(1, k))
            full = sorted(set(nodes) | {-a for a in nodes} | {Fraction(0), Fraction(1)})
            return cls(k, "odd", nodes, tuple(full))
        nodes = tuple(Fraction(2 * j + 1, 2 * k) for j in range(k))
        full = sorted(set(nodes) | {-a for a in nodes})
        return cls(k, "even", nodes, tuple(full))

    @property
    def node_angles(self) -> np.ndarray:
        return np.array([float(a) for a in self.nodes]) * np.pi

    @property
    def zero_angles(self) -> np.ndarray:
        return np.array([float(a) for a in self.full_zero_set]) * np.pi


def _check_distinct(angles: np.ndarray) -> None:
    a = np.sort(np.asarray(angles, dtype=float))
    if len(a) > 1 and np.any(np.diff(a) <= 0):
        raise DomainError("interpolation nodes must be pairwise distinct")


def _as_angles(nodes) -> np.ndarray:
    if isinstance(nodes, NodeSet):
        return nodes.node_angles
    return np.asarray(nodes, dtype=float)


def lagrange_even(nodes, values: Sequence[float]) -> TrigSeries:
    """Even real trigonometric polynomial of degree ``len(nodes) - 1`` taking
    ``values`` at ``nodes`` in (0, pi), built from the product basis
    ``prod_{b != a} (cos x - cos b)``."""
    a = _as_angles(nodes)
    values = np.asarray(values, dtype=float)
    if len(a) != len(values) or len(a) == 0:
        raise ValueError("need one value per node and at least one node")
    if np.any((a <= 0) | (a >= np.pi)):
        raise DomainError("even interpolation nodes must lie in (0, pi)")
    _check_distinct(a)
    cos_a = np.cos(a)
    n = len(a)
    out = np.zeros(2 * n - 1, dtype=complex)
    for i in range(n):
        basis = np.array([1.0 + 0j])
        for j in range(n):
            if j != i:
                # cos x - cos b as Laurent coefficients at frequencies -1, 0, 1
                basis = np.convolve(basis, [0.5, -cos_a[j], 0.5])
        denom = np.prod([cos_a[i] - cos_a[j] for j in range(n) if j != i])
        out += values[i] * basis / denom
    return TrigSeries(out).realified()


def lagrange_odd(points, values: Sequence[float], symmetrize: bool = True) -> TrigSeries:
    """Odd real trigonometric polynomial matching ``values`` on ``A u (-A) u {pi}``.

    Uses the product basis ``e^{-inx} prod_{zeta != z} (e^{ix} - e^{i zeta})``
    with ``n = |A|``. The values must be odd-symmetric with 0 at pi; a point at
    0 (with value 0) may be included and is implied by oddness. With
    ``symmetrize=False`` the raw complex construction is returned.
    """
    pts = normalize_angle(np.asarray(points, dtype=float))
    vals = np.asarray(values, dtype=float)
    if len(pts) != len(vals):
        raise ValueError("need one value per point")
    _check_distinct(pts)
    scale = max(1.0, float(np.max(np.abs(vals), initial=0.0)))
    at_zero = np.isclose(pts, 0.0, atol=1e-14)
    if np.any(at_zero) and abs(vals[at_zero][0]) > 1e-12 * scale:
        raise DomainError("an odd interpolant vanishes at 0")
    pts, vals = pts[~at_zero], vals[~at_zero]
    at_pi = np.isclose(pts, np.pi, atol=1e-14)
    if not np.any(at_pi):
        raise DomainError("the point set must contain pi")
    if abs(vals[at_pi][0]) > 1e-12 * scale:
        raise DomainError("an odd interpolant vanishes at pi")
    pos = pts[(pts > 0) & ~at_pi]
    neg = pts[pts < 0]
    if len(pos) != len(neg) or not np.allclose(np.sort(pos), np.sort(-neg), rtol=0, atol=1e-13):
        raise DomainError("points must be symmetric: A u (-A) u {pi}")
    for x, v in zip(pts, vals):
        partner = vals[np.argmin(np.abs(pts + x))] if not np.isclose(x, np.pi) else -v
        if abs(partner + v) > 1e-12 * scale:
            raise DomainError("values must be odd-symmetric")
    n = len(pos)
    w = np.exp(1j * pts)
    out = np.zeros(2 * n + 1, dtype=complex)
    for i, z in enumerate(pts):
        if vals[i] == 0.0:
            continue
        poly = np.array([1.0 + 0j])  # ascending powers of w
        for j in range(len(pts)):
            if j != i:
                poly = np.convolve(poly, [-w[j], 1.0])
        # value of the basis at z, including the e^{-inz} factor
        denom = np.exp(-1j * n * z) * np.prod([w[i] - w[j] for j in range(len(pts)) if j != i])
        out += vals[i] * poly / denom
    p = TrigSeries(out)
    return p.realified() if symmetrize else p


@lru_cache(maxsize=None)
def interpolate_J(k: int, m: int) -> TrigSeries:
    """The interpolant of ``J_m`` in the parity-matched polynomials of degree ``<= k-1``."""
    ns = NodeSet.for_kernel(k, m)
    J = make_J(m)
    scale = np.pi**J.pi_power
    if ns.m_parity == "odd":
        pts = [t for t in ns.full_zero_set if t != 0]
        vals = [float(J.value_at(t)) * scale for t in pts]
        return lagrange_odd([float(t) * np.pi for t in pts], vals).with_band(k - 1)
    vals = [float(J.value_at(t)) * scale for t in ns.nodes]
    return lagrange_even(ns, vals).with_band(k - 1)


def collocation_matrix(k: int, m: int) -> np.ndarray:
    """Square system for the parity basis at the nodes: ``sin(jx)``, j = 1..k-1
    (odd m) or ``cos(jx)``, j = 0..k-1 (even m). Nonsingular iff the
    interpolant is unique."""
    ns = NodeSet.for_kernel(k, m)
    x = ns.node_angles
    if ns.m_parity == "odd":
        return np.sin(np.outer(x, np.arange(1, k)))
    return np.cos(np.outer(x, np.arange(0, k)))


# -- residual J_m - p -----------------------------------------------------------


@dataclass(frozen=True)
class KernelResidual:
    """``J_m - p`` on the circle.

    ``J_m`` has a single piece with its breakpoint at pi, so on (-pi, pi) the
    residual is ``g(x) = Q(x) - p(x)`` with ``Q`` the piece polynomial, which
    extends smoothly to the closed interval [-pi, pi].
    """

    k: int
    m: int
    p: TrigSeries
    J: CirclePiecewisePoly = field(repr=False)

    @classmethod
    def build(cls, k: int, m: int, p: TrigSeries | None = None) -> KernelResidual:
        return cls(k, m, interpolate_J(k, m) if p is None else p, make_J(m))

    def _Q(self, x, order: int = 0):
        # piece polynomial in u = x/pi + 1 in [0, 2]
        q = self.J.pieces[0]
        for _ in range(order):
            q = q.derivative()
        u = np.asarray(x, dtype=float) / np.pi + 1.0
        return q.eval_float(u) * np.pi ** (self.J.pi_power - order)

    def g(self, x, order: int = 0):
        """Smooth extension on [-pi, pi] (no wrapping)."""
        p = self.p if order == 0 else trig_derivative(self.p, order)
        xs = np.asarray(x, dtype=float)
        pv = (np.exp(1j * np.multiply.outer(xs, p.frequencies)) @ p.coeffs).real
        return self._Q(xs, order) - pv

    def __call__(self, x):
        """Circle function with ``J_m``'s convention at pi."""
        return self.J(x) - evaluate(self.p, x)

    def derivative_bound(self, order: int) -> float:
        """Upper bound on ``|g^{(order)}|`` over [-pi, pi]."""
        Jd = pw_derivative(self.J, order) if order else self.J
        j = np.abs(self.p.frequencies).astype(float)
        return float(sup_norm_exact(Jd)) + float(np.sum(j**order * np.abs(self.p.coeffs)))


@dataclass
class ZeroStructureReport:
    k: int
    m: int
    expected: list[Fraction]
    zeros: list[Fraction]
    simple: list[bool]
    sign_alternates: bool
    matches_square_wave: bool
    certified_zero_free: bool
    residual_at_zeros: float
    messages: list[str] = field(default_factory=list)

    @property
    def n_zeros(self) -> int:
        return len(self.zeros)

    @property
    def bound(self) -> int:
        # 2n + 2 for polynomials of degree n = k - 1
        return 2 * self.k

    @property
    def passed(self) -> bool:
        return (
            self.certified_zero_free
            and self.n_zeros == self.bound
            and all(self.simple)
            and self.sign_alternates
            and self.matches_square_wave
        )

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "zeros_over_pi": [str(z) for z in self.zeros],
            "n_zeros": self.n_zeros,
            "bound": self.bound,
            "all_simple": all(self.simple),
            "sign_alternates": self.sign_alternates,
            "matches_square_wave": self.matches_square_wave,
            "certified": self.certified_zero_free,
            "max_residual_at_zeros": self.residual_at_zeros,
            "passed": self.passed,
            "messages": list(self.messages),
        }


def _certify_no_zero(g, a: float, b: float, lipschitz: float, slack: float, max_depth: int = 48) -> bool:
    """True if ``g`` provably has no zero on [a, b], using ``|g(mid)| > L h / 2``."""
    lo, hi = np.array([a]), np.array([b])
    for _ in range(max_depth):
        if len(lo) == 0:
            return True
        mid = 0.5 * (lo + hi)
        ok = np.abs(g(mid)) > lipschitz * (hi - lo) / 2 + slack
        lo, hi = lo[~ok], hi[~ok]
        if len(lo) > 200_000:
            return False
        mid = mid[~ok]
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
    return len(lo) == 0


def verify_zero_structure(k: int, m: int, p: TrigSeries | None = None) -> ZeroStructureReport:
    """Certify that ``J_m - p`` vanishes exactly on the prescribed 2k points,
    each zero simple, with alternating signs matching the square wave.

    Around each expected zero ``z`` the residual is strictly monotone on
    ``|x - z| <= |g'(z)| / (2 M2)`` (``M2`` bounds ``|g''|``) and changes sign
    there; every other arc is shown zero-free by Lipschitz bisection.
    ``p`` overrides the interpolant (for checking other candidates).
    """
    R = KernelResidual.build(k, m, p)
    ns = NodeSet.for_kernel(k, m)
    expected = list(ns.full_zero_set)
    msgs: list[str] = []
    M1 = R.derivative_bound(1)
    M2 = R.derivative_bound(2)
    scale = float(sup_norm_exact(R.J)) + float(np.sum(np.abs(R.p.coeffs)))
    slack = 64 * np.finfo(float).eps * scale

    zeros: list[Fraction] = []
    simple: list[bool] = []
    excluded: list[tuple[float, float]] = []
    worst = 0.0
    jump_at_pi = R.J.pieces[0](Fraction(0)) != R.J.pieces[0](Fraction(2))

    for t in expected:
        x = float(t) * np.pi
        if t == 1 and jump_at_pi:
            # value jump through the stored value J_1(pi) = 0
            left, right = float(R.g(np.pi)), float(R.g(-np.pi))
            at = float(R.J.value_at(t)) * np.pi**R.J.pi_power - float(evaluate(R.p, np.pi))
            worst = max(worst, abs(at))
            ok = abs(at) <= 1e-10 * scale and left * right < 0
            zeros.append(t)
            simple.append(bool(ok))
            if not ok:
                msgs.append(f"no sign-changing jump zero at pi (left {left}, right {right}, value {at})")
            continue
        val = float(R.g(x))
        d1 = float(R.g(x, 1))
        worst = max(worst, abs(val))
        delta = abs(d1) / (2 * M2) if M2 > 0 else np.pi
        delta = min(delta, np.pi / (4 * k))
        if t == 1:
            # pi: one-sided neighbourhoods at both ends of [-pi, pi]
            lo_val, hi_val = float(R.g(np.pi - delta)), float(R.g(-np.pi + delta))
            excluded += [(np.pi - delta, np.pi), (-np.pi, -np.pi + delta)]
        else:
            lo_val, hi_val = float(R.g(x - delta)), float(R.g(x + delta))
            excluded.append((x - delta, x + delta))
        ok = d1 != 0 and lo_val * hi_val < 0 and abs(val) <= 1e-10 * scale
        zeros.append(t)
        simple.append(bool(ok))
        if not ok:
            msgs.append(f"zero at {t}*pi not certified simple (g={val:.3g}, g'={d1:.3g})")

    # arcs between the excluded neighbourhoods must be zero-free
    excluded.sort()
    gaps = []
    cur = -np.pi
    for a, b in excluded:
        if a > cur:
            gaps.append((cur, a))
        cur = max(cur, b)
    if cur < np.pi:
        gaps.append((cur, np.pi))
    certified = all(_certify_no_zero(R.g, a, b, M1, slack) for a, b in gaps)
    if not certified:
        msgs.append("could not certify the absence of further zeros")

    # signs on the arcs between consecutive zeros
    zt = np.array([float(z) for z in zeros]) * np.pi
    mids = 0.5 * (zt + np.roll(zt, -1))
    mids[-1] = 0.5 * (zt[-1] + zt[0] + TWO_PI)
    signs = np.sign(R(normalize_angle(mids)))
    alternates = bool(np.all(signs != 0) and (len(signs) < 2 or np.all(signs * np.roll(signs, -1) < 0)))
    ref = make_c_prime(k) if m % 2 else make_s_prime(k)
    ref_signs = np.sign(ref(normalize_angle(mids)))
    matches = bool(np.all(signs == ref_signs) or np.all(signs == -ref_signs))

    return ZeroStructureReport(k, m, expected, zeros, simple, alternates, matches, certified, worst, msgs)


def residual_l1(k: int, m: int) -> float:
    """``||J_m - p||_1`` with the normalised measure.

    Between consecutive zeros the residual keeps one sign, so each arc adds
    ``|int (J_m - p)|``; the ``J_m`` part is integrated exactly and the
    trigonometric part through its closed-form primitive.
    """
    R = KernelResidual.build(k, m)
    ns = NodeSet.for_kernel(k, m)
    zs = list(ns.full_zero_set)
    q = R.J.pieces[0].integral()
    d = R.J.pi_power

    def J_integral(t0: Fraction, t1: Fraction) -> float:
        # int over pi*t0..pi*t1 (t0 < t1, both within [-1, 1]) of the J piece
        return float(q(t1 + 1) - q(t0 + 1)) * np.pi ** (d + 1)

    total = 0.0
    arcs = list(zip(zs, zs[1:])) + [(zs[-1], zs[0] + 2)]
    for t0, t1 in arcs:
        if t1 <= 1:
            jint = J_integral(t0, t1)
        else:
            jint = J_integral(t0, Fraction(1)) + J_integral(Fraction(-1), t1 - 2)
        pts = np.array([float(t0), float(t1)]) * np.pi
        pv = _primitive_values(R.p, pts)
        total += abs(jint - (pv[1] - pv[0]))
    return total / TWO_PI


def residual_l1_report(k: int, m: int) -> dict:
    D = float(D_exact(k, m))
    val = residual_l1(k, m)
    return {"k": k, "m": m, "residual_l1": val, "D_km": D, "discrepancy": val - D}
