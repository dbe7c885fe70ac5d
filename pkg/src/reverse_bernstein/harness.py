"""Randomised and extremal checks of the reverse Bernstein inequality
``||f^(m)||_inf >= C_{k,m} ||f||_inf`` for f in the tail space, plus the
classical forward inequality as a sanity companion."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from . import fourier as fr
from .constants import C
from .fourier import DomainError, TrigSeries
from .piecewise import derivative as pw_derivative, sup_norm_exact, to_trig_series
from .waves import make_extremal

DEFAULT_TOL = 1e-6
BAND_CAP = 1024


@dataclass(frozen=True)
class TrialRecord:
    seed: Optional[int]
    band: int
    f_norm: float
    deriv_norm: float
    bound: float
    margin: float
    passed: bool

    @property
    def relative_margin(self) -> float:
        return self.margin / self.deriv_norm if self.deriv_norm else 0.0


@dataclass
class VerificationReport:
    k: int
    m: int
    tol: float
    records: list[TrialRecord] = field(default_factory=list)
    saturation_gap: Optional[float] = None

    @property
    def trials(self) -> int:
        return len(self.records)

    @property
    def failures(self) -> int:
        return sum(not r.passed for r in self.records)

    @property
    def min_margin(self) -> float:
        return min((r.margin for r in self.records), default=float("nan"))

    @property
    def min_relative_margin(self) -> float:
        return min((r.relative_margin for r in self.records), default=float("nan"))

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def summary(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "trials": self.trials,
            "failures": self.failures,
            "min_margin": self.min_margin,
            "min_relative_margin": self.min_relative_margin,
            "saturation_gap": self.saturation_gap,
            "C_km": C(self.k, self.m).C_km,
            "tol": self.tol,
            "passed": self.passed,
        }

    def as_dict(self) -> dict:
        out = self.summary()
        out["records"] = [asdict(r) | {"relative_margin": r.relative_margin} for r in self.records]
        return out


@dataclass(frozen=True)
class VerifyConfig:
    k: int
    m: int
    trials: int = 100
    band: int = 64
    seed: int = 0
    tol: float = DEFAULT_TOL
    jobs: int = 1

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise ValueError("k and m must be positive")
        if not self.k <= self.band <= BAND_CAP:
            raise ValueError(f"band must satisfy k <= band <= {BAND_CAP}")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")


def trial_seed(seed: int, k: int, m: int, index: int) -> int:
    """Per-trial seed, independent of how trials are scheduled."""
    return int(np.random.SeedSequence([seed, k, m, index]).generate_state(1)[0])


def random_tail_sample(k: int, band: int, seed: int) -> TrigSeries:
    """Real series with independent complex Gaussian coefficients on
    ``k <= j <= band`` (conjugate-symmetric completion) and zeros below ``k``."""
    if band < k:
        raise ValueError("band must be at least k")
    rng = np.random.default_rng(seed)
    n = band - k + 1
    c = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2)
    arr = np.zeros(2 * band + 1, dtype=complex)
    arr[band + k :] = c
    arr[: band - k + 1] = np.conj(c[::-1])
    return TrigSeries(arr, is_real=True)


def random_trig_poly(k: int, seed: int) -> TrigSeries:
    """Real trigonometric polynomial of degree ``<= k`` with Gaussian coefficients."""
    rng = np.random.default_rng(seed)
    c = (rng.standard_normal(k + 1) + 1j * rng.standard_normal(k + 1)) / np.sqrt(2)
    c[0] = c[0].real
    arr = np.concatenate([np.conj(c[:0:-1]), c])
    return TrigSeries(arr, is_real=True)


def check_reverse_bernstein(
    f: TrigSeries, k: int, m: int, tol: float = DEFAULT_TOL, seed: Optional[int] = None
) -> TrialRecord:
    """One trial: passes iff ``||f^(m)|| >= C_{k,m} ||f|| (1 - tol)``.

    Both sup-norms are lower-bound estimates; ``||f||`` is refined ten times
    tighter than the pass tolerance because only its understatement could
    produce a spurious pass.
    """
    if not f.in_tail(k):
        raise DomainError(f"f has nonzero coefficients below frequency {k}")
    f_norm = fr.sup_norm_estimate(f, refinement=tol / 10)
    d_norm = fr.sup_norm_estimate(fr.derivative(f, m), refinement=tol)
    bound = C(k, m).C_km * f_norm
    return TrialRecord(seed, f.band, f_norm, d_norm, bound, d_norm - bound, d_norm >= bound * (1 - tol))


def check_forward_bernstein(p: TrigSeries, k: int, tol: float = 1e-9, seed: Optional[int] = None) -> TrialRecord:
    """Classical direction ``||p'|| <= k ||p||`` for ``p`` of degree ``<= k``.

    ``margin`` is ``k ||p|| - ||p'||``, non-negative when the check passes.
    """
    if p.trimmed().band > k:
        raise DomainError(f"p has degree {p.trimmed().band} > {k}")
    p_norm = fr.sup_norm_estimate(p, refinement=1e-12)
    d_norm = fr.sup_norm_estimate(fr.derivative(p), refinement=1e-12)
    bound = k * p_norm
    return TrialRecord(seed, p.band, p_norm, d_norm, bound, bound - d_norm, d_norm <= bound * (1 + tol))


def saturation_test(k: int, m: int) -> float:
    """Relative gap between ``||f^(m)|| / ||f||`` for ``f = I^m c_k'`` and ``C_{k,m}``,
    with both norms computed exactly."""
    f = make_extremal(k, m)
    fm = pw_derivative(f, m)
    num, den = sup_norm_exact(fm), sup_norm_exact(f)
    ratio = num * den.inverse()
    target = C(k, m).C_exact
    if ratio.exact and ratio.pi_power == target.pi_power:
        return float(abs(ratio.coeff / target.coeff - 1))
    return abs(float(ratio) / float(target) - 1)


def spectral_saturation_margin(k: int, m: int, band: int, smoothing: str = "fejer") -> float:
    """Relative margin ``(||f^(m)|| - C ||f||) / ||f^(m)||`` for a band-limited
    version of the extremal function.

    Plain truncation (``smoothing="none"``) keeps a Gibbs overshoot of about
    18% in ``f^(m)``, so the margin does not shrink; Fejer means do converge
    to 0 (like ``1/band`` for m >= 2).
    """
    f = to_trig_series(make_extremal(k, m), band)
    j = np.abs(f.frequencies)
    if smoothing == "fejer":
        f = TrigSeries(f.coeffs * (1 - j / (band + 1)), is_real=True)
    elif smoothing != "none":
        raise ValueError(f"unknown smoothing {smoothing!r}")
    rec = check_reverse_bernstein(f, k, m, tol=1e-9)
    return rec.relative_margin


def _run_trial(args: tuple[int, int, int, int, int, float]) -> TrialRecord:
    k, m, band_max, seed, index, tol = args
    s = trial_seed(seed, k, m, index)
    rng = np.random.default_rng(s)
    band = int(rng.integers(k, band_max + 1))
    f = random_tail_sample(k, band, s)
    return check_reverse_bernstein(f, k, m, tol, seed=s)


def _run_forward_trial(args: tuple[int, int, int]) -> TrialRecord:
    k, seed, index = args
    s = trial_seed(seed, k, 0, index)
    return check_forward_bernstein(random_trig_poly(k, s), k, seed=s)


def _map(fn, items: list, jobs: int) -> list:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [fn(x) for x in items]


def run_verification(cfg: VerifyConfig, with_saturation: bool = True) -> VerificationReport:
    """Run ``cfg.trials`` independent random trials for one (k, m) cell.

    Each trial's band is drawn uniformly from ``[k, cfg.band]``. Results come
    back in trial order whatever the number of workers.
    """
    items = [(cfg.k, cfg.m, cfg.band, cfg.seed, i, cfg.tol) for i in range(cfg.trials)]
    records = _map(_run_trial, items, cfg.jobs)
    rep = VerificationReport(cfg.k, cfg.m, cfg.tol, records)
    if with_saturation:
        rep.saturation_gap = saturation_test(cfg.k, cfg.m)
    return rep


def run_forward(k: int, trials: int, seed: int = 0, jobs: int = 1) -> VerificationReport:
    """Forward-Bernstein trials on random polynomials of degree ``<= k``."""
    records = _map(_run_forward_trial, [(k, seed, i) for i in range(trials)], jobs)
    return VerificationReport(k, 1, 1e-9, records)


def sweep(k_max: int, m_max: int, trials: int, seed: int = 0, band: int = 64, tol: float = DEFAULT_TOL, jobs: int = 1) -> list[VerificationReport]:
    """Every cell ``1 <= k <= k_max``, ``1 <= m <= m_max``, in row-major order."""
    out = []
    for k in range(1, k_max + 1):
        for m in range(1, m_max + 1):
            cfg = VerifyConfig(k, m, trials, max(band, k), seed, tol, jobs)
            out.append(run_verification(cfg))
    return out
