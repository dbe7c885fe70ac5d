"""Command-line entry point: ``reverse-bernstein {constants,extremal,interpolate,verify,sweep}``.

Exit status is 0 on success, 1 when a verification fails and 2 on a usage
error. JSON output is an ``OutputEnvelope``; CSV output uses ``,`` and a
header row.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from . import __version__
from .constants import C, cross_validate
from .fourier import TWO_PI
from .harness import BAND_CAP, DEFAULT_TOL, VerifyConfig, run_forward, run_verification, sweep
from .interpolation import interpolate_J, residual_l1_report, verify_zero_structure
from .piecewise import sup_norm_exact
from .waves import make_extremal

K_LIMIT = 64
M_LIMIT = 30


@dataclass
class OutputEnvelope:
    command: str
    parameters: dict[str, Any]
    results: Any
    version: str = __version__

    def to_json(self) -> str:
        return json.dumps(
            {"command": self.command, "parameters": self.parameters, "results": self.results, "version": self.version},
            indent=2,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> OutputEnvelope:
        obj = json.loads(text)
        return cls(obj["command"], obj["parameters"], obj["results"], obj["version"])


def _csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({c: _fmt(r.get(c)) for c in columns})
    return buf.getvalue()


def _fmt(v):
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, float):
        return repr(v)
    return "" if v is None else v


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _range(parser, lo: int, hi: int | None, name: str, limit: int) -> range:
    hi = lo if hi is None else hi
    if lo < 1:
        parser.error(f"--{name} must be >= 1")
    if hi < lo:
        parser.error(f"--{name}-max must be >= --{name}")
    if hi > limit:
        parser.error(f"--{name}-max must be <= {limit}")
    return range(lo, hi + 1)


# -- subcommands -----------------------------------------------------------------


def cmd_constants(args, parser) -> int:
    ks = _range(parser, args.k, args.k_max, "k", K_LIMIT)
    ms = _range(parser, args.m, args.m_max, "m", M_LIMIT)
    rows = []
    ok = True
    for k in ks:
        for m in ms:
            row = C(k, m).as_row()
            if args.cross_validate:
                cv = cross_validate(k, m, args.tol)
                row["sup_norm_D"] = float(cv.sup_norm_path)
                row["cross_validated"] = cv.passed
                ok &= cv.passed
            rows.append(row)
    cols = ["k", "m", "B_m", "euler_number", "C_km", "D_km"]
    if args.cross_validate:
        cols += ["sup_norm_D", "cross_validated"]
    params = {"k": list(ks), "m": list(ms), "cross_validate": args.cross_validate}
    if args.format == "csv":
        _emit(_csv(rows, cols), args.output)
    else:
        _emit(OutputEnvelope("constants", params, rows).to_json(), args.output)
    return 0 if ok else 1


def cmd_extremal(args, parser) -> int:
    if not (1 <= args.k <= K_LIMIT and 1 <= args.m <= M_LIMIT):
        parser.error(f"need 1 <= k <= {K_LIMIT} and 1 <= m <= {M_LIMIT}")
    f = make_extremal(args.k, args.m)
    x = -np.pi + TWO_PI * (np.arange(args.samples) + 1) / args.samples
    y = f(x)
    if args.format == "csv":
        _emit(_csv([{"x": float(a), "value": float(b)} for a, b in zip(x, y)], ["x", "value"]), args.output)
        return 0
    sup = sup_norm_exact(f)
    rec = C(args.k, args.m)
    results = {
        "function": f.to_json_obj(),
        "sup_norm": float(sup),
        "sup_norm_exact": [str(sup.coeff), sup.pi_power],
        "D_km": rec.D_km,
        "C_km": rec.C_km,
    }
    _emit(OutputEnvelope("extremal", {"k": args.k, "m": args.m}, results).to_json(), args.output)
    return 0


def cmd_interpolate(args, parser) -> int:
    if not (1 <= args.k <= K_LIMIT and 1 <= args.m <= M_LIMIT):
        parser.error(f"need 1 <= k <= {K_LIMIT} and 1 <= m <= {M_LIMIT}")
    p = interpolate_J(args.k, args.m)
    zs = verify_zero_structure(args.k, args.m)
    l1 = residual_l1_report(args.k, args.m)
    ok = zs.passed and abs(l1["discrepancy"]) <= args.tol
    if args.format == "csv":
        rows = [{"quantity": "coeff", "index": j, "re": c.real, "im": c.imag} for j, c in zip(p.frequencies, p.coeffs)]
        rows += [{"quantity": "zero_over_pi", "index": i, "re": str(z)} for i, z in enumerate(zs.zeros)]
        rows += [{"quantity": q, "re": l1[q]} for q in ("residual_l1", "D_km", "discrepancy")]
        _emit(_csv(rows, ["quantity", "index", "re", "im"]), args.output)
    else:
        results = {"interpolant": p.to_json_obj(), "zero_structure": zs.as_dict(), **l1}
        _emit(OutputEnvelope("interpolate", {"k": args.k, "m": args.m, "tol": args.tol}, results).to_json(), args.output)
    return 0 if ok else 1


def _verify_cfg(args, parser) -> VerifyConfig:
    try:
        return VerifyConfig(args.k, args.m, args.trials, args.band, args.seed, args.tol, args.jobs)
    except ValueError as e:
        parser.error(str(e))


def cmd_verify(args, parser) -> int:
    cfg = _verify_cfg(args, parser)
    rep = run_verification(cfg)
    fwd = run_forward(cfg.k, cfg.trials, cfg.seed, cfg.jobs) if args.forward else None
    ok = rep.passed and (fwd is None or fwd.passed)
    params = {"k": cfg.k, "m": cfg.m, "trials": cfg.trials, "band": cfg.band, "seed": cfg.seed, "tol": cfg.tol, "forward": args.forward}
    if args.format == "csv":
        cols = ["check", "trial", "seed", "band", "f_norm", "deriv_norm", "bound", "margin", "passed"]
        rows = [dict(check="reverse", trial=i, **r.__dict__) for i, r in enumerate(rep.records)]
        if fwd is not None:
            rows += [dict(check="forward", trial=i, **r.__dict__) for i, r in enumerate(fwd.records)]
        _emit(_csv(rows, cols), args.output)
    else:
        results = {"reverse": rep.as_dict()}
        if fwd is not None:
            results["forward"] = fwd.as_dict()
        _emit(OutputEnvelope("verify", params, results).to_json(), args.output)
    return 0 if ok else 1


def cmd_sweep(args, parser) -> int:
    if not (1 <= args.k_max <= K_LIMIT and 1 <= args.m_max <= M_LIMIT):
        parser.error(f"need 1 <= k-max <= {K_LIMIT} and 1 <= m-max <= {M_LIMIT}")
    if args.trials < 0 or args.band > BAND_CAP:
        parser.error(f"need trials >= 0 and band <= {BAND_CAP}")
    reps = sweep(args.k_max, args.m_max, args.trials, args.seed, args.band, args.tol, args.jobs)
    rows = [r.summary() for r in reps]
    ok = all(r.passed and r.saturation_gap <= 1e-12 for r in reps)
    if args.format == "csv":
        _emit(_csv(rows, ["k", "m", "min_margin", "saturation_gap", "trials", "failures"]), args.output)
    else:
        params = {"k_max": args.k_max, "m_max": args.m_max, "trials": args.trials, "seed": args.seed, "band": args.band, "tol": args.tol}
        _emit(OutputEnvelope("sweep", params, rows).to_json(), args.output)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reverse-bernstein", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol=DEFAULT_TOL):
        p.add_argument("--format", choices=["csv", "json"], default="json", help="output format (default: json)")
        p.add_argument("--output", metavar="PATH", help="write to PATH instead of stdout")
        p.add_argument("--tol", type=float, default=tol, help=f"tolerance (default: {tol})")

    p = sub.add_parser("constants", help="table of B_m, Euler numbers, C_{k,m}, D_{k,m}")
    p.add_argument("--k", type=int, default=1, help="first k (default: 1)")
    p.add_argument("--k-max", type=int, help="last k (default: --k)")
    p.add_argument("--m", type=int, default=1, help="first m (default: 1)")
    p.add_argument("--m-max", type=int, help="last m (default: --m)")
    p.add_argument("--cross-validate", action="store_true", help="also check sup-norms of the extremal functions")
    common(p, 1e-10)
    p.set_defaults(func=cmd_constants, subparser=p)

    p = sub.add_parser("extremal", help="the extremal function I^(m-1) c_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=512, help="grid size for csv output (default: 512)")
    common(p)
    p.set_defaults(func=cmd_extremal, subparser=p)

    p = sub.add_parser("interpolate", help="L1-optimal interpolant of J_m and its residual")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    common(p, 1e-9)
    p.set_defaults(func=cmd_interpolate, subparser=p)

    p = sub.add_parser("verify", help="randomised check of the reverse inequality")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, default=100, help="number of random trials (default: 100)")
    p.add_argument("--band", type=int, default=64, help=f"maximum band of samples, <= {BAND_CAP} (default: 64)")
    p.add_argument("--seed", type=int, default=0, help="base seed (default: 0)")
    p.add_argument("--forward", action="store_true", help="also check the forward inequality at degree k")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default: 1)")
    common(p)
    p.set_defaults(func=cmd_verify, subparser=p)

    p = sub.add_parser("sweep", help="verify every (k, m) cell plus the saturation test")
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--trials", type=int, default=100, help="trials per cell; 0 runs only the saturation test")
    p.add_argument("--band", type=int, default=64, help="maximum band of samples (default: 64)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_sweep, subparser=p)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, args.subparser)


if __name__ == "__main__":
    sys.exit(main())
