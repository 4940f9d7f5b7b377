"""Command line front end.

Exit codes: 0 when every check holds, 1 when a mathematical inequality is
violated (the report is still printed), 2 for bad input or usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import fem
from .dearrange import verify_chain
from .geometry import parallel_profile
from .radial import AnnulusSpec, BallSpec, RootNotFoundError, annulus_eigenvalue, ball_eigenvalue
from .shapes import ShapeSpec, parse_shape
from .specialfn import DomainError

CSV_COLUMNS = [
    "shape_id",
    "m_or_file",
    "alpha",
    "perimeter",
    "area",
    "inradius",
    "R_star",
    "lambda_star",
    "rayleigh_w",
    "lambda_fem",
    "fem_error",
    "margin_star",
    "margin_fw",
    "perimetri_ok",
    "energie_ok",
    "normeL2_ok",
    "boundary_ok",
    "chain_ok",
]

PROFILE_COLUMNS = ["s", "perimeter", "area", "slope", "breakpoint"]

EPILOG = (
    "CSV columns for verify/sweep: "
    + ", ".join(CSV_COLUMNS)
    + ". The sweep appends a 'summary' row holding the minimum margins and the conjunction of the flags. "
    "profile writes: " + ", ".join(PROFILE_COLUMNS) + ". JSON output uses the same field names."
)


@dataclass(frozen=True)
class RunConfig:
    alpha: float
    tol: float = 1e-10
    fem_levels: int = 4
    quad_tol: float = 1e-10
    seed: int = 0
    output_format: str = "csv"

    def __post_init__(self):
        if not self.alpha < 0:
            raise DomainError(f"--alpha must be negative, got {self.alpha}")
        if not (self.tol > 0 and self.quad_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.fem_levels < 2:
            raise DomainError("--levels must be >= 2")


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows, columns):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c, "")) for c in columns])
    return buf.getvalue()


def _json(obj):
    def default(o):
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, np.generic):
            return o.item()
        raise TypeError(type(o))

    return json.dumps(obj, indent=2, default=default) + "\n"


def _report_row(report):
    d = report.to_dict()
    return {c: d[c] for c in CSV_COLUMNS}


def _verify_shape(args):
    """Worker: all alphas for one polygon, sharing the finite element matrices."""
    shape_id, label, poly, alphas, cfg = args
    prepared = fem.prepare_levels(poly, cfg.fem_levels)
    out = []
    for a in alphas:
        spec = fem.solve(poly, a, cfg.fem_levels, cfg.tol, prepared=prepared)
        out.append(
            verify_chain(poly, a, cfg.tol, cfg.quad_tol, cfg.fem_levels, fem_result=spec, shape_id=shape_id, m_or_file=label)
        )
    return out


def _run_reports(shapes, alphas, cfg, workers):
    jobs = [(sid, label, poly, alphas, cfg) for sid, label, poly in shapes]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_verify_shape, jobs))
    else:
        chunks = [_verify_shape(j) for j in jobs]
    return [r for chunk in chunks for r in chunk]


def _summary_row(reports):
    return {
        "shape_id": "summary",
        "m_or_file": len(reports),
        "margin_star": min(r.margin_star for r in reports),
        "margin_fw": min(r.margin_fw for r in reports),
        **{k: all(getattr(r, k) for r in reports) for k in CSV_COLUMNS if k.endswith("_ok")},
    }


def cmd_ball(args) -> int:
    eig = ball_eigenvalue(BallSpec(args.dim, args.radius), args.alpha, args.tol)
    row = {
        "dim": args.dim,
        "radius": args.radius,
        "alpha": eig.alpha,
        "k": eig.k,
        "lambda": eig.lam,
        "root_residual": eig.root_residual,
        "proposition_bound": eig.proposition_bound,
        "bound_ok": eig.lam < eig.proposition_bound,
    }
    _emit(_json(row) if args.format == "json" else _csv([row], list(row)), args.out)
    return 0 if row["bound_ok"] else 1


def cmd_annulus(args) -> int:
    if args.inner_radius is None:
        raise DomainError("--inner-radius is required")
    spec = AnnulusSpec(args.dim, args.radius, args.inner_radius)
    eig = annulus_eigenvalue(spec, args.alpha, args.tol)
    area_ball = ball_eigenvalue(spec.equal_area_ball(), args.alpha, args.tol)
    per_ball = ball_eigenvalue(spec.equal_perimeter_ball(), args.alpha, args.tol)
    bound = args.alpha * spec.perimeter / spec.volume
    row = {
        "dim": args.dim,
        "R_out": args.radius,
        "R_in": args.inner_radius,
        "alpha": eig.alpha,
        "k": eig.k,
        "lambda": eig.lam,
        "root_residual": eig.root_residual,
        "proposition_bound": bound,
        "R_equal_area": spec.equal_area_ball().R,
        "lambda_equal_area_ball": area_ball.lam,
        "R_equal_perimeter": spec.equal_perimeter_ball().R,
        "lambda_equal_perimeter_ball": per_ball.lam,
        "bound_ok": eig.lam < bound,
        "perimeter_chain_ok": eig.lam <= per_ball.lam,
    }
    _emit(_json(row) if args.format == "json" else _csv([row], list(row)), args.out)
    return 0 if row["bound_ok"] and row["perimeter_chain_ok"] else 1


def _config(args) -> RunConfig:
    alpha = args.alpha[0] if isinstance(args.alpha, list) else args.alpha
    return RunConfig(alpha, args.tol, args.levels, args.quad_tol, args.seed, args.format)


def cmd_verify(args) -> int:
    cfg = _config(args)
    spec: ShapeSpec = parse_shape(args.shape, args.perimeter, args.seed, args.hull_repair)
    shapes = spec.build(1)
    reports = _run_reports(shapes, [cfg.alpha], cfg, 1)
    if args.format == "json":
        text = _json([r.to_dict() for r in reports] if len(reports) > 1 else reports[0].to_dict())
    else:
        text = _csv([_report_row(r) for r in reports], CSV_COLUMNS)
    _emit(text, args.out)
    bad = [r for r in reports if not r.ok]
    for r in bad:
        print(f"violation on {r.shape_id} alpha={r.alpha}: margins={r.margins} tolerances={r.tolerances}", file=sys.stderr)
    return 1 if bad else 0


def cmd_sweep(args) -> int:
    cfg = _config(args)
    for a in args.alpha:
        if not a < 0:
            raise DomainError(f"--alpha values must be negative, got {a}")
    if args.count < 1:
        raise DomainError("empty corpus: --count must be >= 1")
    spec = parse_shape(args.shape, args.perimeter, args.seed, args.hull_repair)
    shapes = spec.build(args.count)
    if not shapes:
        raise DomainError("empty corpus")
    workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    reports = _run_reports(shapes, list(args.alpha), cfg, workers)
    if args.format == "json":
        text = _json({"rows": [r.to_dict() for r in reports], "summary": _summary_row(reports)})
    else:
        text = _csv([_report_row(r) for r in reports] + [_summary_row(reports)], CSV_COLUMNS)
    _emit(text, args.out)
    bad = [r for r in reports if not r.ok]
    for r in bad:
        print(f"violation on {r.shape_id} alpha={r.alpha}: margins={r.margins}", file=sys.stderr)
    return 1 if bad else 0


def cmd_profile(args) -> int:
    spec = parse_shape(args.shape, args.perimeter, args.seed, args.hull_repair)
    (shape_id, _, poly), *_ = spec.build(1)
    prof = parallel_profile(poly)
    rows = []
    for j, (a, b) in enumerate(prof.intervals()):
        for k, s in enumerate(np.linspace(a, b, args.samples + 1)[:-1]):
            rows.append({"s": s, "perimeter": prof.perimeter(s), "area": prof.area(s), "slope": prof.slopes[j], "breakpoint": k == 0})
    r = prof.inradius
    rows.append({"s": r, "perimeter": prof.perimeter(r), "area": prof.area(r), "slope": prof.slopes[-1], "breakpoint": True})
    if args.format == "json":
        _emit(_json({"shape_id": shape_id, "inradius": r, "breakpoints": prof.breakpoints, "rows": rows}), args.out)
    else:
        _emit(_csv(rows, PROFILE_COLUMNS), args.out)
    steep = bool(np.all(prof.slopes <= -2 * math.pi * (1 - 1e-12)))
    if not steep:
        print(f"slope bound violated: slopes={prof.slopes.tolist()}", file=sys.stderr)
    return 0 if steep else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="robineig",
        description="First Robin eigenvalue (alpha < 0) on balls, annuli and convex polygons.",
        epilog=EPILOG,
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt="json"):
        sp.add_argument("--tol", type=float, default=1e-10, help="root finding / eigenvalue tolerance")
        sp.add_argument("--format", choices=["csv", "json"], default=fmt)
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    def shape_opts(sp):
        sp.add_argument("--shape", required=True, help="regular:M[,M...] | rectangle:AxB | random:N | file:PATH")
        sp.add_argument("--perimeter", type=float, default=None, help="rescale regular/rectangle shapes to this perimeter")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--hull-repair", action="store_true", help="replace file input by its convex hull")

    def solver_opts(sp):
        sp.add_argument("--levels", type=int, default=4, help="finest refinement level (>= 2)")
        sp.add_argument("--quad-tol", type=float, default=1e-10)

    b = sub.add_parser("ball", help="ball eigenvalue from the Bessel root equation")
    b.add_argument("--dim", type=int, default=2)
    b.add_argument("--radius", type=float, required=True)
    b.add_argument("--alpha", type=float, required=True)
    common(b)
    b.set_defaults(func=cmd_ball)

    a = sub.add_parser("annulus", help="spherical shell eigenvalue with equal-area/perimeter ball comparison")
    a.add_argument("--dim", type=int, default=2)
    a.add_argument("--radius", type=float, required=True, help="outer radius")
    a.add_argument("--inner-radius", type=float, required=True)
    a.add_argument("--alpha", type=float, required=True)
    common(a)
    a.set_defaults(func=cmd_annulus)

    v = sub.add_parser("verify", help="check the eigenvalue comparison chain on one polygon", epilog=EPILOG)
    shape_opts(v)
    v.add_argument("--alpha", type=float, required=True)
    solver_opts(v)
    common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="verify a corpus for several alphas; CSV rows plus summary", epilog=EPILOG)
    shape_opts(s)
    s.add_argument("--alpha", type=float, nargs="+", required=True)
    s.add_argument("--count", type=int, default=1, help="number of random polygons")
    s.add_argument("--workers", type=int, default=None, help="worker processes (default: CPU count)")
    solver_opts(s)
    common(s, fmt="csv")
    s.set_defaults(func=cmd_sweep)

    pr = sub.add_parser("profile", help="perimeter/area profile of the inner parallel bodies")
    shape_opts(pr)
    pr.add_argument("--samples", type=int, default=8, help="rows per profile interval")
    common(pr, fmt="csv")
    pr.set_defaults(func=cmd_profile)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, FileNotFoundError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RootNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
