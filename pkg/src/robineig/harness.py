"""Property catalog and regression runner.

Each :class:`PropertyCase` binds one inequality or identity to a generator
of instances and a check returning ``(margin, tolerance, detail)``.  An
instance passes when ``margin >= -tolerance``; an exception is a failure.

Failing polygon instances are shrunk (fewer hull points, then rounded
coordinates) and written as replay files: the polygon in the same JSON
layout the command line accepts, plus the run configuration and case name.

Run ``python -m robineig.harness --help`` for the command line.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable

import numpy as np

from . import fem
from .dearrange import (
    build_test,
    disc_terms,
    functional_terms,
    integrate_profile_ode,
    perimeter_comparison,
    verify_chain,
    volume_comparison,
)
from .geometry import ConvexPolygon, parallel_profile, regular_polygon
from .radial import AnnulusSpec, BallSpec, annulus_eigenvalue, ball_eigenvalue
from .shapes import random_convex_polygon
from .specialfn import besseli, besseli_halfint, besselk, besselk_halfint

__all__ = [
    "SuiteConfig",
    "Instance",
    "PropertyCase",
    "CaseResult",
    "SuiteSummary",
    "catalog",
    "run_suite",
    "replay",
    "main",
]

ALPHAS = (-0.5, -1.0, -5.0)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    corpus: int = 50
    n_points: int = 12
    tol: float = 1e-10
    quad_tol: float = 1e-10
    fem_levels: int = 4
    samples: int = 100


@dataclass
class Instance:
    label: str
    alpha: float | None = None
    polygon: ConvexPolygon | None = None
    params: dict = field(default_factory=dict)
    origin: tuple | None = None  # (n_points, seed) for random hulls

    def flipped(self) -> "Instance":
        a = None if self.alpha is None else -self.alpha
        return Instance(f"{self.label} (alpha sign flipped)", a, self.polygon, dict(self.params), self.origin)


@dataclass(frozen=True)
class PropertyCase:
    name: str
    anchor: str
    tolerance: str
    generator: Callable[[SuiteConfig], list]
    check: Callable[[Instance, SuiteConfig], tuple]


@dataclass
class CaseResult:
    name: str
    anchor: str
    tolerance: str
    instances: int
    worst_margin: float
    worst_label: str
    passed: bool
    seconds: float
    failure: dict | None = None
    replay_path: str | None = None


@dataclass
class SuiteSummary:
    seed: int
    results: list[CaseResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            flag = "PASS" if r.passed else "FAIL"
            lines.append(
                f"{flag} {r.name:<18} n={r.instances:<4} worst_margin={r.worst_margin:+.3e} "
                f"[{r.worst_label}] ({r.seconds:.1f}s) {r.anchor}"
            )
            if r.failure:
                lines.append(f"     counterexample: {r.failure.get('label')} {r.failure.get('detail')}")
                if r.replay_path:
                    lines.append(f"     replay: {r.replay_path}")
        lines.append(f"{len(self.results) - len(self.failed)}/{len(self.results)} cases passed (seed {self.seed})")
        return "\n".join(lines)


# ---------------------------------------------------------------- generators


def _corpus(cfg: SuiteConfig, count=None):
    count = cfg.corpus if count is None else count
    return [
        Instance(f"random-{cfg.seed + i}", None, random_convex_polygon(cfg.n_points, cfg.seed + i), origin=(cfg.n_points, cfg.seed + i))
        for i in range(count)
    ]


def _with_alphas(instances):
    return [Instance(f"{p.label} alpha={a:g}", a, p.polygon, origin=p.origin) for p in instances for a in ALPHAS]


def gen_corpus_alpha(cfg):
    return _with_alphas(_corpus(cfg))


def gen_corpus(cfg):
    fixed = [Instance(f"regular-{m}", None, regular_polygon(m)) for m in (3, 4, 6, 64)]
    return fixed + _corpus(cfg)


def gen_ode(cfg):
    return [Instance(p.label, -1.0, p.polygon, origin=p.origin) for p in _corpus(cfg, 10)]


def gen_regular(cfg):
    return [Instance(f"regular-{m}", None, regular_polygon(m)) for m in (3, 4, 5, 6, 8, 16, 64, 256)]


def gen_bessel_grid(cfg):
    return [Instance("grid 20x20", None, params={"nu": [0.0, 5.0], "x": [0.05, 50.0], "n": 20})]


def gen_halfint(cfg):
    return [Instance(f"x={x:g}", None, params={"x": x}) for x in (1e-3, 0.1, 1.0, 5.0, 20.0, 100.0)]


def gen_balls(cfg):
    return [
        Instance(f"n={n} R={R:g} alpha={a:g}", a, params={"n": n, "R": R})
        for n in (2, 3, 4)
        for R in (0.25, 1.0, 4.0)
        for a in ALPHAS
    ]


def gen_radius_pairs(cfg):
    rng = np.random.default_rng(cfg.seed)
    out = []
    for i in range(20):
        r1, r2 = sorted(rng.uniform(0.2, 3.0, size=2))
        n = 2 + i % 2
        a = ALPHAS[i % 3]
        out.append(Instance(f"n={n} R1={r1:.4g} R2={r2:.4g} alpha={a:g}", a, params={"n": n, "R1": float(r1), "R2": float(r2)}))
    return out


def gen_annuli(cfg):
    return [
        Instance(f"R_out={ro:g} R_in={ri:g} alpha={a:g}", a, params={"n": 2, "R_out": ro, "R_in": ri})
        for ro, ri in ((1.0, 0.5), (1.0, 0.1), (2.0, 1.5), (1.0, 0.9))
        for a in ALPHAS
    ]


def gen_fem_disc(cfg):
    return [Instance("regular-64 circumradius 1", -1.0, regular_polygon(64, circumradius=1.0))]


def gen_equality(cfg):
    return [Instance("regular m in 8,16,32,64 perimeter 2pi", -1.0, params={"m": [8, 16, 32, 64]})]


# ---------------------------------------------------------------- checks


@lru_cache(maxsize=512)
def _test_and_terms(poly_key, alpha, tol, quad_tol):
    poly = _POLYS[poly_key]
    test = build_test(poly, alpha, tol)
    return test, functional_terms(test, quad_tol), disc_terms(test, quad_tol)


_POLYS: dict[str, ConvexPolygon] = {}


def _terms(inst, cfg):
    key = inst.polygon.fingerprint()
    _POLYS[key] = inst.polygon
    return _test_and_terms(key, inst.alpha, cfg.tol, cfg.quad_tol)


@lru_cache(maxsize=512)
def _fem_solution(poly_key, alpha, levels, tol):
    return fem.solve(_POLYS[poly_key], alpha, levels, tol)


def _fem(inst, cfg):
    key = inst.polygon.fingerprint()
    _POLYS[key] = inst.polygon
    return _fem_solution(key, inst.alpha, cfg.fem_levels, cfg.tol)


def _grid(p):
    nus = np.linspace(*p["nu"], p["n"])
    xs = np.geomspace(*p["x"], p["n"])
    return [(float(v), float(x)) for v in nus for x in xs]


def check_wronskian(inst, cfg):
    worst = 0.0
    for nu, x in _grid(inst.params):
        # scaled forms keep the product O(1): I~ K~ = I K
        w = besseli(nu, x, True) * besselk(nu + 1, x, True) + besseli(nu + 1, x, True) * besselk(nu, x, True)
        worst = max(worst, abs(x * w - 1.0))
    return 1e-8 - worst, 0.0, f"max |x W - 1| = {worst:.2e}"


def check_recurrence(inst, cfg):
    worst = 0.0
    for nu, x in _grid(inst.params):
        nu = nu + 1.0
        i0, i1, i2 = (besseli(nu + d, x, True) for d in (-1, 0, 1))
        k0, k1, k2 = (besselk(nu + d, x, True) for d in (-1, 0, 1))
        ri = abs(i0 - i2 - 2 * nu / x * i1) / max(abs(i0), 1e-300)
        rk = abs(k2 - k0 - 2 * nu / x * k1) / max(abs(k2), 1e-300)
        worst = max(worst, ri, rk)
    return 1e-8 - worst, 0.0, f"max relative residual = {worst:.2e}"


def check_halfint(inst, cfg):
    x = inst.params["x"]
    errs = []
    for o2 in (1, 3):
        ref = besseli_halfint(o2, x)
        errs.append(abs(besseli(o2 / 2, x) - ref) / abs(ref))
    for o2 in (1, 3, 5):
        ref = besselk_halfint(o2, x)
        errs.append(abs(besselk(o2 / 2, x) - ref) / abs(ref))
    worst = max(errs)
    return 1e-9 - worst, 0.0, f"max relative deviation = {worst:.2e}"


def check_ball_bound(inst, cfg):
    p = inst.params
    eig = ball_eigenvalue(BallSpec(p["n"], p["R"]), inst.alpha, cfg.tol)
    bound = inst.alpha * p["n"] / p["R"]
    return bound - eig.lam, 0.0, f"lambda={eig.lam!r} bound={bound!r}"


def check_ball_monotone(inst, cfg):
    p = inst.params
    l1 = ball_eigenvalue(BallSpec(p["n"], p["R1"]), inst.alpha, cfg.tol).lam
    l2 = ball_eigenvalue(BallSpec(p["n"], p["R2"]), inst.alpha, cfg.tol).lam
    return l2 - l1, 0.0, f"lambda(R1)={l1!r} lambda(R2)={l2!r}"


def check_annulus_chain(inst, cfg):
    p = inst.params
    spec = AnnulusSpec(p["n"], p["R_out"], p["R_in"])
    la = annulus_eigenvalue(spec, inst.alpha, cfg.tol).lam
    lo = ball_eigenvalue(BallSpec(p["n"], p["R_out"]), inst.alpha, cfg.tol).lam
    lp = ball_eigenvalue(spec.equal_perimeter_ball(), inst.alpha, cfg.tol).lam
    return min(lo - la, lp - lo), 0.0, f"annulus={la!r} outer ball={lo!r} equal-perimeter ball={lp!r}"


def check_slope(inst, cfg):
    prof = parallel_profile(inst.polygon)
    worst = float(np.max(prof.slopes))
    return -2 * math.pi - worst, 1e-12 * 2 * math.pi, f"max slope {worst!r}"


def check_concave(inst, cfg):
    prof = parallel_profile(inst.polygon)
    if prof.n_intervals < 2:
        return 0.0, 0.0, "single interval"
    jump = float(np.max(np.diff(prof.slopes)))
    return -jump, 1e-9 * abs(prof.slopes[0]), f"max slope increase {jump!r}"


def check_area_derivative(inst, cfg):
    prof = parallel_profile(inst.polygon)
    s = np.linspace(0.0, prof.inradius, 201)
    h = 1e-6 * prof.inradius
    worst = 0.0
    for si in s[1:-1]:
        # P is linear between breakpoints, so a centred difference is exact up to rounding away from them
        if np.min(np.abs(prof.breakpoints - si)) < 2 * h:
            continue
        d = (prof.area(si + h) - prof.area(si - h)) / (2 * h)
        worst = max(worst, abs(d + prof.perimeter(si)) / inst.polygon.perimeter)
    # integrated form: A(0) - A(r) = int P, trapezoid-exact for piecewise linear P
    knots = np.asarray(prof.breakpoints)
    integral = float(np.sum(0.5 * (prof.perimeter(knots[1:]) + prof.perimeter(knots[:-1])) * np.diff(knots)))
    worst = max(worst, abs(prof.area(0.0) - prof.area(prof.inradius) - integral) / inst.polygon.area)
    return 1e-8 - worst, 0.0, f"max relative |A' + P| = {worst:.2e}"


def check_regular_slope(inst, cfg):
    m = len(inst.polygon)
    prof = parallel_profile(inst.polygon)
    exact = -2 * m * math.tan(math.pi / m)
    dev = float(np.max(np.abs(prof.slopes - exact)))
    return 1e-9 - dev, 0.0, f"slopes {prof.slopes.tolist()} vs {exact!r}"


def check_perimetri(inst, cfg):
    test, _, _ = _terms(inst, cfg)
    cmp = perimeter_comparison(test, cfg.samples)
    return -cmp.worst, cmp.tol, f"worst P(E_t) - P(B_t) = {cmp.worst:.3e}"


def check_volumes(inst, cfg):
    test, _, _ = _terms(inst, cfg)
    cmp = volume_comparison(test, cfg.samples)
    return -cmp.worst, cmp.tol, f"worst mu - nu = {cmp.worst:.3e}"


def check_energie(inst, cfg):
    _, t, d = _terms(inst, cfg)
    return d.dirichlet - t.dirichlet, 4 * cfg.quad_tol, f"dirichlet {t.dirichlet!r} vs disc {d.dirichlet!r}"


def check_normeL2(inst, cfg):
    _, t, d = _terms(inst, cfg)
    return d.l2 - t.l2, 4 * cfg.quad_tol, f"l2 {t.l2!r} vs disc {d.l2!r}"


def check_boundary(inst, cfg):
    _, t, d = _terms(inst, cfg)
    gap = abs(t.boundary - d.boundary)
    return 1e-9 * abs(d.boundary) - gap, 0.0, f"boundary {t.boundary!r} vs disc {d.boundary!r}"


def check_chain(inst, cfg):
    rep = verify_chain(inst.polygon, inst.alpha, cfg.tol, cfg.quad_tol, cfg.fem_levels, cfg.samples, fem_result=_fem(inst, cfg))
    return min(rep.margin_fw, rep.margin_star), rep.tol_chain, f"fem={rep.lambda_fem!r} F={rep.rayleigh_w!r} star={rep.lambda_star!r}"


def check_fem_simplicity(inst, cfg):
    res = _fem(inst, cfg)
    poly = inst.polygon
    bound = inst.alpha * poly.perimeter / poly.area
    margins = [bound - max(res.lambda_h + [res.lambda_extrapolated])]
    if not res.sign_constant:
        margins.append(-1.0)
    if res.multiplicity_check != 1:
        margins.append(-1.0)
    return min(margins), 0.0, (
        f"lambda={res.lambda_extrapolated!r} bound={bound!r} sign_constant={res.sign_constant} "
        f"inertia={res.multiplicity_check}"
    )


def check_ode(inst, cfg):
    test = build_test(inst.polygon, inst.alpha, cfg.tol)
    _, G_num, G_exact = integrate_profile_ode(test, 1000)
    dev = float(np.max(np.abs(G_num - G_exact)))
    return 1e-6 - dev, 0.0, f"max |G_rk4 - phi(R*-s)| = {dev:.2e}"


def check_fem_disc(inst, cfg):
    res = fem.solve(inst.polygon, inst.alpha, cfg.fem_levels, cfg.tol)
    lam = ball_eigenvalue(BallSpec(2, 1.0), inst.alpha, cfg.tol).lam
    dev = abs(res.lambda_extrapolated - lam)
    return 2e-2 - dev, 0.0, f"fem={res.lambda_extrapolated!r} disc={lam!r}"


def _equality_margins(inst, cfg):
    out = []
    for m in inst.params["m"]:
        poly = regular_polygon(m, perimeter=2 * math.pi)
        test = build_test(poly, inst.alpha, cfg.tol)
        out.append(test.star.lam - functional_terms(test, cfg.quad_tol).rayleigh)
    return out


def check_equality_trend(inst, cfg):
    ms = _equality_margins(inst, cfg)
    steps = [a - b for a, b in zip(ms, ms[1:])]
    return min(ms + steps), 0.0, f"margins {ms}"


def check_equality_gap(inst, cfg):
    ms = _equality_margins(inst, cfg)
    return 1e-3 - ms[-1], 0.0, f"margin at m={inst.params['m'][-1]}: {ms[-1]!r}"


_CASES = [
    PropertyCase("bessel_wronskian", "I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x", "1e-8 relative, 20x20 grid", gen_bessel_grid, check_wronskian),
    PropertyCase("bessel_recurrence", "Z_{nu-1} -/+ Z_{nu+1} = (2 nu/x) Z_nu", "1e-8 relative, 20x20 grid", gen_bessel_grid, check_recurrence),
    PropertyCase("bessel_halfint", "half-integer closed forms of I and K", "1e-9 relative", gen_halfint, check_halfint),
    PropertyCase("ball_bound", "ball: lambda < alpha n / R", "strict", gen_balls, check_ball_bound),
    PropertyCase("ball_monotone", "R -> lambda(alpha, B_R) increasing", "strict", gen_radius_pairs, check_ball_monotone),
    PropertyCase("annulus_chain", "lambda(annulus) <= lambda(B_out) <= lambda(B of equal perimeter)", "exact order", gen_annuli, check_annulus_chain),
    PropertyCase("profile_slope", "dP(Omega_s)/ds <= -2 pi", "1e-12 relative", gen_corpus, check_slope),
    PropertyCase("profile_concave", "s -> P(Omega_s) concave", "1e-9 relative", gen_corpus, check_concave),
    PropertyCase("profile_area", "d|Omega_s|/ds = -P(Omega_s)", "1e-8 relative", gen_corpus, check_area_derivative),
    PropertyCase("profile_regular", "regular m-gon slope -2m tan(pi/m)", "1e-9 absolute", gen_regular, check_regular_slope),
    PropertyCase("perimetri", "level sets: P({w>t}) <= P({v>t})", "1e-9 absolute", gen_corpus_alpha, check_perimetri),
    PropertyCase("volumes", "level sets: |{w<t}| <= |{v<t}|", "1e-9 |Omega*|", gen_corpus_alpha, check_volumes),
    PropertyCase("energie", "int |grad w|^2 <= int |grad v|^2", "4 quad_tol", gen_corpus_alpha, check_energie),
    PropertyCase("normeL2", "int w^2 <= int v^2", "4 quad_tol", gen_corpus_alpha, check_normeL2),
    PropertyCase("boundary", "int_{dOmega} w^2 = int_{dOmega*} v^2", "1e-9 relative", gen_corpus_alpha, check_boundary),
    PropertyCase("chain", "lambda(alpha,Omega) <= F(w) <= lambda(alpha,Omega*)", "max(1e-8, 2 fem error)", gen_corpus_alpha, check_chain),
    PropertyCase("fem_simplicity", "lambda < alpha P/|Omega|, simple, positive eigenfunction", "exact", gen_corpus_alpha, check_fem_simplicity),
    PropertyCase("dearrange_ode", "G' = -g(G), G(0) = w_m", "1e-6 absolute", gen_ode, check_ode),
    PropertyCase("fem_vs_disc", "P1 on 64-gon vs Bessel root, unit disc", "2e-2 absolute", gen_fem_disc, check_fem_disc),
    PropertyCase("equality_trend", "lambda* - F(w) > 0, decreasing towards the disc", "strict", gen_equality, check_equality_trend),
    PropertyCase("equality_gap", "lambda* - F(w) <= 1e-3 at m = 64", "1e-3 absolute", gen_equality, check_equality_gap),
]


def catalog() -> list[PropertyCase]:
    return list(_CASES)


# ---------------------------------------------------------------- running


def _evaluate(case, inst, cfg):
    try:
        margin, tol, detail = case.check(inst, cfg)
        margin, tol = float(margin), float(tol)
        ok = bool(margin >= -tol) and math.isfinite(margin)
        return margin, tol, detail, ok
    except Exception as exc:  # a crash inside a check is a failure of that case
        return -math.inf, 0.0, f"{type(exc).__name__}: {exc}", False


def _shrink(case, inst, cfg):
    """Smallest failing variant: fewer hull points, then coarsest rounding that still fails."""
    best = inst
    if inst.origin is not None:
        n, seed = inst.origin
        for k in range(n - 1, 3, -1):
            try:
                poly = random_convex_polygon(k, seed)
            except Exception:
                continue
            cand = Instance(f"{inst.label} shrunk to {k} points", inst.alpha, poly, origin=(k, seed))
            if not _evaluate(case, cand, cfg)[3]:
                best = cand
    if best.polygon is not None:
        for digits in (1, 2, 3, 4, 6):
            try:
                poly = ConvexPolygon.hull(np.round(best.polygon.vertices, digits))
            except Exception:
                continue
            cand = Instance(f"{best.label} rounded to {digits} digits", best.alpha, poly)
            if not _evaluate(case, cand, cfg)[3]:
                return cand
    return best


def _replay_payload(case, inst, cfg, margin, tol, detail):
    payload = {
        "case": case.name,
        "label": inst.label,
        "config": {**asdict(cfg), "alpha": inst.alpha},
        "params": inst.params,
        "margin": margin,
        "tolerance": tol,
        "detail": detail,
    }
    if inst.polygon is not None:
        payload["vertices"] = inst.polygon.vertices.tolist()
    return payload


def _run_case(args):
    case, cfg, fault, replay_dir = args
    t0 = time.perf_counter()
    instances = case.generator(cfg)
    if fault:
        instances = [i.flipped() for i in instances]
    worst_slack, worst, worst_label, failure, path = math.inf, math.inf, "", None, None
    for inst in instances:
        margin, tol, detail, ok = _evaluate(case, inst, cfg)
        if margin + tol < worst_slack:
            worst_slack, worst, worst_label = margin + tol, margin, inst.label
        if not ok and failure is None:
            small = _shrink(case, inst, cfg)
            sm, st, sd, _ = _evaluate(case, small, cfg)
            failure = _replay_payload(case, small, cfg, sm, st, sd)
            if replay_dir is not None:
                Path(replay_dir).mkdir(parents=True, exist_ok=True)
                path = str(Path(replay_dir) / f"{case.name}-seed{cfg.seed}.json")
                Path(path).write_text(json.dumps(failure, indent=1))
    return CaseResult(
        name=case.name,
        anchor=case.anchor,
        tolerance=case.tolerance,
        instances=len(instances),
        worst_margin=worst,
        worst_label=worst_label,
        passed=failure is None,
        seconds=time.perf_counter() - t0,
        failure=failure,
        replay_path=path,
    )


def run_suite(
    filter: str | None = None,
    seed: int = 0,
    workers: int | None = 1,
    fault: str | None = None,
    config: SuiteConfig | None = None,
    replay_dir: str | None = None,
) -> SuiteSummary:
    """Run every catalog case whose name contains ``filter``.

    ``fault`` names a case whose instances get the sign of ``alpha`` flipped;
    the suite must then report that case as failed.  Results are returned in
    catalog order whatever the completion order of the workers.
    """
    cfg = config if config is not None else SuiteConfig(seed=seed)
    if config is not None and seed != config.seed:
        cfg = SuiteConfig(**{**asdict(config), "seed": seed})
    cases = [c for c in _CASES if filter is None or filter in c.name]
    if fault is not None and fault not in {c.name for c in cases}:
        raise ValueError(f"fault target {fault!r} is not among the selected cases")
    jobs = [(c, cfg, c.name == fault, replay_dir) for c in cases]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_case, jobs))
    else:
        results = [_run_case(j) for j in jobs]
    return SuiteSummary(cfg.seed, results)


def replay(path) -> CaseResult:
    """Re-run the check stored in a replay file on its serialized instance."""
    data = json.loads(Path(path).read_text())
    case = {c.name: c for c in _CASES}[data["case"]]
    conf = dict(data["config"])
    alpha = conf.pop("alpha")
    cfg = SuiteConfig(**conf)
    poly = ConvexPolygon(np.asarray(data["vertices"], dtype=float)) if "vertices" in data else None
    inst = Instance(data["label"], alpha, poly, params=data.get("params", {}))
    t0 = time.perf_counter()
    margin, tol, detail, ok = _evaluate(case, inst, cfg)
    return CaseResult(
        case.name, case.anchor, case.tolerance, 1, margin, inst.label, ok, time.perf_counter() - t0,
        None if ok else _replay_payload(case, inst, cfg, margin, tol, detail),
    )


def main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="python -m robineig.harness", description="Run the property catalog.")
    p.add_argument("--filter", default=None, help="substring of case names to run")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50, help="random polygons in the corpus")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: CPU count)")
    p.add_argument("--fault", default=None, help="flip the sign of alpha in the named case")
    p.add_argument("--replay-dir", default="harness-replays", help="where failing instances are written")
    p.add_argument("--replay", default=None, help="re-run one replay file and exit")
    p.add_argument("--list", action="store_true", help="list cases and exit")
    args = p.parse_args(argv)
    if args.list:
        for c in _CASES:
            print(f"{c.name:<18} {c.tolerance:<28} {c.anchor}")
        return 0
    if args.replay:
        r = replay(args.replay)
        print(("PASS" if r.passed else "FAIL") + f" {r.name} margin={r.worst_margin!r}")
        if r.failure:
            print(f"     {r.failure['detail']}")
        return 0 if r.passed else 1
    try:
        summary = run_suite(args.filter, args.seed, args.workers, args.fault, SuiteConfig(seed=args.seed, corpus=args.count), args.replay_dir)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(summary.to_text())
    return 0 if summary.ok else 1


if __name__ == "__main__":
    sys.exit(main())
