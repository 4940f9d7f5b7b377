"""Transplanting the disc eigenfunction onto a convex polygon.

Let ``phi`` be the radial profile of the first eigenfunction on the disc
``Omega*`` with the same perimeter as the polygon ``Omega`` (radius ``R*``),
and ``d`` the distance to the boundary of ``Omega``. The test function

    w(x) = G(d(x)),   G(s) = phi(R* - s)

has, on each of its level lines, the same gradient modulus as the disc
eigenfunction on the level line with the same value, and takes the value
``phi(R*)`` on the whole boundary. With ``|grad d| = 1`` the coarea formula
turns every term of the Rayleigh quotient into a one-dimensional integral
against the perimeter profile ``s -> P(Omega_s)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import fem as _fem
from .geometry import ConvexPolygon, ParallelProfile, ball_of_same_perimeter, distance_to_boundary, parallel_profile
from .quadrature import adaptive_gl
from .radial import RadialEigen, ball_eigenvalue, phi_inverse
from .specialfn import DomainError

__all__ = [
    "DearrangedTest",
    "FunctionalTerms",
    "LevelComparison",
    "TheoremReport",
    "build_test",
    "functional_terms",
    "disc_terms",
    "perimeter_comparison",
    "volume_comparison",
    "integrate_profile_ode",
    "verify_chain",
]


@dataclass(frozen=True)
class DearrangedTest:
    polygon: ConvexPolygon
    profile: ParallelProfile
    star: RadialEigen
    alpha: float

    @property
    def R_star(self) -> float:
        return self.star.R

    @property
    def inradius(self) -> float:
        return self.profile.inradius

    @property
    def w_M(self) -> float:
        return float(self.star.phi(self.R_star))

    @property
    def w_m(self) -> float:
        return float(self.star.phi(self.R_star - self.inradius))

    @property
    def v_M(self) -> float:
        return self.w_M

    @property
    def v_m(self) -> float:
        return float(self.star.phi(0.0))

    def G(self, s):
        """Value of the test function at depth ``s``."""
        return self.star.phi(self.R_star - np.asarray(s, dtype=float))

    def G_prime(self, s):
        return -self.star.dphi(self.R_star - np.asarray(s, dtype=float))

    def G_inverse(self, t: float) -> float:
        """Depth at which the test function equals ``t``."""
        return self.R_star - phi_inverse(self.star, t)

    def g(self, t: float) -> float:
        """Gradient modulus of the disc eigenfunction on its level line ``{v = t}``."""
        return float(self.star.dphi(phi_inverse(self.star, t)))

    def evaluate(self, points) -> np.ndarray:
        d = np.clip(distance_to_boundary(self.polygon, points), 0.0, self.inradius)
        return self.G(d)


def build_test(polygon: ConvexPolygon, alpha: float, tol: float = 1e-10) -> DearrangedTest:
    """Disc of equal perimeter, its eigenpair and the erosion profile of ``polygon``."""
    star = ball_eigenvalue(ball_of_same_perimeter(polygon), alpha, tol)
    profile = parallel_profile(polygon)
    if profile.inradius > star.R * (1 + 1e-12):
        # planar convex sets satisfy 2 pi r <= P; a violation means bad input
        raise DomainError(f"inradius {profile.inradius} exceeds R* = {star.R}")
    return DearrangedTest(polygon=polygon, profile=profile, star=star, alpha=float(alpha))


@dataclass(frozen=True)
class FunctionalTerms:
    dirichlet: float
    boundary: float
    l2: float
    alpha: float

    @property
    def rayleigh(self) -> float:
        return (self.dirichlet + self.alpha * self.boundary) / self.l2


def _profile_integral(test, weight, quad_tol):
    prof = test.profile
    Rs = test.R_star
    total = 0.0
    n = prof.n_intervals
    for j, (a, b) in enumerate(prof.intervals()):
        p0, c, s0 = prof.perim[j], prof.slopes[j], prof.breakpoints[j]

        def f(s, p0=p0, c=c, s0=s0):
            return weight(Rs - s) * (p0 + c * (s - s0))

        total += adaptive_gl(f, a, b, quad_tol / n)
    return total


def functional_terms(test: DearrangedTest, quad_tol: float = 1e-10) -> FunctionalTerms:
    """Dirichlet, boundary and L2 terms of the test function on the polygon."""
    star = test.star
    dirichlet = _profile_integral(test, lambda r: star.dphi(r) ** 2, quad_tol)
    l2 = _profile_integral(test, lambda r: star.phi(r) ** 2, quad_tol)
    boundary = test.w_M**2 * test.polygon.perimeter
    return FunctionalTerms(dirichlet, boundary, l2, test.alpha)


def disc_terms(test: DearrangedTest, quad_tol: float = 1e-10) -> FunctionalTerms:
    """The same three terms for the disc eigenfunction, by radial quadrature."""
    star = test.star
    R = star.R
    dirichlet = adaptive_gl(lambda r: star.dphi(r) ** 2 * 2 * math.pi * r, 0.0, R, quad_tol)
    l2 = adaptive_gl(lambda r: star.phi(r) ** 2 * 2 * math.pi * r, 0.0, R, quad_tol)
    boundary = float(star.phi(R)) ** 2 * 2 * math.pi * R
    return FunctionalTerms(dirichlet, boundary, l2, test.alpha)


@dataclass(frozen=True)
class LevelComparison:
    """Sampled pairs ``(t, left, right)`` that should satisfy ``left <= right``."""

    rows: np.ndarray
    tol: float

    @property
    def worst(self) -> float:
        """Largest ``left - right``; positive values are violations before ``tol``."""
        return float((self.rows[:, 1] - self.rows[:, 2]).max())

    @property
    def ok(self) -> bool:
        return self.worst <= self.tol

    def __iter__(self):
        return iter(map(tuple, self.rows))

    def __len__(self):
        return len(self.rows)


def _chebyshev(a, b, n):
    """n points on [a, b], Chebyshev-Lobatto spacing, right end included, left end excluded."""
    j = np.arange(n)
    return 0.5 * (a + b) + 0.5 * (b - a) * np.cos(math.pi * j / n)


def perimeter_comparison(test: DearrangedTest, samples: int = 100, tol: float = 1e-9) -> LevelComparison:
    """Perimeters of the sublevel sets ``{w < t}`` and ``{v < t}``.

    Levels are ``t = phi(rho)`` for Chebyshev-spaced ``rho`` in
    ``(R* - r, R*]``, i.e. ``t`` in ``(w_m, w_M]``.
    """
    Rs, r = test.R_star, test.inradius
    rows = []
    for rho in _chebyshev(Rs - r, Rs, samples):
        t = float(test.star.phi(rho))
        rho_t = phi_inverse(test.star, t)
        depth = min(max(Rs - rho_t, 0.0), r)
        rows.append((t, float(test.profile.perimeter(depth)), 2 * math.pi * rho_t))
    return LevelComparison(np.array(rows), tol)


def volume_comparison(test: DearrangedTest, samples: int = 100, tol: float | None = None) -> LevelComparison:
    """Measures of the superlevel sets ``{w >= t}`` and ``{v >= t}`` for ``t`` in ``[0, v_M]``.

    ``|Omega| - mu(t)`` with ``mu(t) = |{w < t}|`` against
    ``|Omega*| - nu(t)`` with ``nu(t) = |{v < t}|``.
    """
    Rs = test.R_star
    area_star = math.pi * Rs * Rs
    area = test.polygon.area
    tol = 1e-9 * area_star if tol is None else tol
    w_m, v_m = test.w_m, test.v_m
    ts = list(np.linspace(0.0, v_m, 5, endpoint=False))
    ts += [float(test.star.phi(rho)) for rho in _chebyshev(0.0, Rs, samples)[::-1]]
    rows = []
    for t in ts:
        rho_t = phi_inverse(test.star, t) if t > v_m else 0.0
        nu = math.pi * rho_t * rho_t
        if t <= w_m:
            mu = 0.0
        else:
            mu = float(test.profile.area(min(max(Rs - rho_t, 0.0), test.inradius)))
        rows.append((t, area - mu, area_star - nu))
    return LevelComparison(np.array(rows), tol)


def integrate_profile_ode(test: DearrangedTest, steps: int = 1000):
    """Solve ``G' = -g(G)``, ``G(0) = v_M`` with classical RK4 on ``[0, r]``.

    Returns ``(s, numeric, closed_form)`` arrays.
    """
    r = test.inradius
    h = r / steps
    vmin, vmax = test.v_m, test.v_M

    def rhs(t):
        return -test.g(min(max(t, vmin), vmax))

    s = np.linspace(0.0, r, steps + 1)
    G = np.empty(steps + 1)
    G[0] = test.v_M
    y = G[0]
    for i in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        G[i + 1] = y
    return s, G, np.asarray(test.G(s))


@dataclass
class TheoremReport:
    """Outcome of checking the eigenvalue comparison on one polygon.

    Every ``*_ok`` flag is computed from the margin of the same name and
    the tolerance stored next to it.
    """

    shape_id: str
    m_or_file: str
    alpha: float
    perimeter: float
    area: float
    inradius: float
    R_star: float
    lambda_star: float
    rayleigh_w: float
    lambda_fem: float
    fem_error: float
    tol_chain: float
    quad_tol: float
    margins: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    fingerprint: str = ""
    terms: dict = field(default_factory=dict)
    disc: dict = field(default_factory=dict)
    fem_levels: list = field(default_factory=list)
    fem_flagged: bool = False

    @property
    def margin_star(self) -> float:
        return self.lambda_star - self.rayleigh_w

    @property
    def margin_fw(self) -> float:
        return self.rayleigh_w - self.lambda_fem

    def _flag(self, name):
        return bool(self.margins[name] >= -self.tolerances[name])

    @property
    def perimetri_ok(self) -> bool:
        return self._flag("perimetri")

    @property
    def energie_ok(self) -> bool:
        return self._flag("energie")

    @property
    def normeL2_ok(self) -> bool:
        return self._flag("normeL2") and self._flag("volumes")

    @property
    def boundary_ok(self) -> bool:
        return self._flag("boundary")

    @property
    def chain_ok(self) -> bool:
        return self._flag("chain_fw") and self._flag("chain_star")

    @property
    def ok(self) -> bool:
        return self.perimetri_ok and self.energie_ok and self.normeL2_ok and self.boundary_ok and self.chain_ok

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("margin_star", "margin_fw", "perimetri_ok", "energie_ok", "normeL2_ok", "boundary_ok", "chain_ok"):
            d[key] = getattr(self, key)
        return d


def verify_chain(
    polygon: ConvexPolygon,
    alpha: float,
    tol: float = 1e-10,
    quad_tol: float = 1e-10,
    fem_levels: int = 4,
    samples: int = 100,
    fem_result: _fem.SpectrumResult | None = None,
    shape_id: str = "",
    m_or_file: str = "",
) -> TheoremReport:
    """Check ``lam_fem <= F(w) <= lam_star`` and each intermediate comparison.

    ``tol_chain = max(1e-8, 2 * fem_error)`` absorbs the discretisation
    error of the finite element value; the one-dimensional quadratures are
    held to ``quad_tol``.
    """
    test = build_test(polygon, alpha, tol)
    terms = functional_terms(test, quad_tol)
    disc = disc_terms(test, quad_tol)
    spec = fem_result if fem_result is not None else _fem.solve(polygon, alpha, fem_levels, tol)
    lam_fem = spec.lambda_extrapolated
    tol_chain = max(1e-8, 2 * spec.error_estimate)
    F = terms.rayleigh
    per = perimeter_comparison(test, samples)
    vol = volume_comparison(test, samples)
    qtol = 4 * quad_tol
    margins = {
        "perimetri": -per.worst,
        "volumes": -vol.worst,
        "energie": disc.dirichlet - terms.dirichlet,
        "normeL2": disc.l2 - terms.l2,
        "boundary": 1e-9 * disc.boundary - abs(terms.boundary - disc.boundary),
        "chain_fw": F - lam_fem,
        "chain_star": test.star.lam - F,
    }
    tolerances = {
        "perimetri": per.tol,
        "volumes": vol.tol,
        "energie": qtol,
        "normeL2": qtol,
        "boundary": 0.0,
        "chain_fw": tol_chain,
        "chain_star": tol_chain,
    }
    return TheoremReport(
        shape_id=shape_id or polygon.fingerprint(),
        m_or_file=m_or_file,
        alpha=float(alpha),
        perimeter=polygon.perimeter,
        area=polygon.area,
        inradius=test.inradius,
        R_star=test.R_star,
        lambda_star=test.star.lam,
        rayleigh_w=F,
        lambda_fem=lam_fem,
        fem_error=spec.error_estimate,
        tol_chain=tol_chain,
        quad_tol=quad_tol,
        margins=margins,
        tolerances=tolerances,
        fingerprint=polygon.fingerprint(),
        terms=asdict(terms),
        disc=asdict(disc),
        fem_levels=list(spec.lambda_h),
        fem_flagged=spec.flagged,
    )
