"""First Robin eigenpair (negative boundary parameter) on balls and annuli.

On the ball :math:`B_R \\subset \\mathbb{R}^n` the positive first
eigenfunction is radial, :math:`\\phi(r) = r^{-\\beta} I_\\beta(kr)` with
:math:`\\beta = (n-2)/2`, and :math:`k = \\sqrt{-\\lambda}` solves

.. math:: k I_{\\beta+1}(kR) + \\alpha I_\\beta(kR) = 0 .

On a spherical shell the eigenfunction mixes :math:`I_\\beta` and
:math:`K_\\beta`; the Robin conditions on both spheres give a 2x2 determinant
whose roots are scanned for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specialfn import DomainError, _besselk_pair, besseli, gammafn

__all__ = [
    "BallSpec",
    "AnnulusSpec",
    "RadialEigen",
    "AnnulusEigen",
    "RootNotFoundError",
    "ball_eigenvalue",
    "eigenfunction_phi",
    "phi_inverse",
    "annulus_eigenvalue",
    "ball_lambda_monotonicity",
    "ball_volume",
    "ball_perimeter",
]

SCAN_SAMPLES = 200


class RootNotFoundError(RuntimeError):
    """No sign change of a root function inside the scanned range."""


def ball_volume(n: int, R: float) -> float:
    return math.pi ** (n / 2) / gammafn(n / 2 + 1) * R**n


def ball_perimeter(n: int, R: float) -> float:
    return n * ball_volume(n, R) / R


@dataclass(frozen=True)
class BallSpec:
    n: int
    R: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.n!r}")
        if not (self.R > 0 and math.isfinite(self.R)):
            raise DomainError(f"radius must be positive, got {self.R!r}")

    @property
    def beta(self) -> float:
        return (self.n - 2) / 2

    @property
    def volume(self) -> float:
        return ball_volume(self.n, self.R)

    @property
    def perimeter(self) -> float:
        return ball_perimeter(self.n, self.R)


@dataclass(frozen=True)
class AnnulusSpec:
    n: int
    R_out: float
    R_in: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.n!r}")
        if not (0 < self.R_in < self.R_out and math.isfinite(self.R_out)):
            raise DomainError(f"need 0 < R_in < R_out, got R_in={self.R_in!r}, R_out={self.R_out!r}")

    @property
    def beta(self) -> float:
        return (self.n - 2) / 2

    @property
    def volume(self) -> float:
        return ball_volume(self.n, self.R_out) - ball_volume(self.n, self.R_in)

    @property
    def perimeter(self) -> float:
        return ball_perimeter(self.n, self.R_out) + ball_perimeter(self.n, self.R_in)

    def equal_area_ball(self) -> BallSpec:
        return BallSpec(self.n, (self.R_out**self.n - self.R_in**self.n) ** (1.0 / self.n))

    def equal_perimeter_ball(self) -> BallSpec:
        p = self.n - 1
        return BallSpec(self.n, (self.R_out**p + self.R_in**p) ** (1.0 / p))


@dataclass(frozen=True)
class RadialEigen:
    """First eigenpair on a ball; ``lam = -k**2``."""

    spec: BallSpec
    alpha: float
    k: float
    lam: float
    beta: float
    root_residual: float
    bracket: tuple[float, float]

    @property
    def R(self) -> float:
        return self.spec.R

    @property
    def proposition_bound(self) -> float:
        """Rayleigh quotient of the constants, alpha * P / |B| = alpha * n / R."""
        return self.alpha * self.spec.n / self.spec.R

    def phi(self, r):
        """Eigenfunction profile, vectorised over ``r``."""
        return _vectorized(self, r, 0)

    def dphi(self, r):
        return _vectorized(self, r, 1)


@dataclass(frozen=True)
class AnnulusEigen:
    """First eigenpair on a shell; ``u(r) = r^-beta (A I_beta(kr) + B K_beta(kr))``."""

    spec: AnnulusSpec
    alpha: float
    k: float
    lam: float
    beta: float
    root_residual: float
    bracket: tuple[float, float]
    coeffs: tuple[float, float]
    roots: tuple[float, ...]

    def u(self, r):
        """Eigenfunction profile with the I and K parts scaled by e^{-k R_out}."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        A, B = self.coeffs
        k, b = self.k, self.beta
        out = np.empty_like(r)
        for i, ri in enumerate(r):
            z = k * ri
            iv = besseli(b, z, scaled=True) * math.exp(z - k * self.spec.R_out)
            kv = _besselk_pair(b, z, True)[0] * math.exp(-z + k * self.spec.R_in)
            out[i] = ri ** (-b) * (A * iv + B * kv)
        return out


def _root_function(beta, R, alpha, k):
    # k I_{b+1}(kR) / I_b(kR) + alpha: same sign as the scaled root equation
    z = k * R
    ratio = besseli(beta + 1.0, z, scaled=True) / besseli(beta, z, scaled=True)
    return k * ratio + alpha


def _bisect(f, a, fa, b, fb, tol):
    while b - a > tol:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m, m
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return a, b


def ball_eigenvalue(spec: BallSpec, alpha: float, tol: float = 1e-10) -> RadialEigen:
    """Smallest positive root k of ``k I_{b+1}(kR) + alpha I_b(kR) = 0``.

    A geometric scan of ``(0, 10|alpha| + 10/R]`` locates the first sign
    change, which bisection narrows to width ``tol``.
    """
    alpha = float(alpha)
    if not (alpha < 0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be negative, got {alpha!r}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    beta, R = spec.beta, spec.R
    kmax = 10.0 * abs(alpha) + 10.0 / R
    grid = np.geomspace(kmax * 1e-8, kmax, SCAN_SAMPLES)

    def f(k):
        return _root_function(beta, R, alpha, k)

    prev_k, prev_f = grid[0], f(grid[0])
    if prev_f >= 0:
        raise RootNotFoundError(f"root function not negative near 0 for {spec}, alpha={alpha}")
    for k in grid[1:]:
        fk = f(k)
        if fk >= 0:
            a, b = _bisect(f, prev_k, prev_f, k, fk, tol)
            break
        prev_k, prev_f = k, fk
    else:
        raise RootNotFoundError(f"no sign change below k={kmax} for {spec}, alpha={alpha}")
    a, b = float(a), float(b)
    k = 0.5 * (a + b)
    return RadialEigen(
        spec=spec,
        alpha=alpha,
        k=k,
        lam=-k * k,
        beta=beta,
        root_residual=abs(f(k)),
        bracket=(a, b),
    )


def _phi_scalar(eig, r, which):
    b, k = eig.beta, eig.k
    if r == 0.0:
        if which == 1:
            return 0.0
        return k**b / (2.0**b * gammafn(b + 1.0))
    z = k * r
    if which == 0:
        return r ** (-b) * besseli(b, z)
    return k * r ** (-b) * besseli(b + 1.0, z)


def _vectorized(eig, r, which):
    arr = np.asarray(r, dtype=float)
    if arr.ndim == 0:
        return _phi_scalar(eig, float(arr), which)
    return np.array([_phi_scalar(eig, float(x), which) for x in arr.ravel()]).reshape(arr.shape)


def eigenfunction_phi(eig: RadialEigen, r: float) -> tuple[float, float]:
    """Value and radial derivative of the ball eigenfunction at radius ``r``."""
    r = float(r)
    if not (0.0 <= r <= eig.R * (1 + 1e-14)):
        raise DomainError(f"r must lie in [0, {eig.R}], got {r!r}")
    r = min(r, eig.R)
    return _phi_scalar(eig, r, 0), _phi_scalar(eig, r, 1)


def phi_inverse(eig: RadialEigen, t: float, rtol: float = 1e-10) -> float:
    """Radius ``r`` with ``phi(r) = t``.

    The profile is increasing, so a bracket ``[lo, hi]`` is kept throughout;
    Newton steps are taken when they stay inside it, bisection otherwise.
    """
    t = float(t)
    R = eig.R
    v0, vR = _phi_scalar(eig, 0.0, 0), _phi_scalar(eig, R, 0)
    slack = 1e-13 * vR
    if not (v0 - slack <= t <= vR + slack):
        raise DomainError(f"t must lie in [{v0}, {vR}], got {t!r}")
    if t >= vR:
        return R
    if t <= v0:
        return 0.0
    lo, hi = 0.0, R
    r = R * math.sqrt(max(0.0, (t - v0) / (vR - v0)))
    width = rtol * R
    for _ in range(200):
        v = _phi_scalar(eig, r, 0)
        if v < t:
            lo = r
        else:
            hi = r
        d = _phi_scalar(eig, r, 1)
        step_ok = False
        if d > 0:
            nr = r - (v - t) / d
            if lo < nr < hi:
                step_ok = abs(nr - r) < 0.5 * (hi - lo) or hi - lo < 4 * width
                r_new = nr
        if not step_ok:
            r_new = 0.5 * (lo + hi)
        if abs(r_new - r) <= 0.25 * width or hi - lo <= width:
            return r_new
        r = r_new
    return r


def _annulus_rows(beta, Ro, Ri, alpha, k):
    """Scaled 2x2 Robin system; each row and column rescaled by exponentials."""
    zo, zi = k * Ro, k * Ri
    io0 = besseli(beta, zo, scaled=True)
    io1 = besseli(beta + 1.0, zo, scaled=True)
    ii0 = besseli(beta, zi, scaled=True)
    ii1 = besseli(beta + 1.0, zi, scaled=True)
    ko0, ko1 = _besselk_pair(beta, zo, True)
    ki0, ki1 = _besselk_pair(beta, zi, True)
    # outer: u' + alpha u = 0 ; inner (normal -e_r): -u' + alpha u = 0
    a11 = k * io1 + alpha * io0
    a12 = -k * ko1 + alpha * ko0
    a21 = -k * ii1 + alpha * ii0
    a22 = k * ki1 + alpha * ki0
    return a11, a12, a21, a22, math.exp(-2.0 * k * (Ro - Ri))


def _annulus_det(beta, Ro, Ri, alpha, k):
    a11, a12, a21, a22, damp = _annulus_rows(beta, Ro, Ri, alpha, k)
    return a11 * a22 - a12 * a21 * damp


def annulus_eigenvalue(spec: AnnulusSpec, alpha: float, tol: float = 1e-10) -> AnnulusEigen:
    """First Robin eigenvalue of the spherical shell ``R_in < |x| < R_out``.

    All positive roots of the determinant in ``(0, 10|alpha| + 10 n / R_in]``
    are bracketed; the ground state is the largest one (most negative
    eigenvalue), whose eigenfunction is checked to be sign-constant.
    """
    alpha = float(alpha)
    if not (alpha < 0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be negative, got {alpha!r}")
    beta, Ro, Ri = spec.beta, spec.R_out, spec.R_in
    kmax = 10.0 * abs(alpha) + 10.0 * spec.n / Ri
    grid = np.unique(
        np.concatenate([np.geomspace(kmax * 1e-8, kmax, 2 * SCAN_SAMPLES), np.linspace(kmax / 400, kmax, 400)])
    )

    def f(k):
        return _annulus_det(beta, Ro, Ri, alpha, k)

    vals = np.array([f(k) for k in grid])
    brackets = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0 or (vals[i] < 0) != (vals[i + 1] < 0):
            brackets.append(i)
    if not brackets:
        raise RootNotFoundError(f"no root found: no negative eigenvalue for {spec}, alpha={alpha}")
    roots = []
    for i in brackets:
        a, b = _bisect(f, grid[i], vals[i], grid[i + 1], vals[i + 1], tol)
        roots.append((a, b))
    a, b = (float(v) for v in roots[-1])
    k = 0.5 * (a + b)
    a11, a12, a21, a22, damp = _annulus_rows(beta, Ro, Ri, alpha, k)
    # coefficients of e^{-k R_out} I_beta and e^{k R_in} K_beta, from the better-scaled row
    e = math.sqrt(damp)
    if abs(a11) + e * abs(a12) >= e * abs(a21) + abs(a22):
        A, B = -e * a12, a11
    else:
        A, B = -a22, e * a21
    eig = AnnulusEigen(
        spec=spec,
        alpha=alpha,
        k=k,
        lam=-k * k,
        beta=beta,
        root_residual=abs(f(k)),
        bracket=(a, b),
        coeffs=(A, B),
        roots=tuple(float(0.5 * (x + y)) for x, y in roots),
    )
    u = eig.u(np.linspace(Ri, Ro, 64))
    if u[0] < 0:
        eig = AnnulusEigen(**{**eig.__dict__, "coeffs": (-A, -B)})
    return eig


def ball_lambda_monotonicity(n: int, alpha: float, R1: float, R2: float, tol: float = 1e-10):
    """Return ``(lam1, lam2, ok)`` where ``ok`` states the expected ordering.

    For ``R1 < R2`` the smaller ball has the more negative eigenvalue; equal
    radii give equal eigenvalues.
    """
    if R1 > R2:
        raise DomainError(f"need R1 <= R2, got {R1!r} > {R2!r}")
    lam1 = ball_eigenvalue(BallSpec(n, R1), alpha, tol).lam
    lam2 = lam1 if R1 == R2 else ball_eigenvalue(BallSpec(n, R2), alpha, tol).lam
    ok = lam1 == lam2 if R1 == R2 else lam1 < lam2
    return lam1, lam2, ok
