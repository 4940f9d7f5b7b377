import math

import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_bvp
from scipy.optimize import brentq

from robineig.radial import (
    AnnulusSpec,
    BallSpec,
    annulus_eigenvalue,
    ball_eigenvalue,
    ball_lambda_monotonicity,
    eigenfunction_phi,
    phi_inverse,
)
from robineig.specialfn import DomainError


def scipy_ball_k(n, R, alpha):
    # independent root of k I_{b+1}(kR) + alpha I_b(kR) = 0 with scipy's Bessel functions
    b = (n - 2) / 2
    f = lambda k: k * sc.ive(b + 1, k * R) + alpha * sc.ive(b, k * R)
    return brentq(f, 1e-9, 10 * abs(alpha) + 10 / R, xtol=1e-14)


def test_unit_disc_alpha_minus_one():
    eig = ball_eigenvalue(BallSpec(2, 1.0), -1.0)
    assert eig.k == pytest.approx(1.6082794717, abs=1e-9)
    assert eig.lam == pytest.approx(-2.58656286, abs=1e-7)
    assert abs(eig.root_residual) < 1e-9


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("R", [0.1, 1.0, 7.0])
@pytest.mark.parametrize("alpha", [-0.1, -1.0, -5.0])
def test_against_scipy_root(n, R, alpha):
    eig = ball_eigenvalue(BallSpec(n, R), alpha)
    assert eig.k == pytest.approx(scipy_ball_k(n, R, alpha), rel=1e-9)
    assert eig.lam < eig.proposition_bound


def test_three_ball_closed_form():
    # n = 3: phi = sinh(kr)/r, Robin condition gives k coth k - 1 + alpha = 0 at R = 1
    k = brentq(lambda k: k / math.tanh(k) - 1.0 - 1.0, 1e-6, 10.0, xtol=1e-15)
    eig = ball_eigenvalue(BallSpec(3, 1.0), -1.0)
    assert eig.k == pytest.approx(k, rel=1e-10)
    assert eig.lam == pytest.approx(-3.6673, abs=1e-4)


def test_half_space_limit():
    eig = ball_eigenvalue(BallSpec(2, 50.0), -1.0)
    # lambda -> -alpha^2 with a curvature correction of order 1/R
    assert eig.k == pytest.approx(1.01005, abs=1e-5)
    assert abs(eig.lam + 1.0) < 3.0 / 50.0


def test_small_radius_constant_regime():
    # for small R the eigenfunction is nearly constant, lam ~ alpha n / R
    eig = ball_eigenvalue(BallSpec(2, 1e-3), -1.0)
    assert eig.lam == pytest.approx(eig.proposition_bound, rel=1e-3)


def test_ode_residual_and_boundary_condition():
    eig = ball_eigenvalue(BallSpec(3, 1.3), -2.0)
    h = 1e-4
    for r in np.linspace(0.2, 1.2, 6):
        p0, p1, p2 = eig.phi(r - h), eig.phi(r), eig.phi(r + h)
        lap = (p2 - 2 * p1 + p0) / h**2 + 2 / r * (p2 - p0) / (2 * h)
        assert abs(lap + eig.lam * p1) < 1e-5 * abs(eig.lam * p1)
    v, d = eigenfunction_phi(eig, eig.R)
    assert abs(d + eig.alpha * v) < 1e-9 * abs(v)


def test_bvp_oracle_disc():
    # shooting-free oracle: solve the radial Robin problem as a BVP with unknown lambda
    alpha, R = -1.0, 1.0

    def rhs(r, y, p):
        # the -u'/r term is passed as the singular part S y / r
        return np.vstack([y[1], -p[0] * y[0]])

    def bc(ya, yb, p):
        return np.array([ya[1], yb[1] + alpha * yb[0], ya[0] - 1.0])

    S = np.array([[0.0, 0.0], [0.0, -1.0]])
    r = np.linspace(0.0, R, 100)
    y0 = np.vstack([np.cosh(1.6 * r), 1.6 * np.sinh(1.6 * r)])
    sol = solve_bvp(rhs, bc, r, y0, p=[-2.5], S=S, tol=1e-8)
    assert sol.success
    assert ball_eigenvalue(BallSpec(2, R), alpha).lam == pytest.approx(sol.p[0], abs=1e-6)


def test_phi_positive_increasing():
    eig = ball_eigenvalue(BallSpec(2, 2.0), -3.0)
    r = np.linspace(0.0, 2.0, 50)
    v = eig.phi(r)
    assert np.all(v > 0)
    assert np.all(np.diff(v) > 0)
    assert eig.dphi(0.0) == 0.0


def test_phi_inverse_round_trip():
    eig = ball_eigenvalue(BallSpec(2, 1.0), -1.0)
    for r in np.linspace(0.0, 1.0, 23):
        t = eig.phi(r)
        assert phi_inverse(eig, t) == pytest.approx(r, abs=1e-9)
    with pytest.raises(DomainError):
        phi_inverse(eig, 2 * eig.phi(1.0))


@settings(max_examples=60, deadline=None)
@given(R1=st.floats(0.05, 5.0), ratio=st.floats(1.01, 4.0), alpha=st.floats(-8.0, -0.05), n=st.integers(2, 4))
def test_property_monotone_in_radius(R1, ratio, alpha, n):
    l1, l2, ok = ball_lambda_monotonicity(n, alpha, R1, R1 * ratio)
    assert ok and l1 < l2


@settings(max_examples=40, deadline=None)
@given(R=st.floats(0.05, 5.0), a1=st.floats(-8.0, -0.05), da=st.floats(0.01, 3.0))
def test_property_monotone_in_alpha(R, a1, da):
    # more negative alpha gives a lower eigenvalue
    lo = ball_eigenvalue(BallSpec(2, R), a1 - da).lam
    hi = ball_eigenvalue(BallSpec(2, R), a1).lam
    assert lo < hi


def test_domain_errors():
    with pytest.raises(DomainError):
        ball_eigenvalue(BallSpec(2, 1.0), 1.0)
    with pytest.raises(DomainError):
        BallSpec(2, -1.0)
    with pytest.raises(DomainError):
        BallSpec(1, 1.0)
    with pytest.raises(DomainError):
        AnnulusSpec(2, 1.0, 1.0)


def test_annulus_reference_value():
    eig = annulus_eigenvalue(AnnulusSpec(2, 1.0, 0.5), -1.0)
    assert eig.lam == pytest.approx(-4.3756, abs=1e-4)
    assert abs(eig.root_residual) < 1e-8


def test_annulus_eigenfunction_conditions():
    spec = AnnulusSpec(2, 1.0, 0.5)
    eig = annulus_eigenvalue(spec, -1.0)
    r = np.linspace(0.5, 1.0, 41)
    u = eig.u(r)
    assert np.all(u > 0)
    h = 1e-6
    du_out = (eig.u(1.0)[0] - eig.u(1.0 - h)[0]) / h
    du_in = (eig.u(0.5 + h)[0] - eig.u(0.5)[0]) / h
    # outward normal is +r outside and -r inside
    assert abs(du_out + eig.alpha * eig.u(1.0)[0]) < 1e-4 * abs(u).max()
    assert abs(-du_in + eig.alpha * eig.u(0.5)[0]) < 1e-4 * abs(u).max()


def test_annulus_ground_state_is_largest_root():
    eig = annulus_eigenvalue(AnnulusSpec(2, 1.0, 0.5), -1.0)
    assert eig.k == max(eig.roots)


def test_annulus_two_roots_picks_positive_state():
    # strong alpha: each boundary circle carries a state; the lower one has no sign change
    eig = annulus_eigenvalue(AnnulusSpec(2, 1.0, 0.5), -10.0)
    assert len(eig.roots) == 2
    assert eig.k == max(eig.roots)
    assert np.all(eig.u(np.linspace(0.5, 1.0, 51)) > 0)
    assert eig.lam <= ball_eigenvalue(BallSpec(2, 1.0), -10.0).lam


def test_annulus_tends_to_disc():
    eig = annulus_eigenvalue(AnnulusSpec(2, 1.0, 1e-3), -1.0)
    disc = ball_eigenvalue(BallSpec(2, 1.0), -1.0)
    assert abs(eig.lam - disc.lam) < 1e-2


def test_thin_annulus_below_equal_area_disc():
    spec = AnnulusSpec(2, 1.0, 0.9)
    eig = annulus_eigenvalue(spec, -10.0)
    disc = ball_eigenvalue(spec.equal_area_ball(), -10.0)
    assert eig.lam < disc.lam


def test_annulus_chain_equal_perimeter():
    spec = AnnulusSpec(2, 1.0, 0.5)
    la = annulus_eigenvalue(spec, -1.0).lam
    l1 = ball_eigenvalue(BallSpec(2, 1.0), -1.0).lam
    lp = ball_eigenvalue(spec.equal_perimeter_ball(), -1.0).lam
    assert spec.equal_perimeter_ball().R == pytest.approx(1.5)
    assert la <= l1 <= lp


@pytest.mark.parametrize("alpha", [-0.5, -2.0])
def test_annulus_three_dimensional(alpha):
    spec = AnnulusSpec(3, 1.0, 0.4)
    eig = annulus_eigenvalue(spec, alpha)
    assert eig.lam < alpha * spec.perimeter / spec.volume
    assert np.all(eig.u(np.linspace(0.4, 1.0, 11)) > 0)
