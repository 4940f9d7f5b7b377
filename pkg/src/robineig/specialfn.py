r"""Modified Bessel functions of real order and the Gamma function.

Everything here works on scalar floats. The functions needed by the radial
solver are :math:`I_\nu` and :math:`K_\nu` for small nonnegative orders, so
the code favours simple, well-conditioned evaluation paths over uniform
large-order asymptotics:

* :func:`besseli` sums the power series for ``x <= 30`` and uses the
  large-argument expansion of :math:`e^{-x} I_\nu(x)` above that.
* :func:`besselk` follows Temme's method: a series for :math:`K_\mu`,
  :math:`|\mu| \le 1/2`, when ``x <= 2`` and Steed's continued fraction
  otherwise, then forward recurrence up to the requested order.

The half-integer closed forms at the bottom are kept as independent checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "DomainError",
    "BesselValue",
    "gammafn",
    "lgammafn",
    "besseli",
    "besselk",
    "besseli_value",
    "besselk_value",
    "besseli_prime",
    "besseli_halfint",
    "besselk_halfint",
]

# Crossover between the power series and the asymptotic expansion of I_nu.
SERIES_LIMIT = 30.0
# Crossover between the Temme series and the continued fraction for K_nu.
TEMME_LIMIT = 2.0

_EPS = 1e-16
_MAXIT = 10000

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# Taylor coefficients of 1/Gamma(1 + z) about z = 0.
_RGAMMA1 = (
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
)


class DomainError(ValueError):
    """Argument outside the domain where a function is defined."""


@dataclass(frozen=True)
class BesselValue:
    """A Bessel function value together with its exponentially scaled form.

    ``scaled_value`` is ``value * exp(-x)`` for :math:`I_\\nu` and
    ``value * exp(x)`` for :math:`K_\\nu`. ``value`` may be ``inf`` when the
    unscaled number is not representable; the scaled one never is for
    ``x <= 700``.
    """

    value: float
    scaled_value: float
    order: float
    argument: float


def _check_real(name, v):
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite, got {v!r}")


def _lanczos_sum(z):
    # z is the shifted argument x - 1
    s = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        s += _LANCZOS[i] / (z + i)
    return s


def gammafn(x: float) -> float:
    """Gamma function for real ``x > 0``."""
    x = float(x)
    _check_real("x", x)
    if x <= 0.0:
        raise DomainError(f"gammafn needs x > 0, got {x!r}")
    if x < 0.5:
        # Gamma(x) = Gamma(x + 1) / x keeps the Lanczos sum in its good range
        return gammafn(x + 1.0) / x
    if x > 171.7:
        return math.inf
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * _lanczos_sum(z)


def lgammafn(x: float) -> float:
    """Natural log of :func:`gammafn`, usable far past its overflow point."""
    x = float(x)
    _check_real("x", x)
    if x <= 0.0:
        raise DomainError(f"lgammafn needs x > 0, got {x!r}")
    if x < 0.5:
        return lgammafn(x + 1.0) - math.log(x)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def _rgamma_pair(mu):
    """Return 1/Gamma(1 + mu), 1/Gamma(1 - mu) and Temme's gam1, gam2."""
    m2 = mu * mu
    even = 0.0
    odd = 0.0
    # Horner in mu**2 over the even and odd coefficient subsequences
    for c in reversed(_RGAMMA1[0::2]):
        even = even * m2 + c
    for c in reversed(_RGAMMA1[1::2]):
        odd = odd * m2 + c
    gampl = even + mu * odd
    gammi = even - mu * odd
    # gam1 = (gammi - gampl) / (2 mu), gam2 = (gammi + gampl) / 2
    return gampl, gammi, -odd, even


def _besseli_series_log(nu, x):
    """Return (log_scale, total) with I_nu(x) = exp(log_scale) * total."""
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    shift = 0.0
    m = 0
    while m < _MAXIT:
        m += 1
        ratio = q / (m * (m + nu))
        term *= ratio
        total += term
        if total > 1e250:
            term *= 1e-250
            total *= 1e-250
            shift += 250.0 * math.log(10.0)
        if ratio < 1.0 and term < _EPS * total * 0.01:
            break
    log_scale = nu * math.log(0.5 * x) - lgammafn(nu + 1.0) + shift
    return log_scale, total


def _besseli_series(nu, x, scaled):
    log_scale, total = _besseli_series_log(nu, x)
    if scaled:
        log_scale -= x
    return math.exp(log_scale) * total


def _besseli_asymptotic(nu, x):
    """Scaled e^{-x} I_nu(x) from the large-argument expansion.

    Returns ``None`` when the series does not reach full precision before its
    terms start growing (large order relative to x).
    """
    mu = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        nxt = -term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(nxt) >= abs(term) and k > 1:
            return None
        term = nxt
        total += term
        if abs(term) < _EPS * 0.1 * abs(total):
            break
        if k > 200:
            return None
    return total / math.sqrt(2.0 * math.pi * x)


def besseli(nu: float, x: float, scaled: bool = False) -> float:
    """Modified Bessel function of the first kind :math:`I_\\nu(x)`.

    Parameters
    ----------
    nu : float
        Order, ``nu >= 0``.
    x : float
        Argument, ``x >= 0``.
    scaled : bool
        Return :math:`e^{-x} I_\\nu(x)` instead.
    """
    nu = float(nu)
    x = float(x)
    _check_real("nu", nu)
    _check_real("x", x)
    if nu < 0.0 or x < 0.0:
        raise DomainError(f"besseli needs nu >= 0 and x >= 0, got nu={nu!r}, x={x!r}")
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if x > SERIES_LIMIT:
        s = _besseli_asymptotic(nu, x)
        if s is not None:
            if scaled:
                return s
            return s * math.exp(x) if x < 709.0 else math.inf
    if scaled or x < 700.0:
        return _besseli_series(nu, x, scaled)
    log_scale, total = _besseli_series_log(nu, x)
    return math.exp(log_scale) * total if log_scale < 709.0 else math.inf


def _besselk_pair(nu, x, scaled):
    """Return (K_nu(x), K_{nu+1}(x)), optionally times e^x."""
    nl = int(nu + 0.5)
    xmu = nu - nl
    xmu2 = xmu * xmu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    if x < TEMME_LIMIT:
        x2 = 0.5 * x
        pimu = math.pi * xmu
        fact = 1.0 if abs(pimu) < _EPS else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = xmu * d
        fact2 = 1.0 if abs(e) < _EPS else math.sinh(e) / e
        gampl, gammi, gam1, gam2 = _rgamma_pair(xmu)
        ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        total = ff
        e = math.exp(e)
        p = 0.5 * e / gampl
        q = 0.5 / (e * gammi)
        c = 1.0
        d = x2 * x2
        sum1 = p
        for i in range(1, _MAXIT):
            ff = (i * ff + p + q) / (i * i - xmu2)
            c *= d / i
            p /= i - xmu
            q /= i + xmu
            delta = c * ff
            total += delta
            sum1 += c * (p - i * ff)
            if abs(delta) < abs(total) * _EPS:
                break
        kmu = total
        k1 = sum1 * xi2
        if scaled:
            ex = math.exp(x)
            kmu *= ex
            k1 *= ex
    else:
        # Steed's algorithm for the continued fraction CF2
        b = 2.0 * (1.0 + x)
        d = 1.0 / b
        h = delh = d
        q1 = 0.0
        q2 = 1.0
        a1 = 0.25 - xmu2
        q = c = a1
        a = -a1
        s = 1.0 + q * delh
        for i in range(2, _MAXIT):
            a -= 2 * (i - 1)
            c = -a * c / i
            qnew = (q1 - b * q2) / a
            q1 = q2
            q2 = qnew
            q += c * qnew
            b += 2.0
            d = 1.0 / (b + a * d)
            delh = (b * d - 1.0) * delh
            h += delh
            dels = q * delh
            s += dels
            if abs(dels / s) < _EPS:
                break
        h = a1 * h
        kmu = math.sqrt(math.pi / (2.0 * x)) / s
        if not scaled:
            kmu *= math.exp(-x)
        k1 = kmu * (xmu + x + 0.5 - h) * xi
    for i in range(1, nl + 1):
        kmu, k1 = k1, (xmu + i) * xi2 * k1 + kmu
    return kmu, k1


def besselk(nu: float, x: float, scaled: bool = False) -> float:
    """Modified Bessel function of the second kind :math:`K_\\nu(x)`, ``x > 0``.

    With ``scaled=True`` returns :math:`e^{x} K_\\nu(x)`.
    """
    nu = float(nu)
    x = float(x)
    _check_real("nu", nu)
    _check_real("x", x)
    if nu < 0.0:
        raise DomainError(f"besselk needs nu >= 0, got {nu!r}")
    if x <= 0.0:
        raise DomainError(f"besselk diverges at x <= 0, got {x!r}")
    return _besselk_pair(nu, x, scaled)[0]


def besseli_value(nu: float, x: float) -> BesselValue:
    s = besseli(nu, x, scaled=True)
    v = besseli(nu, x)
    return BesselValue(value=v, scaled_value=s, order=float(nu), argument=float(x))


def besselk_value(nu: float, x: float) -> BesselValue:
    s = besselk(nu, x, scaled=True)
    v = besselk(nu, x)
    return BesselValue(value=v, scaled_value=s, order=float(nu), argument=float(x))


def besseli_prime(nu: float, x: float, scaled: bool = False) -> float:
    """Derivative :math:`I_\\nu'(x) = (I_{\\nu-1}(x) + I_{\\nu+1}(x))/2`.

    For ``nu < 1`` the lower neighbour is replaced by
    :math:`I_{\\nu+1} + (\\nu/x) I_\\nu`, which avoids negative orders.
    """
    if nu >= 1.0:
        return 0.5 * (besseli(nu - 1.0, x, scaled) + besseli(nu + 1.0, x, scaled))
    if x == 0.0:
        if nu == 0.0:
            return 0.0
        return math.inf if nu < 1.0 else 0.0
    return besseli(nu + 1.0, x, scaled) + nu / x * besseli(nu, x, scaled)


def besseli_halfint(order2: int, x: float) -> float:
    """Closed form of :math:`I_{m/2}(x)` for ``order2`` in {1, 3}.

    Used as an oracle, not by the solvers.
    """
    c = math.sqrt(2.0 / (math.pi * x))
    if order2 == 1:
        return c * math.sinh(x)
    if order2 == 3:
        return c * (math.cosh(x) - math.sinh(x) / x)
    raise DomainError(f"closed form only for orders 1/2 and 3/2, got {order2}/2")


def besselk_halfint(order2: int, x: float) -> float:
    """Closed form of :math:`K_{m/2}(x)` for ``order2`` in {1, 3, 5}."""
    c = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
    if order2 == 1:
        return c
    if order2 == 3:
        return c * (1.0 + 1.0 / x)
    if order2 == 5:
        return c * (1.0 + 3.0 / x + 3.0 / (x * x))
    raise DomainError(f"closed form only for orders 1/2, 3/2, 5/2, got {order2}/2")
