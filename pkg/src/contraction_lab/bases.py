"""Separable eigenfunctions, Wigner functions, interbasis expansions and a
finite-difference Helmholtz residual."""

from dataclasses import dataclass, field
import cmath
import math
from typing import Callable

import numpy as np
from scipy import special as sps

from . import geometry as geo
from .specfun import (SeriesError, bessel_j, hankel1, hyp_2f1, hyp_2f1_poly,
                      hyp_3f2_unit)


# ---------------------------------------------------------------------------
# spherical harmonics

def _check_lm(l, m):
    if l < 0 or abs(m) > l:
        raise ValueError("need 0 <= |m| <= l, got l=%r m=%r" % (l, m))


def _lfact(n):
    return math.lgamma(n + 1)


def sph_harm(l, m, theta, phi, form="standard"):
    """Normalized spherical harmonic Y_lm(theta, phi).

    form="standard" uses the 2F1 in sin^2(theta/2); form="parity" uses the
    representation split by the parity of l+m (2F1 in cos^2 theta). The
    phase is (-1)^((m+|m|)/2), which coincides with Condon-Shortley."""
    _check_lm(l, m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if form == "standard":
        val = _sph_standard(l, m, theta)
    elif form == "parity":
        val = _sph_parity(l, m, theta)
    else:
        raise ValueError("unknown form %r" % (form,))
    out = val * np.exp(1j * m * phi)
    return complex(out) if out.ndim == 0 else out


def _sph_standard(l, m, theta):
    am = abs(m)
    sign = -1.0 if (m > 0 and am % 2) else 1.0
    log_c = 0.5 * (math.log((2 * l + 1) / 2) + _lfact(l + am) - _lfact(l - am))
    log_c -= am * math.log(2) + _lfact(am)
    poly = hyp_2f1_poly(l - am, l + am + 1, am + 1, np.sin(theta / 2) ** 2).real
    return sign * math.exp(log_c) * np.sin(theta) ** am * poly / math.sqrt(2 * math.pi)


def _sph_parity(l, m, theta):
    am = abs(m)
    ct = np.cos(theta)
    # the parity form is written for m >= 0; negative m follows from conjugation
    mm = am
    g = 0.5 * (math.lgamma((l + mm + 1) / 2) + math.lgamma((l - mm + 1) / 2)
               - math.lgamma((l + mm + 2) / 2) - math.lgamma((l - mm + 2) / 2))
    if (l + mm) % 2 == 0:
        val = (-1) ** ((l + mm) // 2) * math.exp(g) * hyp_2f1_poly((l - mm) // 2, (l + mm + 1) / 2, 0.5, ct * ct).real
    else:
        val = ((-1) ** ((l + mm - 1) // 2) * math.exp(-g) * 2 * ct
               * hyp_2f1_poly((l - mm - 1) // 2, (l + mm + 2) / 2, 1.5, ct * ct).real)
    val = math.sqrt(2 * l + 1) / (2 * math.pi) * np.sin(theta) ** am * val
    if m < 0:
        val = (-1) ** am * val
    return val


def condon_shortley_factor(l, m):
    """Factor c with Y_CS = c * Y for the phase convention used here.

    The (-1)^((m+|m|)/2) phase equals the Condon-Shortley choice, so c = 1
    for every (l, m); the function exists so callers can state the
    conversion explicitly."""
    _check_lm(l, m)
    return 1.0


# ---------------------------------------------------------------------------
# Wigner functions

_HALF_PI_SNAP = 1e-14


def wigner_d(l, m, mp, beta):
    """Little Wigner function d^l_{m m'}(beta) from the 2F1 in -tan^2(beta/2).

    At beta = pi/2 the argument is snapped to -1 so the terminating series
    is summed exactly. For beta > pi/2 the reflection beta -> pi - beta is
    used to keep tan(beta/2) bounded."""
    _check_lm(l, m)
    _check_lm(l, mp)
    beta = float(beta)
    if beta < 0:
        return float((-1) ** ((m - mp) % 2) * wigner_d(l, m, mp, -beta))
    beta = math.fmod(beta, 4 * math.pi)
    if beta > 2 * math.pi:
        return float((-1) ** (2 * l % 2) * wigner_d(l, m, mp, beta - 2 * math.pi))
    if beta > math.pi:
        # d(beta) for beta in (pi, 2pi) via d(2pi - beta) and the sign (-1)^(m - m')
        return float((-1) ** ((m - mp) % 2) * wigner_d(l, m, mp, 2 * math.pi - beta))
    if beta > math.pi / 2 + _HALF_PI_SNAP:
        return float((-1) ** ((l + m) % 2) * wigner_d(l, m, -mp, math.pi - beta))
    if m < mp:
        return float((-1) ** ((m - mp) % 2) * wigner_d(l, mp, m, beta))
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    if abs(beta - math.pi / 2) <= _HALF_PI_SNAP:
        t2 = 1.0
        c = s = math.sqrt(0.5)
    else:
        t2 = math.tan(beta / 2) ** 2
    if s == 0.0:
        return 1.0 if m == mp else 0.0
    d = m - mp
    log_c = 0.5 * (_lfact(l + m) + _lfact(l - mp) - _lfact(l - m) - _lfact(l + mp)) - _lfact(d)
    f = hyp_2f1(m - l, -mp - l, d + 1, -t2).real
    return float((-1) ** (d % 2) * math.exp(log_c) * c ** (2 * l - d) * s ** d * f)


def wigner_d_matrix(l, beta):
    """(2l+1)x(2l+1) array of d^l_{m m'}(beta), rows and columns ascending in m."""
    n = 2 * l + 1
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = wigner_d(l, i - l, j - l, beta)
    return out


def wigner_D(l, m, mp, alpha, beta, gamma):
    """Wigner D^l_{m m'}(alpha, beta, gamma) = e^{-i m alpha} d(beta) e^{-i m' gamma}."""
    return cmath.exp(-1j * m * alpha) * wigner_d(l, m, mp, beta) * cmath.exp(-1j * mp * gamma)


def wigner_D_matrix(l, alpha, beta, gamma):
    ms = np.arange(-l, l + 1)
    d = wigner_d_matrix(l, beta)
    return np.exp(-1j * ms * alpha)[:, None] * d * np.exp(-1j * ms * gamma)[None, :]


class QuadratureError(ArithmeticError):
    """Node doubling did not stabilise the quadrature."""


QUAD_TOL = 1e-10
QUAD_MAX_NODES = 2 ** 14


def _halfpi_3f2(l, m2, m1):
    lf = math.lgamma
    common = 0.5 * (_lfact(l + m2) + _lfact(l - m2)) - _lfact(l) - 0.5 * math.log(math.pi)
    g = 0.5 * (lf((l + m1 + 1) / 2) + lf((l - m1 + 1) / 2) - lf((l + m1) / 2 + 1) - lf((l - m1) / 2 + 1))
    # i^(l - m1) (-1)^m2 is the phase that matches the other two routes
    phase = 1j ** ((l - m1) % 4) * (-1) ** (m2 % 2)
    if (l + m1) % 2 == 0:
        val = math.exp(common + g) * hyp_3f2_unit(-m2, m2, (l + m1 + 1) / 2, 0.5, l + 1)
    else:
        if m2 == 0:
            return 0.0
        val = (-2j * m2 / (l + 1) * math.exp(common - g)
               * hyp_3f2_unit(1 - m2, 1 + m2, (l + m1) / 2 + 1, 1.5, l + 2))
    return float((phase * val).real)


def _halfpi_integral(l, m2, m1, tol=QUAD_TOL, max_nodes=QUAD_MAX_NODES):
    log_c = l * math.log(2) - math.log(math.pi)
    log_c += 0.5 * (_lfact(l + m2) + _lfact(l - m2) - _lfact(l + m1) - _lfact(l - m1))
    phase = 1j ** ((l - m1) % 4)

    def rule(n):
        a = np.arange(n) * (math.pi / n)
        f = np.sin(a) ** (l - m1) * np.cos(a) ** (l + m1) * np.exp(2j * m2 * a)
        return f.sum() * (math.pi / n)

    # the integrand is a trigonometric polynomial of degree <= 2(l + |m2|);
    # starting below that bandwidth lets aliased rules agree spuriously
    n = 16
    while n <= 2 * (l + abs(m2)) + 2:
        n *= 2
    prev = rule(n)
    while n < max_nodes:
        n *= 2
        cur = rule(n)
        if abs(cur - prev) * math.exp(log_c) <= tol:
            return float((phase * math.exp(log_c) * cur).real)
        prev = cur
    raise QuadratureError("integral for d^%d_{%d,%d}(pi/2) not stable at %d nodes" % (l, m2, m1, n))


def wigner_d_halfpi(l, m2, m1, method="hyp3f2"):
    """d^l_{m2 m1}(pi/2) by the terminating 3F2(1) route or by quadrature."""
    _check_lm(l, m2)
    _check_lm(l, m1)
    if method == "hyp3f2":
        return _halfpi_3f2(l, m2, m1)
    if method == "integral":
        return _halfpi_integral(l, m2, m1)
    if method == "hyp2f1":
        return wigner_d(l, m2, m1, math.pi / 2)
    raise ValueError("unknown method %r" % (method,))


# ---------------------------------------------------------------------------
# rotations of spherical harmonics

# Euler angles relating the three spherical systems on S2
EXPANSION_ANGLES = {
    ("spherical", "spherical_prime"): (0.0, math.pi / 2, math.pi / 2),
    # gamma = pi: with gamma = 0 the double-primed harmonics pick up (-1)^m''
    # and the relation disagrees with composing the other two
    ("spherical", "spherical_dprime"): (math.pi / 2, math.pi / 2, math.pi),
    ("spherical_prime", "spherical_dprime"): (0.0, math.pi / 2, math.pi / 2),
}


def rotate_sph_expansion(l, mp, angles, theta, phi):
    """sum_m D^l_{m m'}(angles) Y_lm(theta, phi)."""
    _check_lm(l, mp)
    alpha, beta, gamma = angles
    total = 0j
    for m in sorted(range(-l, l + 1), key=abs):
        total += wigner_D(l, m, mp, alpha, beta, gamma) * sph_harm(l, m, theta, phi)
    return total


def rotated_angles(angles, theta, phi, pole_tol=1e-12):
    """Angles (theta', phi') of the rotated frame for a point at (theta, phi)."""
    alpha, beta, gamma = angles
    ct = math.cos(theta) * math.cos(beta) + math.sin(theta) * math.sin(beta) * math.cos(phi - alpha)
    ct = max(-1.0, min(1.0, ct))
    if 1 - abs(ct) < pole_tol:
        raise geo.SingularityError("rotated point sits on a pole; phi' is undefined")
    y = math.sin(theta) * math.sin(phi - alpha)
    x = math.sin(theta) * math.cos(phi - alpha) * math.cos(beta) - math.cos(theta) * math.sin(beta)
    return math.acos(ct), math.fmod(math.atan2(y, x) - gamma + 4 * math.pi, 2 * math.pi)


def expansion_matrix(l, source, target):
    """Matrix C with Y^target_{l m'} = sum_m C[m, m'] Y^source_{l m}."""
    return wigner_D_matrix(l, *EXPANSION_ANGLES[(source, target)])


def interbasis_residual(l, u, R=1.0):
    """Largest pointwise defect of the three spherical interbasis expansions
    and of their composition at the ambient point u."""
    space = geo.S2(R)
    ang = {}
    for name in ("spherical", "spherical_prime", "spherical_dprime"):
        p = geo.from_ambient(space, geo.make_chart("S2", name), np.asarray(u, dtype=float))
        ang[name] = p.coords
    vals = {n: np.array([sph_harm(l, m, *ang[n]) for m in range(-l, l + 1)]) for n in ang}
    worst = 0.0
    for (src, dst) in EXPANSION_ANGLES:
        pred = vals[src] @ expansion_matrix(l, src, dst)
        worst = max(worst, float(np.max(np.abs(pred - vals[dst]))))
    comp = expansion_matrix(l, "spherical", "spherical_prime") @ expansion_matrix(l, "spherical_prime", "spherical_dprime")
    pred = vals["spherical"] @ comp
    worst = max(worst, float(np.max(np.abs(pred - vals["spherical_dprime"]))))
    direct = expansion_matrix(l, "spherical", "spherical_dprime")
    return max(worst, float(np.max(np.abs(comp - direct))))


# ---------------------------------------------------------------------------
# plane waves and cylindrical waves

def plane_wave_partial(k, r, delta, M):
    """sum_{|m| <= M} i^m J_m(kr) e^{i m delta}."""
    if M < 0:
        raise ValueError("M must be non-negative")
    x = k * r
    total = complex(bessel_j(0, x))
    for m in range(1, M + 1):
        jm = bessel_j(m, x)
        # J_{-m} = (-1)^m J_m, and i^{-m} (-1)^m = i^m
        total += (1j ** (m % 4)) * jm * (cmath.exp(1j * m * delta) + cmath.exp(-1j * m * delta))
    return total


def bessel_via_quadrature(m, k, r, theta=0.0, tol=1e-14, max_nodes=4096):
    """J_m(kr) e^{i m theta} from the angular integral of a plane wave.

    (-i)^m / (2 pi) int_0^{2 pi} exp(i m phi + i k r cos(theta - phi)) dphi."""
    x = k * r

    def rule(n):
        ph = np.arange(n) * (2 * math.pi / n)
        return np.mean(np.exp(1j * m * ph + 1j * x * np.cos(theta - ph)))

    n = 32
    prev = rule(n)
    while n < max_nodes:
        n *= 2
        cur = rule(n)
        if abs(cur - prev) <= tol:
            return complex((-1j) ** (m % 4) * cur)
        prev = cur
    raise QuadratureError("plane-wave quadrature not stable at %d nodes" % n)


# ---------------------------------------------------------------------------
# H2 bases

def _log_sinh(x):
    x = abs(x)
    return x + math.log1p(-math.exp(-2 * x)) - math.log(2)


def _log_cosh(x):
    x = abs(x)
    return x + math.log1p(math.exp(-2 * x)) - math.log(2)


def _loggamma(z):
    return complex(sps.loggamma(complex(z)))


def h2_pseudospherical(rho, m, tau, phi, R=1.0):
    """Delta-normalized pseudo-spherical eigenfunction on H2.

    sqrt(rho sinh(pi rho)/(2 pi^2 R)) |Gamma(1/2 + i rho + |m|)|
    P^{-|m|}_{i rho - 1/2}(cosh tau) e^{i m phi}, assembled in log scale.
    Pairing the Gamma factor with the negative-order Legendre function keeps
    the product bounded as rho grows."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    if tau < 0:
        raise ValueError("tau must be non-negative")
    am = abs(int(m))
    if am > 0 and tau == 0:
        return 0j
    log_pre = 0.5 * (math.log(rho) + _log_sinh(math.pi * rho) - math.log(2 * math.pi ** 2 * R))
    lg_plus = _loggamma(0.5 + 1j * rho + am)
    log_pre += lg_plus.real
    # P^{-|m|}: sinh^|m| / (|m|! 2^|m|) times a 2F1
    log_p = -_lfact(am) - am * math.log(2)
    if am:
        log_p += am * math.log(math.sinh(tau))
    f = hyp_2f1(0.5 + am + 1j * rho, 0.5 + am - 1j * rho, 1 + am, -math.sinh(tau / 2) ** 2)
    val = math.exp(log_pre + log_p) * f
    # P is real for real tau; drop the roundoff imaginary part before the phase
    return complex(val.real) * cmath.exp(1j * m * phi)


def h2_equidistant(rho, lam, tau1, tau2, R=1.0):
    """Equidistant eigenfunction on H2 built from the Ferrers function
    P^{i rho}_{i lam - 1/2}(-tanh tau1), written as two 2F1 in tanh^2 tau1."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    a = 0.5j * (rho - lam)
    b = 0.5j * (rho + lam)
    for z in (0.75 - a, 0.75 - b, 0.25 - a, 0.25 - b):
        if abs(z.imag) < 1e-14 and z.real <= 0 and abs(z.real - round(z.real)) < 1e-14:
            raise SeriesError("gamma pole at exceptional (rho, lam)")
    th = math.tanh(tau1)
    lc = _log_cosh(tau1)
    log_norm = 0.5 * (math.log(rho) + _log_sinh(math.pi * rho)
                      - np.logaddexp(2 * _log_cosh(math.pi * lam), 2 * _log_sinh(math.pi * rho)))
    # 2^{i rho} (cosh tau1)^{i rho} sqrt(pi), then the cosh^{-1/2} weight
    log_common = log_norm + 0.5 * math.log(math.pi) + 1j * rho * (math.log(2) + lc) - 0.5 * lc
    even = cmath.exp(log_common - _loggamma(0.75 - a) - _loggamma(0.75 - b))
    even *= hyp_2f1(0.25 - a, 0.25 - b, 0.5, th * th)
    odd = 0j
    if th != 0.0:
        odd = cmath.exp(log_common - _loggamma(0.25 - a) - _loggamma(0.25 - b))
        odd *= 2 * th * hyp_2f1(0.75 - a, 0.75 - b, 1.5, th * th)
    return (even + odd) * cmath.exp(1j * lam * tau2)


def h2_pseudospherical_continued(rho, m, s, phi, R=1.0, log_scale=0.0):
    """Pseudo-spherical eigenfunction continued to tau = i pi/2 + s.

    The Legendre factor is taken in its two-2F1 form in cosh^2 tau, with
    cosh tau = i sinh s and sinh tau = i cosh s. The result is multiplied by
    exp(log_scale) before leaving log space, since the bare value grows like
    exp(pi rho / 2)."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    am = abs(int(m))
    a3 = 0.75 + (am - 1j * rho) / 2
    b3 = 0.75 + (am + 1j * rho) / 2
    a1, b1 = a3 - 0.5, b3 - 0.5
    ch = 1j * math.sinh(s)
    z = -math.sinh(s) ** 2
    ratio = cmath.exp(_loggamma(a3) + _loggamma(b3) - _loggamma(a1) - _loggamma(b1))
    bracket = hyp_2f1(a1, b1, 0.5, z) + 2 * ch * ratio * hyp_2f1(a3, b3, 1.5, z)
    log_val = (0.5 * math.log(math.pi) - am * math.log(2) + am * cmath.log(1j * math.cosh(s))
               - _loggamma(a3) - _loggamma(b3))
    log_val += 0.5 * (math.log(rho) + _log_sinh(math.pi * rho) - math.log(2 * math.pi ** 2 * R))
    log_val += _loggamma(0.5 + 1j * rho + am).real + log_scale
    return cmath.exp(log_val) * bracket * cmath.exp(1j * m * phi)


def h2_equidistant_continued(rho, lam, s, tau2, R=1.0):
    """Equidistant eigenfunction continued to tau1 = i pi/2 + s, 0 < s.

    Uses the expansion of the Legendre factor in coth^2 tau1 = tanh^2 s.
    The constant i^{i rho} picked up by (sinh tau1)^{i rho} is left out,
    so that the continued function stays of order sqrt(R)."""
    if rho <= 0 or lam == 0:
        raise ValueError("need rho > 0 and lam != 0")
    if s <= 0:
        raise ValueError("s must be positive")
    t = math.tanh(s)
    z = t * t
    log_norm = 0.5 * (math.log(rho) + _log_sinh(math.pi * rho)
                      - np.logaddexp(2 * _log_cosh(math.pi * lam), 2 * _log_sinh(math.pi * rho)))
    common = (log_norm - 0.5 * cmath.log(1j * math.sinh(s)) - 0.5 * math.log(2 * math.pi)
              + 1j * rho * _log_cosh(s))
    first = (-1j * lam * math.log(2) + (1j * lam + 0.5) * math.log(t)
             + _loggamma(-1j * lam) - _loggamma(0.5 - 1j * (rho + lam)))
    second = (1j * lam * math.log(2) + (0.5 - 1j * lam) * math.log(t)
              + _loggamma(1j * lam) - _loggamma(0.5 - 1j * (rho - lam)))
    f1 = hyp_2f1(0.25 - 0.5j * (rho - lam), 0.75 - 0.5j * (rho - lam), 1 + 1j * lam, z)
    f2 = hyp_2f1(0.25 - 0.5j * (rho + lam), 0.75 - 0.5j * (rho + lam), 1 - 1j * lam, z)
    val = cmath.exp(common + first) * f1 + cmath.exp(common + second) * f2
    return val * cmath.exp(1j * lam * tau2)


def h2_eigenvalue(rho, R=1.0):
    """Laplace-Beltrami eigenvalue l(l+1)/R^2 with l = -1/2 + i rho."""
    return -(rho * rho + 0.25) / R ** 2


def s2_eigenvalue(l, R=1.0):
    """Laplace-Beltrami eigenvalue -l(l+1)/R^2 on the sphere."""
    return -l * (l + 1) / R ** 2


# ---------------------------------------------------------------------------
# flat bases

FLAT_CHARTS = {"E2": ("cartesian", "polar"), "E11": ("cartesian", "pseudo_polar")}


def flat_basis(space, chart, qn, point):
    """Separated Helmholtz solution on E2 or E11.

    E2 cartesian: e^{i(k1 x + k2 y)} (qn k1, k2); E2 polar: J_|m|(kr) e^{i m phi}
    (qn k, m); E11 cartesian: e^{i k0 t - i k1 x} (qn k0, k1); E11
    pseudo_polar: H^(1)_{i lam}(kr) e^{i lam tau} (qn k, lam)."""
    kind = space.kind if isinstance(space, geo.Space) else space
    if chart not in FLAT_CHARTS.get(kind, ()):
        raise ValueError("no flat basis for %s.%s" % (kind, chart))
    q = tuple(float(v) for v in point)
    if kind == "E2" and chart == "cartesian":
        return cmath.exp(1j * (qn["k1"] * q[0] + qn["k2"] * q[1]))
    if kind == "E2":
        m = int(qn["m"])
        return bessel_j(abs(m), qn["k"] * q[0]) * cmath.exp(1j * m * q[1])
    if chart == "cartesian":
        return cmath.exp(1j * qn["k0"] * q[0] - 1j * qn["k1"] * q[1])
    return hankel1(1j * qn["lam"], qn["k"] * q[0]) * cmath.exp(1j * qn["lam"] * q[1])


def flat_eigenvalue(space, chart, qn):
    """Eigenvalue of the flat Laplacian (d_x^2 + d_y^2 or d_t^2 - d_x^2)."""
    kind = space.kind if isinstance(space, geo.Space) else space
    if kind == "E2" and chart == "cartesian":
        return -(qn["k1"] ** 2 + qn["k2"] ** 2)
    if kind == "E11" and chart == "cartesian":
        return -(qn["k0"] ** 2 - qn["k1"] ** 2)
    return -qn["k"] ** 2


# ---------------------------------------------------------------------------
# basis functions and the Helmholtz residual

@dataclass(frozen=True)
class BasisFunction:
    """A separated eigenfunction attached to a chart, with its eigenvalue."""
    space: geo.Space
    chart: str
    qn: dict = field(hash=False)
    evaluate: Callable = field(hash=False, repr=False)
    eigenvalue: float = 0.0
    normalization: str = ""
    params: dict = field(default_factory=dict, hash=False)

    def __call__(self, coords):
        return self.evaluate(*coords)

    def on_plane(self, target=None):
        """The function expressed in flat (Beltrami or Cartesian) coordinates."""
        chart = geo.make_chart(self.space.kind, self.chart, **self.params)
        space = self.space

        def f(x):
            x = np.asarray(x, dtype=float)
            a = geo.beltrami_lift(space, x, target) if space.curved else x
            out = np.empty(len(x), dtype=complex)
            for i, pt in enumerate(a):
                if space.curved or chart.name != "cartesian":
                    q = geo.from_ambient(space, chart, pt).coords
                else:
                    q = pt
                out[i] = self.evaluate(*q)
            return out

        return f


def sphere_basis(l, m, R=1.0, chart="spherical"):
    return BasisFunction(geo.S2(R), chart, {"l": l, "m": m},
                         lambda th, ph: sph_harm(l, m, th, ph), s2_eigenvalue(l, R), "unit sphere")


def pseudospherical_basis(rho, m, R=1.0):
    return BasisFunction(geo.H2(R), "pseudo_spherical", {"rho": rho, "m": m},
                         lambda tau, ph: h2_pseudospherical(rho, m, tau, ph, R),
                         h2_eigenvalue(rho, R), "delta")


def equidistant_basis(rho, lam, R=1.0):
    return BasisFunction(geo.H2(R), "equidistant", {"rho": rho, "lam": lam},
                         lambda t1, t2: h2_equidistant(rho, lam, t1, t2, R),
                         h2_eigenvalue(rho, R), "delta")


def flat_basis_function(kind, chart, **qn):
    space = geo.E2() if kind == "E2" else geo.E11()
    return BasisFunction(space, chart, dict(qn),
                         lambda a, b: flat_basis(kind, chart, qn, (a, b)),
                         flat_eigenvalue(kind, chart, qn), "plane wave")


def helmholtz_residual(space, f, eigenvalue, p, h=1e-3, target=None):
    """max |Delta f - eigenvalue f| over flat points p (Beltrami on curved spaces).

    f is a BasisFunction or a callable on (n, 2) arrays of flat points."""
    if isinstance(f, BasisFunction):
        f = f.on_plane(target)
    p = np.atleast_2d(np.asarray(p, dtype=float))
    lap = geo.laplace_beltrami_apply(space, f, p, h=h, target=target)
    val = np.asarray(f(p))
    return float(np.max(np.abs(lap - eigenvalue * val)))
