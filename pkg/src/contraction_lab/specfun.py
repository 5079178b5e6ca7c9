"""Scalar special functions: hypergeometric series, Bessel functions of
complex order, conical Legendre functions, Jacobi elliptic functions and
complex gamma helpers."""

from dataclasses import dataclass
import math
from fractions import Fraction

import numpy as np
from scipy import special as sps


class SeriesError(ArithmeticError):
    """A series did not converge or hit a pole."""


@dataclass(frozen=True)
class SeriesControl:
    max_terms: int = 500
    abs_tol: float = 1e-15
    rel_tol: float = 1e-13

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")


DEFAULT_CONTROL = SeriesControl()
_TRANSFORM_RADIUS = 0.75


def _nonpos_int(x, tol=1e-12):
    """Return n >= 0 if x == -n (to tolerance), else None."""
    x = complex(x)
    if abs(x.imag) > tol:
        return None
    r = round(x.real)
    if r <= 0 and abs(x.real - r) < tol:
        return int(-r)
    return None


def _near_int(x, tol=1e-9):
    x = complex(x)
    return abs(x.imag) < tol and abs(x.real - round(x.real)) < tol


def _gamma_ratio(num, den):
    """prod Gamma(num) / prod Gamma(den) evaluated through log-gamma.

    A pole in the denominator makes the ratio zero."""
    for d in den:
        if _nonpos_int(d) is not None:
            return 0j
    for n in num:
        if _nonpos_int(n) is not None:
            raise SeriesError("gamma pole in numerator at %r" % (n,))
    s = sum(sps.loggamma(complex(n)) for n in num)
    s -= sum(sps.loggamma(complex(d)) for d in den)
    return complex(np.exp(s))


def _pfq_series(a_list, b_list, z, ctl, terminate_at=None):
    total = 1 + 0j
    term = 1 + 0j
    z = complex(z)
    limit = ctl.max_terms if terminate_at is None else terminate_at
    small = 0
    for n in range(limit):
        num = 1 + 0j
        for a in a_list:
            num *= a + n
        den = complex(n + 1)
        for b in b_list:
            den *= b + n
        if den == 0:
            raise SeriesError("lower parameter pole reached before termination")
        term = term * num / den * z
        total += term
        if terminate_at is None:
            if abs(term) <= ctl.abs_tol + ctl.rel_tol * abs(total):
                small += 1
                if small >= 2:
                    return total
            else:
                small = 0
    if terminate_at is None:
        raise SeriesError("series did not converge in %d terms" % ctl.max_terms)
    return total


def _exact_terminating(a_list, b_list, z, n):
    """Finite hypergeometric sum in rational arithmetic, or None if inputs are not real."""
    vals = list(a_list) + list(b_list) + [z]
    if any(complex(v).imag != 0 for v in vals):
        return None
    a_q = [Fraction(complex(v).real) for v in a_list]
    b_q = [Fraction(complex(v).real) for v in b_list]
    z_q = Fraction(complex(z).real)
    total = Fraction(1)
    term = Fraction(1)
    for k in range(n):
        num = Fraction(1)
        for a in a_q:
            num *= a + k
        den = Fraction(k + 1)
        for b in b_q:
            den *= b + k
        if den == 0:
            raise SeriesError("lower parameter pole reached before termination")
        term = term * num / den * z_q
        total += term
    return complex(float(total))


def _terminating_order(params):
    orders = [n for n in (_nonpos_int(p) for p in params) if n is not None]
    return min(orders) if orders else None


def _f21_direct(a, b, c, z, ctl):
    n = _terminating_order((a, b))
    if n is not None:
        # the last nonzero term has index n
        cn = _nonpos_int(c)
        if cn is not None and cn < n:
            raise SeriesError("c is a pole before the series terminates")
        # simple rational arguments (such as z = -1) are summed exactly, which
        # removes the cancellation between alternating terms
        if complex(z).imag == 0 and Fraction(complex(z).real).denominator <= 2 ** 16:
            exact = _exact_terminating((a, b), (c,), z, n)
            if exact is not None:
                return exact
        return _pfq_series((a, b), (c,), z, ctl, terminate_at=n)
    if _nonpos_int(c) is not None:
        raise SeriesError("c is a non-positive integer")
    if abs(z) >= 1:
        raise SeriesError("series diverges for |z| >= 1")
    # enlarge the budget near the unit circle
    need = int(math.log(ctl.abs_tol) / math.log(max(abs(z), 1e-300))) + 50 if z != 0 else 1
    if need > ctl.max_terms:
        ctl = SeriesControl(min(need, 200000), ctl.abs_tol, ctl.rel_tol)
    return _pfq_series((a, b), (c,), z, ctl)


def _f21_one_minus_z(a, b, c, z, ctl):
    w = 1 - z
    s = c - a - b
    t1 = _gamma_ratio((c, s), (c - a, c - b)) * _f21_direct(a, b, 1 - s, w, ctl)
    t2 = _gamma_ratio((c, -s), (a, b)) * w ** s * _f21_direct(c - a, c - b, 1 + s, w, ctl)
    return t1 + t2


def _f21_inverse_z(a, b, c, z, ctl):
    w = 1 / z
    mz = -z
    t1 = _gamma_ratio((c, b - a), (b, c - a)) * mz ** (-a) * _f21_direct(a, a - c + 1, a - b + 1, w, ctl)
    t2 = _gamma_ratio((c, a - b), (a, c - b)) * mz ** (-b) * _f21_direct(b, b - c + 1, b - a + 1, w, ctl)
    return t1 + t2


def _f21_inverse_one_minus_z(a, b, c, z, ctl):
    w = 1 / (1 - z)
    t1 = _gamma_ratio((c, b - a), (b, c - a)) * (1 - z) ** (-a) * _f21_direct(a, c - b, a - b + 1, w, ctl)
    t2 = _gamma_ratio((c, a - b), (a, c - b)) * (1 - z) ** (-b) * _f21_direct(b, c - a, b - a + 1, w, ctl)
    return t1 + t2


def _f21_pfaff(a, b, c, z, ctl):
    return (1 - z) ** (-a) * _f21_direct(a, c - b, c, z / (z - 1), ctl)


def _f21_transformed(a, b, c, z, ctl):
    options = [(abs(z / (z - 1)), _f21_pfaff)]
    if not _near_int(c - a - b):
        options.append((abs(1 - z), _f21_one_minus_z))
    if not _near_int(a - b):
        options.append((abs(1 / z), _f21_inverse_z))
        options.append((abs(1 / (1 - z)), _f21_inverse_one_minus_z))
    # never use the 1/z family on the branch cut z > 1
    if z.imag == 0 and z.real > 1:
        options = [o for o in options if o[1] is not _f21_inverse_z]
    radius, fn = min(options, key=lambda o: o[0])
    if radius < min(abs(z), _TRANSFORM_RADIUS + 0.1):
        return fn(a, b, c, z, ctl)
    if abs(z) < 1:
        return _f21_direct(a, b, c, z, ctl)
    # degenerate parameters outside the disc: symmetric perturbation
    eps = 1e-6
    up = _f21_transformed(a + eps, b, c, z, ctl)
    dn = _f21_transformed(a - eps, b, c, z, ctl)
    return 0.5 * (up + dn)


def hyp_2f1(a, b, c, z, ctl=None):
    """Gauss hypergeometric function 2F1(a, b; c; z)."""
    ctl = ctl or DEFAULT_CONTROL
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if z == 0:
        return 1 + 0j
    if _terminating_order((a, b)) is not None:
        return _f21_direct(a, b, c, z, ctl)
    if _nonpos_int(c) is not None:
        raise SeriesError("c is a non-positive integer")
    if abs(z) < _TRANSFORM_RADIUS:
        return _f21_direct(a, b, c, z, ctl)
    return _f21_transformed(a, b, c, z, ctl)


def hyp_2f1_poly(n, b, c, z):
    """Terminating 2F1(-n, b; c; z) evaluated elementwise over an array z."""
    n = int(n)
    if n < 0:
        raise ValueError("n must be non-negative")
    z = np.asarray(z)
    term = np.ones_like(z, dtype=complex)
    total = term.copy()
    for k in range(n):
        den = (c + k) * (k + 1)
        if den == 0:
            raise SeriesError("lower parameter pole reached before termination")
        term = term * ((k - n) * (b + k) / den) * z
        total = total + term
    return total


def hyp_0f1(c, z, ctl=None):
    """Confluent limit function 0F1(; c; z)."""
    ctl = ctl or DEFAULT_CONTROL
    if _nonpos_int(c) is not None:
        raise SeriesError("c is a non-positive integer")
    z = complex(z)
    # the terms peak near n ~ sqrt|z|; give the series room past that
    need = int(4 * math.sqrt(abs(z))) + 60
    if need > ctl.max_terms:
        ctl = SeriesControl(need, ctl.abs_tol, ctl.rel_tol)
    return _pfq_series((), (complex(c),), z, ctl)


def hyp_3f2_unit(a1, a2, a3, b1, b2):
    """Terminating 3F2(a1, a2, a3; b1, b2; 1) as an exact finite sum."""
    n = _terminating_order((a1, a2, a3))
    if n is None:
        raise SeriesError("3F2 at unit argument is only supported when terminating")
    exact = _exact_terminating((a1, a2, a3), (b1, b2), 1, n)
    if exact is None:
        raise SeriesError("terminating 3F2 needs real parameters")
    return exact.real


def bessel_j(nu, x, ctl=None):
    """Bessel function J_nu(x) for complex order nu and real x >= 0."""
    nu = complex(nu)
    x = float(x)
    if x < 0:
        raise ValueError("x must be non-negative")
    if nu.imag == 0 and x > 25.0:
        # large real-order arguments: the series loses too many digits
        return complex(sps.jv(nu.real, x))
    n = _nonpos_int(nu + 1)
    if n is not None:
        # negative integer order: J_{-n} = (-1)^n J_n
        m = n + 1
        return (-1) ** m * bessel_j(m, x, ctl)
    if x == 0:
        return 1 + 0j if nu == 0 else 0j
    pref = np.exp(nu * math.log(x / 2) - sps.loggamma(nu + 1))
    return complex(pref * hyp_0f1(nu + 1, -x * x / 4, ctl))


def hankel1(nu, x, ctl=None):
    """Hankel function H^(1)_nu(x) assembled from J_nu and J_{-nu}."""
    nu = complex(nu)
    if _near_int(nu):
        raise ValueError("integer order is not supported by the J-combination")
    jp = bessel_j(nu, x, ctl)
    jm = bessel_j(-nu, x, ctl)
    return (jm - np.exp(-1j * np.pi * nu) * jp) / (1j * np.sin(np.pi * nu))


def log_abs_gamma(x, y=0.0):
    """log |Gamma(x + i y)|."""
    z = complex(x, y)
    if _nonpos_int(z) is not None:
        raise ValueError("gamma pole at %r" % (z,))
    return float(sps.loggamma(z).real)


def abs_gamma(x, y=0.0):
    """|Gamma(x + i y)|."""
    return math.exp(log_abs_gamma(x, y))


def conical_p(m, rho, tau, ctl=None):
    """Conical function P^m_{-1/2 + i rho}(cosh tau) for integer m >= 0."""
    if tau < 0:
        raise ValueError("tau must be non-negative")
    m = abs(int(m))
    if m > 0 and tau == 0:
        return 0.0
    lead = _gamma_ratio((0.5 + 1j * rho + m,), (0.5 + 1j * rho - m,))
    lead /= math.factorial(m) * 2.0 ** m
    z = -math.sinh(tau / 2) ** 2
    f = hyp_2f1(0.5 + m + 1j * rho, 0.5 + m - 1j * rho, 1 + m, z, ctl)
    return float((lead * math.sinh(tau) ** m * f).real)


# Jacobi elliptic functions -------------------------------------------------

def _check_modulus(k):
    if not (0 <= k < 1):
        raise ValueError("modulus must satisfy 0 <= k < 1, got %r" % (k,))


def elliptic_K(k):
    """Complete elliptic integral of the first kind K(k) by the AGM."""
    _check_modulus(k)
    a, b = 1.0, math.sqrt(1 - k * k)
    for _ in range(60):
        if abs(a - b) <= 4e-16 * a:
            break
        a, b = (a + b) / 2, math.sqrt(a * b)
    return math.pi / (2 * a)


def jacobi_elliptic(u, k):
    """(sn, cn, dn) of real argument u and modulus k by the descending AGM."""
    _check_modulus(k)
    u = np.asarray(u, dtype=float)
    if k == 0:
        return np.sin(u), np.cos(u), np.ones_like(u)
    a = [1.0]
    c = [k]
    b = math.sqrt(1 - k * k)
    while abs(c[-1]) > 4e-16 * a[-1] and len(a) < 60:
        an, bn, cn = (a[-1] + b) / 2, math.sqrt(a[-1] * b), (a[-1] - b) / 2
        a.append(an)
        c.append(cn)
        b = bn
    n = len(a) - 1
    phi = (2.0 ** n) * a[-1] * u
    for j in range(n, 0, -1):
        phi = (phi + np.arcsin(c[j] / a[j] * np.sin(phi))) / 2
    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = np.sqrt(1 - (k * sn) ** 2)
    return sn, cn, dn


def jacobi_elliptic_complex(z, k):
    """(sn, cn, dn) at complex argument z = x + i y via the addition theorem."""
    z = complex(z)
    kp = math.sqrt(1 - k * k)
    s, c, d = (float(v) for v in jacobi_elliptic(z.real, k))
    s1, c1, d1 = (float(v) for v in jacobi_elliptic(z.imag, kp))
    den = c1 * c1 + (k * s * s1) ** 2
    sn = (s * d1 + 1j * c * d * s1 * c1) / den
    cn = (c * c1 - 1j * s * d * s1 * d1) / den
    dn = (d * c1 * d1 - 1j * k * k * s * c * s1) / den
    return sn, cn, dn
