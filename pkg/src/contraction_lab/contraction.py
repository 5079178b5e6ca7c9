"""Registry of R -> infinity contractions and a runner that measures them.

Each case pairs a curved-space quantity (coordinates, an operator action,
a basis function, an expansion coefficient or a coefficient of a separated
ODE) with its flat-space limit. The runner samples points in the flat
target domain, maps them through the case's scaling rule at each radius,
records the largest discrepancy and fits a log-log slope.
"""

from dataclasses import dataclass, field
import cmath
import json
import math
from typing import Callable

import numpy as np

from . import bases as B
from . import geometry as geo
from . import lame as L
from . import liealg as lie
from .specfun import bessel_j, hankel1

DEFAULT_R = (50, 100, 200, 400, 800)
DEFAULT_SAMPLES = 25
DEFAULT_SEED = 0x5EED
PASS_ERROR = 1e-2
PASS_SLOPE = -0.8
MAX_RESAMPLE = 200


class ContractionError(ValueError):
    pass


@dataclass(frozen=True)
class ScalingRule:
    """How curved quantities are tied to flat ones as R grows.

    substitutions maps a curved quantity to the expression it is replaced by;
    one rule is shared by every case that contracts the same pair of systems."""
    name: str
    substitutions: tuple

    def as_dict(self):
        return dict(self.substitutions)


@dataclass(frozen=True)
class ContractionCase:
    id: str
    heading: str
    source: str
    target: str
    comparand: str
    scaling: ScalingRule
    sampler: Callable = field(repr=False)
    error: Callable = field(repr=False)
    params: dict = field(default_factory=dict, hash=False)
    prefactor: str = "1"
    phase: str = "1"
    description: str = ""
    valid: Callable = field(default=None, repr=False)


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    residual: float


@dataclass
class ConvergenceReport:
    id: str
    R: list
    max_err: list
    slope: float
    fit_residual: float
    passed: bool
    notes: dict = field(default_factory=dict)

    def to_dict(self):
        return {"id": self.id, "R": [float(r) for r in self.R],
                "max_err": [float(e) for e in self.max_err],
                "slope": _json_float(self.slope), "fit_residual": float(self.fit_residual),
                "pass": bool(self.passed)}

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _json_float(x):
    # JSON has no infinities; an exact match is reported as a very steep slope
    return -1e300 if x == -math.inf else float(x)


def fit_rate(errors, R_list):
    """Least-squares slope of log(error) against log(R).

    A zero error anywhere short-circuits to slope -inf (exact agreement)."""
    e = np.asarray(errors, dtype=float)
    r = np.asarray(R_list, dtype=float)
    if e.shape != r.shape or e.ndim != 1:
        raise ValueError("errors and R_list must be 1-d of equal length")
    if len(e) < 2:
        raise ValueError("need at least two points for a slope")
    if not np.all(np.isfinite(e)):
        raise ValueError("errors must be finite")
    if np.any(e < 0):
        raise ValueError("errors must be non-negative")
    if np.any(e == 0):
        return FitResult(-math.inf, -math.inf, 0.0)
    X = np.stack([np.log(r), np.ones_like(r)], -1)
    y = np.log(e)
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    res = float(np.sqrt(np.mean((X @ coef - y) ** 2)))
    return FitResult(float(coef[0]), float(coef[1]), res)


# ---------------------------------------------------------------------------
# scaling rules, one per contracted pair of systems

def _rule(name, **subs):
    return ScalingRule(name, tuple(sorted(subs.items())))


RULES = {
    "S2.spherical>E2.polar": _rule(
        "S2.spherical>E2.polar", theta="r/R", phi="phi", l="round(kR)"),
    "S2.spherical_prime>E2.cartesian": _rule(
        "S2.spherical_prime>E2.cartesian", cos_theta_prime="x/R", cos_phi_prime="y/R",
        l="round(kR)", m="round(k2 R)"),
    "S2.interbasis": _rule(
        "S2.interbasis", l="round(kR)", m1="round(k1 R)", theta="r/R",
        cos_phi="k1/k"),
    "S2.elliptic>E2.elliptic": _rule(
        "S2.elliptic>E2.elliptic", a3="a1 + R^2 (a2 - a1)/D^2",
        rho1="a1 + (a2 - a1) cos^2 eta", rho2="a1 + (a2 - a1) cosh^2 xi",
        l="kR", lam="mu a3"),
    "S2.elliptic>E2.cartesian": _rule(
        "S2.elliptic>E2.cartesian", a="(0, a, 2a) after swapping u2 and u3",
        rho1="a x^2/R^2", rho2="2a - a y^2/R^2", l="kR",
        mu_1="2 R^2 k1^2", mu_2="-2 R^2 k2^2"),
    "S2.elliptic>E2.parabolic": _rule(
        "S2.elliptic>E2.parabolic", sn_alpha="-1 + u^2/(2R)", sqrt2_dn_beta="1 + v^2/(2R)",
        rho1="a2 - a u^2/R", rho2="a2 + a v^2/R", l="kR", lam="a2 l(l+1) + mu R a"),
    "H2.pseudo_spherical>E2.polar": _rule(
        "H2.pseudo_spherical>E2.polar", tau="r/R", phi="phi", rho="kR"),
    "H2.equidistant>E2.cartesian": _rule(
        "H2.equidistant>E2.cartesian", sinh_tau1="y/R", sinh_tau2="x/R", rho="kR",
        lam="k1 R"),
    "H2.horocyclic>E2.cartesian": _rule(
        "H2.horocyclic>E2.cartesian", x_tilde="y/R", y_tilde="1 + x/R"),
    "H2.elliptic>E2.elliptic": _rule(
        "H2.elliptic>E2.elliptic", a3="a2 - R^2 (a1 - a2)/D^2",
        rho1="a1 + (a1 - a2) sinh^2 xi", rho2="a2 + (a1 - a2) cos^2 eta"),
    "H2.elliptic>E2.cartesian": _rule(
        "H2.elliptic>E2.cartesian", a="(a, 0, -a)", xi1="1 + 2 y^2/R^2", xi2="x^2/R^2"),
    "H2.elliptic>E2.parabolic": _rule(
        "H2.elliptic>E2.parabolic", minus_i_cn_alpha="1 - u^2/(sqrt2 R)",
        cn_beta="1 + v^2/(sqrt2 R)", boost="sinh f = 1"),
    "H2.equidistant>E11.pseudo_polar": _rule(
        "H2.equidistant>E11.pseudo_polar", coth_tau1="tanh(r/R)", tau2="tau2",
        rho="kR", lam="lam"),
    "H2.pseudo_spherical>E11.cartesian": _rule(
        "H2.pseudo_spherical>E11.cartesian", coth_tau="t/R", cot_phi="x/R",
        rho="kR", m="round(k1 R)"),
    "S2>E2": _rule("S2>E2", L1="R pi2", L2="-R pi1", L3="L"),
    "H2>E2": _rule("H2>E2", K1="-R pi2", K2="-R pi1", L3="L"),
    "H2>E11": _rule("H2>E11", K1="-R pi1", K2="-K", L3="R pi2"),
}


# ---------------------------------------------------------------------------
# samplers in flat target domains

def _box_sampler(lo1, hi1, lo2, hi2):
    def sample(rng, n, params):
        return np.stack([rng.uniform(lo1, hi1, n), rng.uniform(lo2, hi2, n)], -1)
    return sample


# ---------------------------------------------------------------------------
# shared test functions for operator comparisons

def _test_fn(x):
    x = np.asarray(x)
    return np.exp(0.3 * x[:, 0] - 0.25 * x[:, 1]) * np.cos(0.7 * x[:, 0] + 0.4 * x[:, 1])


def _operator_error(family, matrix_R, matrix_flat, pts, R, h=1e-3):
    """|Q_R f - Q_flat f| with Q_R over a contracted family, Q_flat over its limit."""
    fam = lie.contracted_family(family, R)
    flat = lie.flat_limit(family)
    a = lie.qop_apply(fam, np.asarray(matrix_R, dtype=float), _test_fn, pts, h)
    b = lie.qop_apply(flat, np.asarray(matrix_flat, dtype=float), _test_fn, pts, h)
    return np.abs(a - b)


def _sym(entries):
    A = np.zeros((3, 3))
    for (i, k), c in entries.items():
        A[i, k] = c
        A[k, i] = c
    return A


# ---------------------------------------------------------------------------
# operator and Laplacian cases

def _lap_error(space_kind, family, target):
    def err(pts, R, params):
        space = geo.S2(R) if space_kind == "S2" else geo.H2(R)
        flat = geo.E2() if target == "E2" else geo.E11()
        h = 1e-3
        lap = geo.laplace_beltrami_apply(space, _test_fn, pts, h=h, target=target)
        lap0 = geo.laplace_beltrami_apply(flat, _test_fn, pts, h=h)
        out = np.abs(lap - lap0)
        for i in range(3):
            out = np.maximum(out, lie.contracted_generator_residual(family, i, _test_fn, pts, R, h))
        notes = {}
        if target == "E11":
            k0, k1 = params["k0"], params["k1"]
            wave = lambda y: np.cos(k0 * y[:, 0] - k1 * y[:, 1])
            kg = geo.laplace_beltrami_apply(space, wave, pts, h=h, target=target)
            kg_err = np.abs(kg + (k0 * k0 - k1 * k1) * wave(pts))
            notes["klein_gordon_max"] = float(np.max(kg_err))
            out = np.maximum(out, kg_err)
        return out, notes
    return err


# ---------------------------------------------------------------------------
# coordinate cases

def _project(space, a, target="E2"):
    return geo.beltrami_project(space, np.atleast_2d(a), target)


def _coord_err_s2_spherical(pts, R, params):
    r, ph = pts[:, 0], pts[:, 1]
    space = geo.S2(R)
    a = geo.to_ambient(space, geo.make_chart("S2", "spherical"), np.stack([r / R, ph], -1))
    x = _project(space, a)
    e = np.hypot(x[:, 0] - r * np.cos(ph), x[:, 1] - r * np.sin(ph))
    xy = np.stack([r * np.cos(ph), r * np.sin(ph)], -1)
    op = _operator_error("S2->E2", _sym({(2, 2): 1}), _sym({(2, 2): 1}), xy, R)
    return np.maximum(e, op), {}


def _coord_err_s2_spherical_prime(pts, R, params):
    space = geo.S2(R)
    q = np.stack([np.arccos(pts[:, 0] / R), np.arccos(pts[:, 1] / R)], -1)
    a = geo.to_ambient(space, geo.make_chart("S2", "spherical_prime"), q)
    e = np.max(np.abs(_project(space, a) - pts), axis=-1)
    op = _operator_error("S2->E2", _sym({(1, 1): 1}), _sym({(1, 1): 1}), pts, R)
    return np.maximum(e, op), {}


def _ellipse(D, xi, eta):
    return np.stack([D * np.cosh(xi) * np.cos(eta), D * np.sinh(xi) * np.sin(eta)], -1)


def _sign(v):
    return np.where(v >= 0, 1.0, -1.0)


def _coord_err_s2_elliptic(pts, R, params):
    a1, a2, D = params["a1"], params["a2"], params["D"]
    a3 = a1 + R * R * (a2 - a1) / D ** 2
    xi, eta = pts[:, 0], pts[:, 1]
    rho1 = a1 + (a2 - a1) * np.cos(eta) ** 2
    rho2 = a1 + (a2 - a1) * np.cosh(xi) ** 2
    space = geo.S2(R)
    chart = geo.make_chart("S2", "elliptic_algebraic", a=(a1, a2, a3))
    signs = np.stack([_sign(np.cos(eta)), _sign(np.sin(eta)), np.ones_like(xi)], -1)
    a = geo.to_ambient(space, chart, np.stack([rho1, rho2], -1), signs=signs)
    flat = _ellipse(D, xi, eta)
    e = np.max(np.abs(_project(space, a) - flat), axis=-1)
    c = (a3 - a1) / (a3 - a2)
    op = _operator_error("S2->E2", _sym({(2, 2): 1, (1, 1): -c * D * D}),
                         _sym({(2, 2): 1, (1, 1): -D * D}), flat, R)
    return np.maximum(e, op), {}


def _coord_err_s2_elliptic_cartesian(pts, R, params):
    a = params["a"]
    x, y = pts[:, 0], pts[:, 1]
    space = geo.S2(R)
    chart = geo.make_chart("S2", "elliptic_algebraic", a=(0.0, a, 2 * a))
    rho1 = a * x * x / R ** 2
    rho2 = 2 * a - a * y * y / R ** 2
    # the sorted chart pairs u2 with the middle parameter: swap u2 and u3
    signs = np.stack([_sign(x), np.ones_like(x), _sign(y)], -1)
    u = geo.to_ambient(space, chart, np.stack([rho1, rho2], -1), signs=signs)
    u = u[:, [0, 2, 1]]
    e = np.max(np.abs(_project(space, u) - pts), axis=-1)
    op = _operator_error("S2->E2", _sym({(0, 0): 1, (1, 1): -1}), _sym({(0, 0): 1, (1, 1): -1}), pts, R)
    return np.maximum(e, op), {}


def _coord_err_s2_parabolic(pts, R, params):
    u, v = pts[:, 0], pts[:, 1]
    sa = -1 + u * u / (2 * R)
    ca = _sign(u) * np.sqrt(1 - sa * sa)
    da = np.sqrt(1 - sa * sa / 2)
    db = (1 + v * v / (2 * R)) / math.sqrt(2)
    sb = np.sqrt(2 * (1 - db * db))
    cb = _sign(v) * np.sqrt(1 - sb * sb)
    r2 = math.sqrt(2)
    amb = np.stack([R / r2 * (sa * db + da * sb), R * ca * cb, R / r2 * (da * sb - sa * db)], -1)
    space = geo.S2(R)
    res = float(np.max(geo.constraint_residual(space, amb)))
    flat = np.stack([(u * u - v * v) / 2, u * v], -1)
    e = np.max(np.abs(_project(space, amb) - flat), axis=-1)
    op = _operator_error("S2->E2", _sym({(1, 2): 1}), _sym({(1, 2): 1}), flat, R)
    return np.maximum(e, op), {"constraint_residual": res}


def _coord_err_h2_pseudo(pts, R, params):
    r, ph = pts[:, 0], pts[:, 1]
    space = geo.H2(R)
    a = geo.to_ambient(space, geo.make_chart("H2", "pseudo_spherical"), np.stack([r / R, ph], -1))
    flat = np.stack([r * np.cos(ph), r * np.sin(ph)], -1)
    e = np.max(np.abs(_project(space, a) - flat), axis=-1)
    op = _operator_error("H2->E2", _sym({(2, 2): 1}), _sym({(2, 2): 1}), flat, R)
    return np.maximum(e, op), {}


def _coord_err_h2_equidistant(pts, R, params):
    x, y = pts[:, 0], pts[:, 1]
    space = geo.H2(R)
    q = np.stack([np.arcsinh(y / R), np.arcsinh(x / R)], -1)
    a = geo.to_ambient(space, geo.make_chart("H2", "equidistant"), q)
    e = np.max(np.abs(_project(space, a) - pts), axis=-1)
    op = _operator_error("H2->E2", _sym({(0, 0): 1}), _sym({(0, 0): 1}), pts, R)
    return np.maximum(e, op), {}


def _coord_err_h2_horocyclic(pts, R, params):
    x, y = pts[:, 0], pts[:, 1]
    space = geo.H2(R)
    q = np.stack([y / R, 1 + x / R], -1)
    a = geo.to_ambient(space, geo.make_chart("H2", "horocyclic"), q)
    e = np.max(np.abs(_project(space, a) - pts), axis=-1)
    QR = _sym({(1, 1): 1, (2, 2): 1 / R ** 2, (1, 2): -1 / R})
    op = _operator_error("H2->E2", QR, _sym({(1, 1): 1}), pts, R)
    return np.maximum(e, op), {}


def _coord_err_h2_elliptic(pts, R, params):
    a1, a2, D = params["a1"], params["a2"], params["D"]
    a3 = a2 - R * R * (a1 - a2) / D ** 2
    xi, eta = pts[:, 0], pts[:, 1]
    rho1 = a1 + (a1 - a2) * np.sinh(xi) ** 2
    rho2 = a2 + (a1 - a2) * np.cos(eta) ** 2
    space = geo.H2(R)
    chart = geo.make_chart("H2", "elliptic", a=(a1, a2, a3))
    signs = np.stack([np.ones_like(xi), _sign(np.cos(eta)), _sign(np.sin(eta))], -1)
    a = geo.to_ambient(space, chart, np.stack([rho1, rho2], -1), signs=signs)
    flat = _ellipse(D, xi, eta)
    e = np.max(np.abs(_project(space, a) - flat), axis=-1)
    op = _operator_error("H2->E2", _sym({(2, 2): 1, (0, 0): D * D}),
                         _sym({(2, 2): 1, (0, 0): D * D}), flat, R)
    return np.maximum(e, op), {}


def _coord_err_h2_elliptic_cartesian(pts, R, params):
    a = params["a"]
    x, y = pts[:, 0], pts[:, 1]
    xi1 = 1 + 2 * y * y / R ** 2
    xi2 = x * x / R ** 2
    space = geo.H2(R)
    chart = geo.make_chart("H2", "elliptic", a=(a, 0.0, -a))
    signs = np.stack([np.ones_like(x), _sign(x), _sign(y)], -1)
    amb = geo.to_ambient(space, chart, np.stack([a * xi1, a * xi2], -1), signs=signs)
    e = np.max(np.abs(_project(space, amb) - pts), axis=-1)
    op = _operator_error("H2->E2", _sym({(0, 0): 1, (2, 2): 1 / R ** 2}), _sym({(0, 0): 1}), pts, R)
    return np.maximum(e, op), {}


def _coord_err_h2_parabolic(pts, R, params):
    u, v = pts[:, 0], pts[:, 1]
    r2 = math.sqrt(2)
    # Jacobi functions with k = k' = 1/sqrt 2; cn alpha is imaginary, sn beta too
    ca = 1j * (1 - u * u / (r2 * R))
    cb = 1 + v * v / (r2 * R) + 0j
    sa = np.sqrt(1 - ca * ca)
    da = np.sqrt(1 - 0.5 * (1 - ca * ca))
    sb = -1j * _sign(u * v) * np.sqrt(cb * cb - 1)
    db = np.sqrt(1 - 0.5 * sb * sb)
    base = np.stack([R * sa * db, 1j * R * ca * cb, 1j * R * da * sb], -1)
    # boost with sinh f = 1, cosh f = sqrt 2
    amb = np.stack([r2 * base[:, 0] + base[:, 1], base[:, 0] + r2 * base[:, 1], base[:, 2]], -1)
    imag = float(np.max(np.abs(amb.imag)) / R)
    if imag > 1e-12:
        raise ContractionError("rotated elliptic point left a non-negligible imaginary part")
    amb = amb.real
    space = geo.H2(R)
    res = float(np.max(geo.constraint_residual(space, amb)))
    flat = np.stack([(u * u - v * v) / 2, u * v], -1)
    e = np.max(np.abs(_project(space, amb) - flat), axis=-1)
    QR = _sym({(2, 2): 3 / (r2 * R), (1, 2): 1})
    op = _operator_error("H2->E2", QR, _sym({(1, 2): 1}), flat, R)
    return np.maximum(e, op), {"imag_part": imag, "constraint_residual": res}


def _coord_err_h2_e11_equidistant(pts, R, params):
    r, t2 = pts[:, 0], pts[:, 1]
    coth1 = np.tanh(r / R)
    y0 = R * coth1 * np.cosh(t2)
    y1 = R * coth1 * np.sinh(t2)
    flat = np.stack([r * np.cosh(t2), r * np.sinh(t2)], -1)
    e = np.hypot(y0 - flat[:, 0], y1 - flat[:, 1])
    op = _operator_error("H2->E11", _sym({(2, 2): 1}), _sym({(2, 2): 1}), flat, R)
    return np.maximum(e, op), {}


def _coord_err_h2_e11_pseudo(pts, R, params):
    t, x = pts[:, 0], pts[:, 1]
    phi = np.pi / 2 - np.arctan(x / R)
    y0 = R * (t / R) / np.sin(phi)
    y1 = R / np.tan(phi)
    e = np.hypot(y0 - t, y1 - x)
    op = _operator_error("H2->E11", _sym({(1, 1): 1}), _sym({(1, 1): 1}), pts, R)
    return np.maximum(e, op), {}


# ---------------------------------------------------------------------------
# basis cases

def _quantum(kR):
    n = int(round(kR))
    return n, abs(kR - n)


def _basis_err_bessel(pts, R, params):
    k = params["k"]
    l, dr = _quantum(k * R)
    ke = l / R
    out = np.zeros(len(pts))
    for m in params["m_values"]:
        for i, (r, ph) in enumerate(pts):
            src = B.sph_harm(l, m, r / R, ph) / math.sqrt(R)
            sign = -1.0 if (m > 0 and m % 2) else 1.0
            tgt = sign * math.sqrt(ke) * bessel_j(abs(m), ke * r) * cmath.exp(1j * m * ph) / math.sqrt(2 * math.pi)
            out[i] = max(out[i], abs(src - tgt))
    return out, {"rounding": dr}


def _basis_err_sph_cartesian(pts, R, params):
    k, k2 = params["k"], params["k2"]
    l, dl = _quantum(k * R)
    m0, dm = _quantum(k2 * R)
    out = np.zeros(len(pts))
    for m in (m0, m0 + 1):
        ke, k2e = l / R, m / R
        k1e = math.sqrt(ke * ke - k2e * k2e)
        for i, (x, y) in enumerate(pts):
            Y = B.sph_harm(l, m, math.acos(x / R), math.acos(y / R), form="parity")
            src = 1j ** (-(l + m) % 4) * 1j ** (-m % 4) * Y
            part = math.cos(k1e * x) if (l + m) % 2 == 0 else -1j * math.sin(k1e * x)
            tgt = math.sqrt(ke / k1e) / math.pi * cmath.exp(-1j * k2e * y) * part
            out[i] = max(out[i], abs(src - tgt))
    return out, {"rounding": max(dl, dm)}


def _d_limit(l, m1, m2, R, k):
    """Scaled coefficient i^{-(l-m1)} sqrt(R) d^l_{m2 m1}(pi/2) and its limit."""
    ke, k1e = l / R, m1 / R
    k2e = math.sqrt(ke * ke - k1e * k1e)
    phi = math.acos(k1e / ke)
    src = 1j ** (-(l - m1) % 4) * math.sqrt(R) * B.wigner_d_halfpi(l, m2, m1)
    amp = math.sqrt(2 / (math.pi * k2e))
    tgt = amp * (math.cos(m2 * phi) if (l - m1) % 2 == 0 else 1j * math.sin(m2 * phi))
    return src, tgt


def _basis_err_interbasis(pts, R, params):
    k, M = params["k"], params["M"]
    l, dl = _quantum(k * R)
    out = np.zeros(len(pts))
    # part 1: the rotation coefficients themselves, over sampled k1
    for i, k1 in enumerate(pts[:, 2]):
        m1 = int(round(k1 * R))
        for m1b in (m1, m1 + 1):
            for m2 in range(params["m2_max"] + 1):
                src, tgt = _d_limit(l, m1b, m2, R, k)
                out[i] = max(out[i], abs(src - tgt))
    # part 2: summing the contracted expansion term by term gives two plane waves
    k1 = params["k1"]
    m1 = int(round(k1 * R))
    for m1b in (m1, m1 + 1):
        coef = {m2: _d_limit(l, m1b, m2, R, k)[0] for m2 in range(-M, M + 1)}
        ke = l / R
        k2e = math.sqrt(ke * ke - (m1b / R) ** 2)
        phi = math.acos(m1b / R / ke)
        even = (l - m1b) % 2 == 0
        for i, (r, th) in enumerate(pts[:, :2]):
            s = sum(coef[m2] * B.sph_harm(l, m2, r / R, th) / math.sqrt(R) for m2 in coef)
            psi = th + math.pi / 2
            Pp = B.plane_wave_partial(ke, r, psi + phi, M)
            Pm = B.plane_wave_partial(ke, r, psi - phi, M)
            tgt = math.sqrt(ke / k2e) / math.pi * 0.5 * ((Pm + Pp) if even else (Pp - Pm))
            out[i] = max(out[i], abs(s - tgt))
    return out, {"rounding": dl}


def _interbasis_sampler(rng, n, params):
    return np.stack([rng.uniform(0.05, 2.0, n), rng.uniform(0, 2 * math.pi, n),
                     rng.uniform(0.1, 0.9, n)], -1)


def _basis_err_lame_cartesian(pts, R, params):
    k, t_max = params["k"], params["t_max"]
    l = k * R
    out = np.zeros(len(pts))
    for which, kj, mu in ((1, params["k1"], 2 * R * R * params["k1"] ** 2),
                          (2, params["k2"], -2 * R * R * params["k2"] ** 2)):
        for alpha_j in (0, 1):
            alpha = [0, 0, 0]
            alpha[which - 1] = alpha_j
            C = L.solve_limit_recursion(which, l, tuple(alpha), mu, t_max)
            for i, x in enumerate(pts[:, 0]):
                z = (x / R) ** 2
                series = x ** alpha_j * sum(C[t] * z ** t for t in range(t_max + 1))
                tgt = L.cartesian_limit_function(alpha_j, kj, x)
                out[i] = max(out[i], abs(series - tgt))
    return out, {}


def _ode_err(c):
    return max(abs(c.constant - c.limit_constant), abs(c.amplitude - c.limit_amplitude),
               float(np.max(np.abs(c.p))))


def _basis_err_mathieu(pts, R, params):
    errs = []
    for var in ("eta", "xi"):
        c = L.mathieu_ode_coeffs(R, params["a1"], params["a2"], params["D"], params["k"], var,
                                 mu=params["mu"])
        errs.append(_ode_err(c))
    return np.full(len(pts), max(errs)), {"eta": errs[0], "xi": errs[1]}


def _basis_err_pcf(pts, R, params):
    errs = []
    for var in ("u", "v"):
        c = L.pcf_ode_limit(R, params["a"], params["k"], var, mu=params["mu"])
        errs.append(_ode_err(c))
    return np.full(len(pts), max(errs)), {"u": errs[0], "v": errs[1]}


def _basis_err_ps_polar(pts, R, params):
    k = params["k"]
    out = np.zeros(len(pts))
    for m in params["m_values"]:
        for i, (r, ph) in enumerate(pts):
            src = B.h2_pseudospherical(k * R, m, r / R, ph, R)
            tgt = math.sqrt(k) * bessel_j(abs(m), k * r) * cmath.exp(1j * m * ph) / math.sqrt(2 * math.pi)
            out[i] = max(out[i], abs(src - tgt))
    return out, {}


def _basis_err_ps_e11(pts, R, params):
    k, k1 = params["k"], params["k1"]
    rho = k * R
    m, dm = _quantum(k1 * R)
    k1e = m / R
    k0 = math.sqrt(k * k + k1e * k1e)
    log_scale = math.log(R) + B._loggamma(1j * rho).real
    out = np.zeros(len(pts))
    for i, (t, x) in enumerate(pts):
        src = B.h2_pseudospherical_continued(rho, m, math.atanh(t / R),
                                             math.pi / 2 - math.atan(x / R), R, log_scale)
        tgt = cmath.exp(1j * k0 * t - 1j * k1e * x) / math.sqrt(2 * math.pi * k0)
        out[i] = abs(src - tgt)
    return out, {"rounding": dm}


def _basis_err_eq_e2(pts, R, params):
    k, k1 = params["k"], params["k1"]
    rho, lam = k * R, k1 * R
    k2 = math.sqrt(k * k - k1 * k1)
    a, b = 0.5j * (rho - lam), 0.5j * (rho + lam)
    theta = rho * math.log(2) - B._loggamma(0.75 - a).imag - B._loggamma(0.75 - b).imag
    ph = cmath.exp(-1j * theta)
    out = np.zeros(len(pts))
    for i, (x, y) in enumerate(pts):
        src = ph * B.h2_equidistant(rho, lam, math.asinh(y / R), math.asinh(x / R), R)
        tgt = math.sqrt(k / (math.pi * k2)) * cmath.exp(1j * k1 * x - 1j * k2 * y)
        out[i] = abs(src - tgt)
    return out, {}


def _basis_err_eq_e11(pts, R, params):
    k, lam = params["k"], params["lam"]
    rho = k * R
    ph = cmath.exp(-1j * math.pi / 4 + 1j * B._loggamma(0.5 - 1j * rho).imag)
    out = np.zeros(len(pts))
    for i, (r, t2) in enumerate(pts):
        src = ph * B.h2_equidistant_continued(rho, lam, math.atanh(r / R), t2, R) / math.sqrt(R)
        tgt = (math.sqrt(k / 2) * hankel1(1j * lam, k * r) * cmath.exp(1j * lam * t2)
               * math.exp(-math.pi * lam / 2))
        out[i] = abs(src - tgt)
    return out, {}


# ---------------------------------------------------------------------------
# the registry

def _case(id, heading, source, target, comparand, rule, sampler, error, params=None, **kw):
    return ContractionCase(id, heading, source, target, comparand, RULES[rule], sampler, error,
                           dict(params or {}), **kw)


def registry():
    """Every contraction case, in a fixed order."""
    box = _box_sampler(-1.5, 1.5, -1.5, 1.5)
    polar = _box_sampler(0.05, 2.0, 0.0, 2 * math.pi)
    parab = _box_sampler(0.1, 1.5, -1.5, 1.5)
    ellip = _box_sampler(0.2, 1.2, 0.05, 2 * math.pi - 0.05)
    cases = [
        # algebra and Laplace-Beltrami operator
        _case("lap.S2→E2", "Contractions from o(3) to e(2)", "S2 Laplace-Beltrami, o(3) generators",
              "E2 Laplacian, e(2) generators", "operator action", "S2>E2", box,
              _lap_error("S2", "S2->E2", "E2")),
        _case("lap.H2→E2", "Contractions from o(2,1) to e(2)", "H2 Laplace-Beltrami, o(2,1) generators",
              "E2 Laplacian, e(2) generators", "operator action", "H2>E2", box,
              _lap_error("H2", "H2->E2", "E2")),
        _case("lap.H2→E11", "Contractions from o(2,1) to e(1,1)",
              "H2 Laplace-Beltrami on E11 Beltrami chart, o(2,1) generators",
              "E11 wave operator, e(1,1) generators; Klein-Gordon relation for plane waves",
              "operator action", "H2>E11", box, _lap_error("H2", "H2->E11", "E11"),
              {"k0": 1.1, "k1": 0.4}),
        # coordinate systems on S2
        _case("coords.S2.spherical→E2.polar", "Spherical coordinates on S2 to polar on E2",
              "S2 spherical", "E2 polar", "coordinates", "S2.spherical>E2.polar", polar,
              _coord_err_s2_spherical),
        _case("coords.S2.spherical_prime→E2.cartesian", "Spherical coordinates on S2 to Cartesian on E2",
              "S2 spherical_prime", "E2 cartesian", "coordinates", "S2.spherical_prime>E2.cartesian",
              box, _coord_err_s2_spherical_prime),
        _case("coords.S2.elliptic→E2.elliptic", "Elliptic coordinates on S2 to elliptic on E2",
              "S2 elliptic_algebraic", "E2 elliptic", "coordinates", "S2.elliptic>E2.elliptic",
              ellip, _coord_err_s2_elliptic, {"a1": 0.0, "a2": 1.0, "D": 1.3}),
        _case("coords.S2.elliptic→E2.cartesian", "Elliptic coordinates on S2 to Cartesian on E2",
              "S2 elliptic_algebraic", "E2 cartesian", "coordinates", "S2.elliptic>E2.cartesian",
              box, _coord_err_s2_elliptic_cartesian, {"a": 1.0}),
        _case("coords.S2.elliptic→E2.parabolic", "Elliptic coordinates on S2 to parabolic on E2",
              "S2 rotated elliptic (Jacobi form)", "E2 parabolic", "coordinates",
              "S2.elliptic>E2.parabolic", parab, _coord_err_s2_parabolic),
        # coordinate systems on H2, flat limit E2
        _case("coords.H2.pseudo_spherical→E2.polar", "Pseudo-spherical coordinates on H2 to polar on E2",
              "H2 pseudo_spherical", "E2 polar", "coordinates", "H2.pseudo_spherical>E2.polar", polar,
              _coord_err_h2_pseudo),
        _case("coords.H2.equidistant→E2.cartesian", "Equidistant coordinates on H2 to Cartesian on E2",
              "H2 equidistant", "E2 cartesian", "coordinates", "H2.equidistant>E2.cartesian", box,
              _coord_err_h2_equidistant),
        _case("coords.H2.horocyclic→E2.cartesian", "Horocyclic coordinates on H2 to Cartesian on E2",
              "H2 horocyclic", "E2 cartesian", "coordinates", "H2.horocyclic>E2.cartesian", box,
              _coord_err_h2_horocyclic),
        _case("coords.H2.elliptic→E2.elliptic", "Elliptic coordinates on H2 to elliptic on E2",
              "H2 elliptic", "E2 elliptic", "coordinates", "H2.elliptic>E2.elliptic", ellip,
              _coord_err_h2_elliptic, {"a1": 1.0, "a2": 0.0, "D": 1.3}),
        _case("coords.H2.elliptic→E2.cartesian", "Elliptic coordinates on H2 to Cartesian on E2",
              "H2 elliptic", "E2 cartesian", "coordinates", "H2.elliptic>E2.cartesian", box,
              _coord_err_h2_elliptic_cartesian, {"a": 1.0}),
        _case("coords.H2.elliptic→E2.parabolic", "Elliptic coordinates on H2 to parabolic on E2",
              "H2 rotated elliptic (complex Jacobi form)", "E2 parabolic", "coordinates",
              "H2.elliptic>E2.parabolic", parab, _coord_err_h2_parabolic),
        # coordinate systems on H2, flat limit E11
        _case("coords.H2.equidistant→E11.pseudo_polar",
              "Equidistant coordinates on H2 to pseudo-polar on E11",
              "H2 equidistant", "E11 pseudo_polar", "coordinates", "H2.equidistant>E11.pseudo_polar",
              _box_sampler(0.1, 2.5, -1.0, 1.0), _coord_err_h2_e11_equidistant),
        _case("coords.H2.pseudo_spherical→E11.cartesian",
              "Pseudo-spherical coordinates on H2 to Cartesian on E11",
              "H2 pseudo_spherical", "E11 cartesian", "coordinates",
              "H2.pseudo_spherical>E11.cartesian", box, _coord_err_h2_e11_pseudo),
        # bases on S2
        _case("S2.spherical→E2.polar", "Spherical basis on S2 to polar basis on E2",
              "Y_lm(theta, phi)", "J_|m|(kr) e^{i m phi}", "basis value", "S2.spherical>E2.polar",
              _box_sampler(0.05, 2.0, 0.0, 2 * math.pi), _basis_err_bessel,
              {"k": 1.0, "m_values": (0, 1, 2)}, prefactor="1/sqrt(R)",
              phase="(-1)^((m+|m|)/2) on the target"),
        _case("S2.spherical_prime→E2.cartesian", "Spherical basis on S2 to Cartesian basis on E2",
              "Y_lm(theta', phi') in the parity form", "cos/sin(k1 x) e^{-i k2 y}", "basis value",
              "S2.spherical_prime>E2.cartesian", box, _basis_err_sph_cartesian,
              {"k": 1.0, "k2": 0.6}, phase="i^{-(l+m)} i^{-m}"),
        _case("S2.interbasis→E2.plane_wave", "Contraction of interbasis expansions",
              "d^l_{m2 m1}(pi/2) and the spherical-to-rotated expansion",
              "cos/sin(m2 phi) and the cylindrical expansion of two plane waves",
              "expansion coefficient", "S2.interbasis", _interbasis_sampler, _basis_err_interbasis,
              {"k": 1.0, "k1": 0.6, "M": 6, "m2_max": 5}, prefactor="sqrt(R)",
              phase="i^{-(l-m1)}"),
        _case("S2.elliptic→E2.cartesian", "Elliptic basis on S2 to Cartesian basis on E2",
              "Lame polynomial coefficient series", "cos(k_j x), sin(k_j x)/k_j", "basis value",
              "S2.elliptic>E2.cartesian", _box_sampler(0.05, 2.0, 0.0, 1.0),
              _basis_err_lame_cartesian, {"k": 1.0, "k1": 0.6, "k2": 0.8, "t_max": 40}),
        _case("S2.elliptic→E2.elliptic", "Elliptic basis on S2 to elliptic basis on E2",
              "separated Lame equation in eta and xi", "Mathieu and modified Mathieu equations",
              "ODE coefficient", "S2.elliptic>E2.elliptic", box, _basis_err_mathieu,
              {"a1": 0.0, "a2": 1.0, "D": 2.0, "k": 1.0, "mu": 1.0}),
        _case("S2.elliptic→E2.parabolic", "Elliptic basis on S2 to parabolic basis on E2",
              "separated Lame equation near the middle parameter", "parabolic cylinder equations",
              "ODE coefficient", "S2.elliptic>E2.parabolic", box, _basis_err_pcf,
              {"a": 1.0, "k": 1.0, "mu": 1.0}),
        # bases on H2
        _case("H2.pseudo_spherical→E2.polar", "Pseudo-spherical basis on H2 to polar basis on E2",
              "Psi_rho,m(tau, phi)", "sqrt(k) J_|m|(kr) e^{i m phi}/sqrt(2 pi)", "basis value",
              "H2.pseudo_spherical>E2.polar", _box_sampler(0.05, 2.0, 0.0, 2 * math.pi),
              _basis_err_ps_polar, {"k": 1.0, "m_values": (0, 1, 2, -3)}),
        _case("H2.pseudo_spherical→E11.cartesian",
              "Pseudo-spherical basis on H2 to Cartesian basis on E11",
              "Psi_rho,m continued to tau = i pi/2 + s", "e^{i k0 t - i k1 x}/sqrt(2 pi k0)",
              "basis value", "H2.pseudo_spherical>E11.cartesian", _box_sampler(0.1, 2.0, -2.0, 2.0),
              _basis_err_ps_e11, {"k": 1.0, "k1": 0.6}, prefactor="R |Gamma(i rho)|"),
        _case("H2.equidistant→E2.cartesian", "Equidistant basis on H2 to Cartesian basis on E2",
              "Psi_rho,lam(tau1, tau2)", "sqrt(k/(pi k2)) e^{i k1 x - i k2 y}", "basis value",
              "H2.equidistant>E2.cartesian", box, _basis_err_eq_e2, {"k": 1.0, "k1": 0.6},
              phase="exp(-i(rho ln 2 - arg Gamma(3/4 - a) - arg Gamma(3/4 - b)))"),
        _case("H2.equidistant→E11.pseudo_polar", "Equidistant basis on H2 to polar basis on E11",
              "Psi_rho,lam continued to tau1 = i pi/2 + s",
              "sqrt(k/2) H^(1)_{i lam}(kr) e^{i lam tau2} e^{-pi lam/2}", "basis value",
              "H2.equidistant>E11.pseudo_polar", _box_sampler(0.3, 2.5, -1.0, 1.0),
              _basis_err_eq_e11, {"k": 1.0, "lam": 0.7}, prefactor="1/sqrt(R)",
              phase="e^{-i pi/4} e^{i arg Gamma(1/2 - i rho)}"),
    ]
    return cases


def case_ids():
    return [c.id for c in registry()]


def get_case(case_id):
    for c in registry():
        if c.id == case_id:
            return c
    raise KeyError(case_id)


def run_case(case_id, R_list=DEFAULT_R, n_samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, params=None):
    """Sweep R for one case and fit the convergence rate."""
    case = case_id if isinstance(case_id, ContractionCase) else get_case(case_id)
    R_list = [float(r) for r in R_list]
    if len(R_list) < 3:
        raise ContractionError("need at least three radii for a rate fit")
    if any(b <= a for a, b in zip(R_list, R_list[1:])):
        raise ContractionError("radii must be strictly increasing")
    if n_samples < 1:
        raise ContractionError("need at least one sample")
    p = dict(case.params)
    if params:
        p.update(params)
    rng = np.random.default_rng(seed)
    pts = np.asarray(case.sampler(rng, n_samples, p), dtype=float)
    resampled = 0
    if case.valid is not None:
        for i in range(len(pts)):
            tries = 0
            while not all(case.valid(pts[i], R, p) for R in R_list):
                if tries >= MAX_RESAMPLE:
                    raise ContractionError("could not draw a point inside the chart coverage")
                pts[i] = case.sampler(rng, 1, p)[0]
                tries += 1
                resampled += 1
    errs, notes = [], {"resampled": resampled, "per_R": []}
    for R in R_list:
        e, extra = case.error(pts, R, p)
        e = np.asarray(e, dtype=float)
        if not np.all(np.isfinite(e)):
            raise ContractionError("non-finite error in case %s at R=%g" % (case.id, R))
        errs.append(float(np.max(e)))
        notes["per_R"].append(dict(extra, R=R))
    fit = fit_rate(errs, R_list)
    passed = errs[-1] < PASS_ERROR and fit.slope <= PASS_SLOPE
    return ConvergenceReport(case.id, R_list, errs, fit.slope, fit.residual, bool(passed), notes)


def run_all(R_list=DEFAULT_R, n_samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED):
    """Reports for every case, ordered by case id."""
    return [run_case(c, R_list, n_samples, seed) for c in sorted(registry(), key=lambda c: c.id)]
