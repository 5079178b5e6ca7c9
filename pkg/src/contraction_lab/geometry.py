"""Constant-curvature spaces, separable charts, Beltrami projections and a
finite-difference Laplace-Beltrami operator.

Points are numpy arrays. Ambient coordinates are (u1, u2, u3) on S2,
(u0, u1, u2) on H2, (x, y) on E2 and (t, x) on E11. Chart maps accept a
single point of shape (2,) or a batch of shape (n, 2).
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.special import ellipkinc

from .specfun import elliptic_K, jacobi_elliptic, jacobi_elliptic_complex

KINDS = ("S2", "H2", "E2", "E11")
SIGNATURE = {"S2": (1, 1, 1), "H2": (1, -1, -1), "E2": (1, 1), "E11": (1, -1)}
CONSTRAINT_TOL = 1e-12


class GeometryError(ValueError):
    """Base class for geometric domain problems."""


class DomainError(GeometryError):
    """Local coordinates outside the chart domain, or bad chart parameters."""


class CoverageError(GeometryError):
    """Ambient point that the chart does not cover."""


class ConstraintError(GeometryError):
    """Ambient point off the sphere or hyperboloid."""


class SingularityError(GeometryError):
    """Point at a projection singularity."""


@dataclass(frozen=True)
class Space:
    kind: str
    radius: float = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("unknown space kind %r" % (self.kind,))
        if self.curved:
            if self.radius is None or not self.radius > 0:
                raise ValueError("%s needs a positive radius" % self.kind)
        elif self.radius is not None:
            raise ValueError("%s is flat and takes no radius" % self.kind)

    @property
    def curved(self):
        return self.kind in ("S2", "H2")

    @property
    def signature(self):
        return SIGNATURE[self.kind]

    @property
    def ambient_dim(self):
        return len(self.signature)


def S2(R=1.0):
    return Space("S2", float(R))


def H2(R=1.0):
    return Space("H2", float(R))


def E2():
    return Space("E2")


def E11():
    return Space("E11")


def constraint_residual(space, a):
    """|quadratic form - R^2| on curved spaces, 0 on flat ones."""
    a = np.asarray(a, dtype=float)
    if not space.curved:
        return np.zeros(a.shape[:-1]) if a.ndim > 1 else 0.0
    q = np.tensordot(a * a, np.asarray(space.signature, dtype=float), axes=([-1], [0]))
    return np.abs(q - space.radius ** 2)


# ---------------------------------------------------------------------------
# charts

@dataclass(frozen=True)
class Chart:
    space: str
    name: str
    params: tuple = ()

    def __getitem__(self, key):
        return dict(self.params)[key]

    @property
    def id(self):
        return self.name

    @property
    def spec(self):
        return _CHARTS[(self.space, self.name)]

    @property
    def domain(self):
        return self.spec.domain(self)


@dataclass(frozen=True)
class ChartPoint:
    chart: str
    coords: tuple
    signs: tuple = ()


@dataclass
class _ChartSpec:
    forward: callable
    inverse: callable
    domain: callable            # chart -> ((lo, hi, lo_closed, hi_closed), ...)
    sample: callable            # (chart, rng, n) -> (n, 2) interior points
    params: tuple = ()
    check: callable = None      # chart -> None, raising DomainError
    signed: bool = False        # forward map needs an octant-sign triple
    sample_signs: callable = None
    complex_form: bool = False
    polish: bool = True


_CHARTS = {}
INF = math.inf


def _register(space, name, **kw):
    _CHARTS[(space, name)] = _ChartSpec(**kw)


def chart_ids(space_kind=None):
    return sorted(n for (s, n) in _CHARTS if space_kind in (None, s))


def make_chart(space_kind, name, **params):
    key = (space_kind, name)
    if key not in _CHARTS:
        raise DomainError("unknown chart %s on %s; valid: %s"
                          % (name, space_kind, ", ".join(chart_ids(space_kind))))
    spec = _CHARTS[key]
    missing = [p for p in spec.params if p not in params]
    extra = [p for p in params if p not in spec.params]
    if missing or extra:
        raise DomainError("chart %s needs parameters %s" % (name, spec.params))
    chart = Chart(space_kind, name, tuple(sorted((k, params[k]) for k in spec.params)))
    if spec.check is not None:
        spec.check(chart)
    return chart


def _box(*intervals):
    return lambda chart: intervals


def _in_domain(chart, q):
    for j, (lo, hi, lc, hc) in enumerate(chart.domain):
        v = q[..., j]
        ok_lo = v >= lo if lc else v > lo
        ok_hi = v <= hi if hc else v < hi
        if not np.all(ok_lo & ok_hi):
            raise DomainError("coordinate %d of chart %s outside %s"
                              % (j, chart.name, (lo, hi)))


def _uniform(rng, n, lo, hi):
    return rng.uniform(lo, hi, size=n)


# E2 ------------------------------------------------------------------------

def _e2_cart_f(c, q, s=None):
    return q.copy()


_register("E2", "cartesian",
          forward=_e2_cart_f, inverse=lambda c, a: a.copy(),
          domain=_box((-INF, INF, False, False), (-INF, INF, False, False)),
          sample=lambda c, rng, n: rng.uniform(-3, 3, size=(n, 2)), polish=False)


def _polar_f(c, q, s=None):
    r, phi = q[..., 0], q[..., 1]
    return np.stack([r * np.cos(phi), r * np.sin(phi)], axis=-1)


def _polar_i(c, a):
    x, y = a[..., 0], a[..., 1]
    return np.stack([np.hypot(x, y), np.mod(np.arctan2(y, x), 2 * np.pi)], axis=-1)


_register("E2", "polar", forward=_polar_f, inverse=_polar_i,
          domain=_box((0, INF, True, False), (0, 2 * math.pi, True, False)),
          sample=lambda c, rng, n: np.stack([_uniform(rng, n, 0.1, 3), _uniform(rng, n, 0.05, 6.2)], -1))


def _e2_parab_f(c, q, s=None):
    u, v = q[..., 0], q[..., 1]
    return np.stack([(u * u - v * v) / 2, u * v], axis=-1)


def _e2_parab_i(c, a):
    x, y = a[..., 0], a[..., 1]
    r = np.hypot(x, y)
    u = np.sqrt(np.maximum(r + x, 0))
    v = np.where(y >= 0, 1.0, -1.0) * np.sqrt(np.maximum(r - x, 0))
    return np.stack([u, v], axis=-1)


_register("E2", "parabolic", forward=_e2_parab_f, inverse=_e2_parab_i,
          domain=_box((0, INF, True, False), (-INF, INF, False, False)),
          sample=lambda c, rng, n: np.stack([_uniform(rng, n, 0.1, 2), _uniform(rng, n, -2, 2)], -1))


def _positive(name):
    def check(chart):
        if not chart[name] > 0:
            raise DomainError("parameter %s must be positive" % name)
    return check


def _e2_ell_f(c, q, s=None):
    D = c["D"]
    xi, eta = q[..., 0], q[..., 1]
    return np.stack([D * np.cosh(xi) * np.cos(eta), D * np.sinh(xi) * np.sin(eta)], axis=-1)


def _e2_ell_i(c, a):
    w = np.arccosh((a[..., 0] + 1j * a[..., 1]) / c["D"])
    xi, eta = w.real, w.imag
    flip = xi < 0
    xi = np.where(flip, -xi, xi)
    eta = np.where(flip, -eta, eta)
    return np.stack([xi, np.mod(eta, 2 * np.pi)], axis=-1)


_register("E2", "elliptic", forward=_e2_ell_f, inverse=_e2_ell_i, params=("D",),
          check=_positive("D"),
          domain=_box((0, INF, True, False), (0, 2 * math.pi, True, False)),
          sample=lambda c, rng, n: np.stack([_uniform(rng, n, 0.1, 2), _uniform(rng, n, 0.05, 6.2)], -1))


# E11 -----------------------------------------------------------------------

_register("E11", "cartesian",
          forward=_e2_cart_f, inverse=lambda c, a: a.copy(),
          domain=_box((-INF, INF, False, False), (-INF, INF, False, False)),
          sample=lambda c, rng, n: rng.uniform(-3, 3, size=(n, 2)), polish=False)


def _pp_f(c, q, s=None):
    r, tau = q[..., 0], q[..., 1]
    return np.stack([r * np.cosh(tau), r * np.sinh(tau)], axis=-1)


def _pp_i(c, a):
    t, x = a[..., 0], a[..., 1]
    if np.any(t <= np.abs(x)):
        raise CoverageError("pseudo-polar coordinates need t > |x| (t^2 - x^2 > 0, t > 0)")
    return np.stack([np.sqrt((t - x) * (t + x)), np.arctanh(x / t)], axis=-1)


_register("E11", "pseudo_polar", forward=_pp_f, inverse=_pp_i,
          domain=_box((0, INF, True, False), (-INF, INF, False, False)),
          sample=lambda c, rng, n: np.stack([_uniform(rng, n, 0.1, 3), _uniform(rng, n, -2, 2)], -1))


def _lightcone(a):
    t, x = a[..., 0], a[..., 1]
    return t + x, t - x


def _sample_sym(rng, n):
    # canonical branch v >= |u| (the printed domain is covered 4 times)
    p = _uniform(rng, n, 0.2, 2.0)
    q = _uniform(rng, n, 0.2, 2.0)
    return np.stack([(p - q) / 2, (p + q) / 2], -1)


def _par1_f(c, q, s=None):
    u, v = q[..., 0], q[..., 1]
    return np.stack([(u * u + v * v) / 2, u * v], axis=-1)


def _par1_i(c, a):
    sp_, sm = _lightcone(a)
    if np.any(sp_ < 0) or np.any(sm < 0):
        raise CoverageError("parabolic type I covers t >= |x| only")
    p, q = np.sqrt(2 * sp_), np.sqrt(2 * sm)
    return np.stack([(p - q) / 2, (p + q) / 2], axis=-1)


_register("E11", "parabolic_1", forward=_par1_f, inverse=_par1_i,
          domain=_box((-INF, INF, False, False), (0, INF, True, False)),
          sample=lambda c, rng, n: _sample_sym(rng, n))


def _par2_f(c, q, s=None):
    return _par1_f(c, q)[..., ::-1]


def _par2_i(c, a):
    try:
        return _par1_i(c, a[..., ::-1])
    except CoverageError:
        raise CoverageError("parabolic type II covers x >= |t| only")


_register("E11", "parabolic_2", forward=_par2_f, inverse=_par2_i,
          domain=_box((-INF, INF, False, False), (0, INF, True, False)),
          sample=lambda c, rng, n: _sample_sym(rng, n))


def _par3_f(c, q, s=None):
    eta, zeta = q[..., 0], q[..., 1]
    d, s_ = eta - zeta, eta + zeta
    return np.stack([d * d / 2 - s_, d * d / 2 + s_], axis=-1)


def _par3_i(c, a):
    t, x = a[..., 0], a[..., 1]
    if np.any(x + t < 0):
        raise CoverageError("parabolic type III covers x + t >= 0 only")
    s_ = (x - t) / 2
    d = np.sqrt(x + t)
    return np.stack([(s_ + d) / 2, (s_ - d) / 2], axis=-1)


def _sample_lc(rng, n, dlo, dhi, slo, shi):
    d = _uniform(rng, n, dlo, dhi)
    s_ = _uniform(rng, n, slo, shi)
    return np.stack([(s_ + d) / 2, (s_ - d) / 2], -1)


_register("E11", "parabolic_3", forward=_par3_f, inverse=_par3_i,
          domain=_box((-INF, INF, False, False), (-INF, INF, False, False)),
          sample=lambda c, rng, n: _sample_lc(rng, n, 0.1, 2, -2, 2))


def _hyp1_f(c, q, s=None):
    l = c["l"]
    eta, zeta = q[..., 0], q[..., 1]
    ch = np.cosh((eta - zeta) / 2)
    sh = np.sinh((eta + zeta) / 2)
    return np.stack([l / 2 * (ch + sh), l / 2 * (ch - sh)], axis=-1)


def _hyp1_i(c, a):
    l = c["l"]
    sp_, sm = _lightcone(a)
    if np.any(sp_ < l):
        raise CoverageError("hyperbolic type I covers t + x >= l only")
    d = 2 * np.arccosh(sp_ / l)
    s_ = 2 * np.arcsinh(sm / l)
    return np.stack([(s_ + d) / 2, (s_ - d) / 2], axis=-1)


_register("E11", "hyperbolic_1", forward=_hyp1_f, inverse=_hyp1_i, params=("l",),
          check=_positive("l"),
          domain=_box((-INF, INF, False, False), (-INF, INF, False, False)),
          sample=lambda c, rng, n: _sample_lc(rng, n, 0.2, 3, -3, 3))


def _hyp2_f(c, q, s=None):
    eta, zeta = q[..., 0], q[..., 1]
    a = np.sinh(eta - zeta)
    b = np.exp(eta + zeta)
    return np.stack([a + b, a - b], axis=-1)


def _hyp2_i(c, a):
    sp_, sm = _lightcone(a)
    if np.any(sm <= 0):
        raise CoverageError("hyperbolic type II covers t > x only")
    d = np.arcsinh(sp_ / 2)
    s_ = np.log(sm / 2)
    return np.stack([(s_ + d) / 2, (s_ - d) / 2], axis=-1)


_register("E11", "hyperbolic_2", forward=_hyp2_f, inverse=_hyp2_i,
          domain=_box((-INF, INF, False, False), (-INF, INF, False, False)),
          sample=lambda c, rng, n: _sample_lc(rng, n, -2, 2, -1.5, 1.5))


def _hyp3_f(c, q, s=None):
    eta, zeta = q[..., 0], q[..., 1]
    a = np.cosh(eta - zeta)
    b = np.exp(eta + zeta)
    return np.stack([a + b, a - b], axis=-1)


def _hyp3_i(c, a):
    sp_, sm = _lightcone(a)
    if np.any(sm <= 0) or np.any(sp_ < 2):
        raise CoverageError("hyperbolic type III covers t > x, t + x >= 2 only")
    d = np.arccosh(sp_ / 2)
    s_ = np.log(sm / 2)
    return np.stack([(s_ + d) / 2, (s_ - d) / 2], axis=-1)


_register("E11", "hyperbolic_3", forward=_hyp3_f, inverse=_hyp3_i,
          domain=_box((-INF, INF, False, False), (-INF, INF, False, False)),
          sample=lambda c, rng, n: _sample_lc(rng, n, 0.1, 2, -1.5, 1.5))


def _ell1_f(c, q, s=None):
    D = c["D"]
    eta, zeta = q[..., 0], q[..., 1]
    return np.stack([D * np.sinh(eta) * np.cosh(zeta), D * np.cosh(eta) * np.sinh(zeta)], axis=-1)


def _ell1_i(c, a):
    D = c["D"]
    sp_, sm = _lightcone(a)
    p = np.arcsinh(sp_ / D)
    m = np.arcsinh(sm / D)
    return np.stack([(p + m) / 2, (p - m) / 2], axis=-1)


_register("E11", "elliptic_1", forward=_ell1_f, inverse=_ell1_i, params=("D",),
          check=_positive("D"),
          domain=_box((-INF, INF, False, False), (-INF, INF, False, False)),
          sample=lambda c, rng, n: rng.uniform(-2, 2, size=(n, 2)))


def _ell2_check(chart):
    _positive("d")(chart)
    if chart["variant"] not in ("i", "ii"):
        raise DomainError("elliptic_2 variant must be 'i' or 'ii'")


def _ell2_domain(chart):
    if chart["variant"] == "i":
        return ((-INF, INF, False, False), (0, INF, True, False))
    return ((0, 2 * math.pi, False, False), (0, math.pi, True, False))


def _ell2_f(c, q, s=None):
    d = c["d"]
    eta, zeta = q[..., 0], q[..., 1]
    if c["variant"] == "i":
        return np.stack([d * np.cosh(eta) * np.cosh(zeta), d * np.sinh(eta) * np.sinh(zeta)], axis=-1)
    return np.stack([d * np.cos(eta) * np.cos(zeta), d * np.sin(eta) * np.sin(zeta)], axis=-1)


def _ell2_i(c, a):
    d = c["d"]
    sp_, sm = _lightcone(a)
    if c["variant"] == "i":
        if np.any(sp_ < d) or np.any(sm < d):
            raise CoverageError("elliptic type II(i) covers t - |x| >= d only")
        p = np.arccosh(sp_ / d)
        m = np.arccosh(sm / d)
        # canonical branch zeta >= |eta|
        return np.stack([(p - m) / 2, (p + m) / 2], axis=-1)
    if np.any(np.abs(sp_) > d) or np.any(np.abs(sm) > d):
        raise CoverageError("elliptic type II(ii) covers |t| + |x| <= d only")
    A = np.arccos(sp_ / d)                 # eta - zeta
    B = 2 * np.pi - np.arccos(sm / d)      # eta + zeta
    return np.stack([(B + A) / 2, (B - A) / 2], axis=-1)


def _ell2_sample(c, rng, n):
    if c["variant"] == "i":
        p = _uniform(rng, n, 0.1, 2)
        m = _uniform(rng, n, 0.1, 2)
        return np.stack([(p - m) / 2, (p + m) / 2], -1)
    A = _uniform(rng, n, 0.1, math.pi - 0.1)
    B = _uniform(rng, n, math.pi + 0.1, 2 * math.pi - 0.1)
    return np.stack([(B + A) / 2, (B - A) / 2], -1)


_register("E11", "elliptic_2", forward=_ell2_f, inverse=_ell2_i, params=("d", "variant"),
          check=_ell2_check, domain=_ell2_domain, sample=_ell2_sample)


# S2 ------------------------------------------------------------------------

def _sph_f(c, q, R):
    th, ph = q[..., 0], q[..., 1]
    return R * np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1)


def _sph_i(c, a, R):
    u1, u2, u3 = a[..., 0], a[..., 1], a[..., 2]
    th = np.arctan2(np.hypot(u1, u2), u3)
    ph = np.mod(np.arctan2(u2, u1), 2 * np.pi)
    return np.stack([th, ph], axis=-1)


# the primed systems permute the ambient axes: (u1, u2, u3) -> (u2, u3, u1)
_PERM = {"spherical": (0, 1, 2), "spherical_prime": (1, 2, 0), "spherical_dprime": (2, 0, 1)}


def _make_sph(name):
    perm = _PERM[name]

    def fwd(c, q, R, s=None):
        v = _sph_f(c, q, R)
        out = np.empty_like(v)
        out[..., list(perm)] = v
        return out

    def inv(c, a, R):
        return _sph_i(c, a[..., list(perm)], R)

    return fwd, inv


_sph_sample = lambda c, rng, n: np.stack([_uniform(rng, n, 0.1, math.pi - 0.1),
                                          _uniform(rng, n, 0.05, 2 * math.pi - 0.05)], -1)
for _name in _PERM:
    _f, _i = _make_sph(_name)
    _register("S2", _name, forward=_f, inverse=_i,
              domain=_box((0, math.pi, True, True), (0, 2 * math.pi, True, False)),
              sample=_sph_sample)


def _triple_check(order):
    def check(chart):
        a = chart["a"]
        if len(a) != 3 or len(set(a)) != 3:
            raise DomainError("a-triple must have three distinct entries")
        if not order(a):
            raise DomainError("a-triple ordering violated: %r" % (a,))
    return check


def _alg_roots(a, w, R):
    """Roots rho of sum_i w_i / (rho - a_i) = 0 times the cubic denominator.

    w_i are signed squared ambient coordinates; the quadratic has leading
    coefficient R^2."""
    a1, a2, a3 = a
    w1, w2, w3 = w[..., 0], w[..., 1], w[..., 2]
    A = w1 + w2 + w3
    B = -(w1 * (a2 + a3) + w2 * (a1 + a3) + w3 * (a1 + a2))
    C = w1 * a2 * a3 + w2 * a1 * a3 + w3 * a1 * a2
    disc = np.sqrt(np.maximum(B * B - 4 * A * C, 0))
    q = -0.5 * (B + np.where(B >= 0, 1, -1) * disc)
    r1 = q / A
    with np.errstate(divide="ignore", invalid="ignore"):
        r2 = np.where(q != 0, C / q, r1)
    return np.minimum(r1, r2), np.maximum(r1, r2)


def _signs_of(a):
    return np.where(a >= 0, 1.0, -1.0)


def _s2_alg_f(c, q, R, s=None):
    a1, a2, a3 = c["a"]
    r1, r2 = q[..., 0], q[..., 1]
    u1 = (r1 - a1) * (r2 - a1) / ((a2 - a1) * (a3 - a1))
    u2 = (r1 - a2) * (r2 - a2) / ((a3 - a2) * (a1 - a2))
    u3 = (r1 - a3) * (r2 - a3) / ((a1 - a3) * (a2 - a3))
    u = R * np.sqrt(np.maximum(np.stack([u1, u2, u3], axis=-1), 0))
    if s is not None:
        u = u * s
    return u


def _s2_alg_i(c, a, R):
    return np.stack(_alg_roots(c["a"], a * a, R), axis=-1)


def _s2_alg_domain(chart):
    a1, a2, a3 = chart["a"]
    return ((a1, a2, True, True), (a2, a3, True, True))


def _s2_alg_sample(c, rng, n):
    a1, a2, a3 = c["a"]
    e1, e2 = 0.02 * (a2 - a1), 0.02 * (a3 - a2)
    return np.stack([_uniform(rng, n, a1 + e1, a2 - e1), _uniform(rng, n, a2 + e2, a3 - e2)], -1)


def _random_signs(c, rng, n):
    return rng.choice([-1.0, 1.0], size=(n, 3))


_register("S2", "elliptic_algebraic", forward=_s2_alg_f, inverse=_s2_alg_i, params=("a",),
          check=_triple_check(lambda a: a[0] < a[1] < a[2]), domain=_s2_alg_domain,
          sample=_s2_alg_sample, signed=True, sample_signs=_random_signs)


def _modulus_check(chart):
    k = chart["k"]
    if not (0 < k < 1):
        raise DomainError("modulus must lie in (0, 1)")


def _kp(k):
    return math.sqrt(1 - k * k)


def _s2_jac_f(c, q, R, s=None):
    k = c["k"]
    kp = _kp(k)
    sa, ca, da = jacobi_elliptic(q[..., 0], k)
    sb, cb, db = jacobi_elliptic(q[..., 1], kp)
    return R * np.stack([sa * db, ca * cb, da * sb], axis=-1)


def _amplitude_arg(sn_abs, cn, k):
    """F(atan2(|sn|, cn), k) for cn of either sign."""
    phi = np.arctan2(sn_abs, cn)
    return ellipkinc(phi, k * k)


def _s2_jac_i(c, a, R):
    k = c["k"]
    kp = _kp(k)
    # algebraic form with a = (0, k^2, 1)
    r1, r2 = _alg_roots((0.0, k * k, 1.0), a * a, R)
    sa2 = np.clip(r1 / (k * k), 0, 1)           # sn^2(alpha, k)
    cb2 = np.clip((r2 - k * k) / (kp * kp), 0, 1)  # cn^2(beta, k')
    sgn = _signs_of(a)
    alpha = sgn[..., 0] * _amplitude_arg(np.sqrt(sa2), np.sqrt(1 - sa2), k)
    beta = sgn[..., 2] * _amplitude_arg(np.sqrt(1 - cb2), sgn[..., 1] * np.sqrt(cb2), kp)
    return np.stack([alpha, beta], axis=-1)


def _s2_jac_domain(chart):
    k = chart["k"]
    K, Kp = elliptic_K(k), elliptic_K(_kp(k))
    return ((-K, K, True, True), (-2 * Kp, 2 * Kp, True, True))


def _s2_jac_sample(c, rng, n):
    (lo1, hi1, _, _), (lo2, hi2, _, _) = _s2_jac_domain(c)
    return np.stack([_uniform(rng, n, 0.97 * lo1, 0.97 * hi1), _uniform(rng, n, 0.97 * lo2, 0.97 * hi2)], -1)


_register("S2", "elliptic_jacobi", forward=_s2_jac_f, inverse=_s2_jac_i, params=("k",),
          check=_modulus_check, domain=_s2_jac_domain, sample=_s2_jac_sample)


# H2 ------------------------------------------------------------------------

def _ps_f(c, q, R, s=None):
    tau, ph = q[..., 0], q[..., 1]
    return R * np.stack([np.cosh(tau), np.sinh(tau) * np.cos(ph), np.sinh(tau) * np.sin(ph)], axis=-1)


def _ps_i(c, a, R):
    u1, u2 = a[..., 1], a[..., 2]
    tau = np.arcsinh(np.hypot(u1, u2) / R)
    ph = np.mod(np.arctan2(u2, u1), 2 * np.pi)
    return np.stack([tau, ph], axis=-1)


_register("H2", "pseudo_spherical", forward=_ps_f, inverse=_ps_i,
          domain=_box((0, INF, True, False), (0, 2 * math.pi, True, False)),
          sample=lambda c, rng, n: np.stack([_uniform(rng, n, 0.1, 2), _uniform(rng, n, 0.05, 6.2)], -1))


def _eq_f(c, q, R, s=None):
    t1, t2 = q[..., 0], q[..., 1]
    return R * np.stack([np.cosh(t1) * np.cosh(t2), np.cosh(t1) * np.sinh(t2), np.sinh(t1)], axis=-1)


def _eq_i(c, a, R):
    u1, u2 = a[..., 1], a[..., 2]
    t1 = np.arcsinh(u2 / R)
    t2 = np.arcsinh(u1 / (R * np.cosh(t1)))
    return np.stack([t1, t2], axis=-1)


_register("H2", "equidistant", forward=_eq_f, inverse=_eq_i,
          domain=_box((-INF, INF, False, False), (-INF, INF, False, False)),
          sample=lambda c, rng, n: rng.uniform(-1.5, 1.5, size=(n, 2)))


def _horo_f(c, q, R, s=None):
    x, y = q[..., 0], q[..., 1]
    r2 = x * x + y * y
    return R * np.stack([(r2 + 1) / (2 * y), (r2 - 1) / (2 * y), x / y], axis=-1)


def _horo_i(c, a, R):
    d = a[..., 0] - a[..., 1]
    return np.stack([a[..., 2] / d, R / d], axis=-1)


_register("H2", "horocyclic", forward=_horo_f, inverse=_horo_i,
          domain=_box((-INF, INF, False, False), (0, INF, False, False)),
          sample=lambda c, rng, n: np.stack([_uniform(rng, n, -2, 2), _uniform(rng, n, 0.2, 3)], -1))


# elliptic and hyperbolic systems: which a_i each ambient coordinate pairs
# with, and the sign of its residue in sum_i w_i/(rho - a_i)
_H2_ALG = {
    "elliptic": ((2, +1), (1, -1), (0, -1)),     # u0<->a3, u1<->a2, u2<->a1
    "hyperbolic": ((1, +1), (2, -1), (0, -1)),   # u0<->a2, u1<->a3, u2<->a1
}


def _h2_alg_f(name):
    pairing = _H2_ALG[name]

    def fwd(c, q, R, s=None):
        a = c["a"]
        r1, r2 = q[..., 0], q[..., 1]
        out = []
        for idx, sign in pairing:
            ai = a[idx]
            den = 1.0
            for j in range(3):
                if j != idx:
                    den *= ai - a[j]
            out.append(sign * (r1 - ai) * (r2 - ai) / den)
        u = R * np.sqrt(np.maximum(np.stack(out, axis=-1), 0))
        if s is not None:
            u = u * s
        return u
    return fwd


def _h2_alg_i(name):
    pairing = _H2_ALG[name]

    def inv(c, a_pt, R):
        a = c["a"]
        w = np.zeros(a_pt.shape)
        for col, (idx, sign) in enumerate(pairing):
            w[..., idx] = sign * a_pt[..., col] ** 2
        return np.stack(_alg_roots(a, w, R), axis=-1)[..., ::-1]
    return inv


def _h2_ell_domain(chart):
    a1, a2, a3 = chart["a"]
    return ((a1, INF, True, False), (a2, a1, True, True))


def _h2_hyp_domain(chart):
    a1, a2, a3 = chart["a"]
    return ((a1, INF, True, False), (-INF, a3, False, True))


def _h2_ell_sample(c, rng, n):
    a1, a2, a3 = c["a"]
    e = 0.02 * (a1 - a2)
    return np.stack([_uniform(rng, n, a1 + e, a1 + 3 * (a1 - a3)), _uniform(rng, n, a2 + e, a1 - e)], -1)


def _h2_hyp_sample(c, rng, n):
    a1, a2, a3 = c["a"]
    e = 0.02 * (a1 - a3)
    return np.stack([_uniform(rng, n, a1 + e, a1 + 3 * (a1 - a3)), _uniform(rng, n, a3 - 3 * (a1 - a3), a3 - e)], -1)


def _upper_signs(c, rng, n):
    s = rng.choice([-1.0, 1.0], size=(n, 3))
    s[:, 0] = 1.0
    return s


_register("H2", "elliptic", forward=_h2_alg_f("elliptic"), inverse=_h2_alg_i("elliptic"),
          params=("a",), check=_triple_check(lambda a: a[2] < a[1] < a[0]),
          domain=_h2_ell_domain, sample=_h2_ell_sample, signed=True, sample_signs=_upper_signs)
_register("H2", "hyperbolic", forward=_h2_alg_f("hyperbolic"), inverse=_h2_alg_i("hyperbolic"),
          params=("a",), check=_triple_check(lambda a: a[2] < a[1] < a[0]),
          domain=_h2_hyp_domain, sample=_h2_hyp_sample, signed=True, sample_signs=_upper_signs)


def _semi_f(c, q, R, s=None):
    m1, m2 = q[..., 0], q[..., 1]
    plus = (1 + m1 * m1) * (1 + m2 * m2)
    minus = 1 + m1 * m2
    u0 = R * np.sqrt((plus + minus) / 2)
    u1 = R * np.sqrt(np.maximum((plus - minus) / 2, 0))
    if s is not None:
        u1 = u1 * s[..., 1]
    return np.stack([u0, u1, R * np.sqrt(m1 * m2)], axis=-1)


def _semi_i(c, a, R):
    u0, u1, u2 = a[..., 0], a[..., 1], a[..., 2]
    if np.any(u2 <= 0):
        raise CoverageError("semi-hyperbolic coordinates cover u2 > 0 only")
    P = (u2 / R) ** 2
    S = (u0 * u0 + u1 * u1) / R ** 2
    base = S - 1 - P * P
    sp_ = np.sqrt(np.maximum(base + 2 * P, 0))
    sm = np.sqrt(np.maximum(base - 2 * P, 0))
    return np.stack([(sp_ + sm) / 2, (sp_ - sm) / 2], axis=-1)


def _semi_sample(c, rng, n):
    m2 = _uniform(rng, n, 0.2, 1.5)
    return np.stack([m2 + _uniform(rng, n, 0.1, 1.5), m2], -1)


_register("H2", "semi_hyperbolic", forward=_semi_f, inverse=_semi_i,
          domain=_box((0, INF, False, False), (0, INF, False, False)),
          sample=_semi_sample, signed=True, sample_signs=_upper_signs)


def _ep_f(c, q, R, s=None):
    a, th = q[..., 0], q[..., 1]
    ca, ct = np.cosh(a), np.cos(th)
    den = 2 * ca * ct
    return R * np.stack([(ca ** 2 + ct ** 2) / den, (np.sinh(a) ** 2 - np.sin(th) ** 2) / den,
                         np.tan(th) * np.tanh(a)], axis=-1)


def _quad_pair(p, q):
    """X >= Y with X Y = p^2 and X + Y = 1 + p^2 + q^2."""
    s = 1 + p * p + q * q
    disc = np.sqrt(np.maximum(s * s - 4 * p * p, 0))
    X = (s + disc) / 2
    return X, p * p / X


def _ep_i(c, a_pt, R):
    u0, u1, u2 = a_pt[..., 0], a_pt[..., 1], a_pt[..., 2]
    p = R / (u0 - u1)                 # cosh a cos th
    q = u2 * p / R                    # sinh a sin th
    X, Y = _quad_pair(p, q)           # cosh^2 a, cos^2 th
    a = np.arccosh(np.sqrt(X))
    th = np.arccos(np.clip(np.sqrt(Y), -1, 1))
    th = np.where(u2 >= 0, th, -th)
    return np.stack([a, th], axis=-1)


_register("H2", "elliptic_parabolic", forward=_ep_f, inverse=_ep_i,
          domain=_box((-INF, INF, False, False), (-math.pi / 2, math.pi / 2, False, False)),
          sample=lambda c, rng, n: np.stack([_uniform(rng, n, 0.1, 2), _uniform(rng, n, -1.4, 1.4)], -1))


def _hp_f(c, q, R, s=None):
    b, th = q[..., 0], q[..., 1]
    sb, st = np.sinh(b), np.sin(th)
    den = 2 * sb * st
    return R * np.stack([(np.cosh(b) ** 2 + np.cos(th) ** 2) / den, (sb ** 2 - st ** 2) / den,
                         np.cos(th) / st * np.cosh(b) / sb], axis=-1)


def _hp_i(c, a_pt, R):
    u0, u1, u2 = a_pt[..., 0], a_pt[..., 1], a_pt[..., 2]
    p = R / (u0 - u1)                 # sinh b sin th
    q = u2 * p / R                    # cosh b cos th
    cc = q * q + p * p - 1
    X = (cc + np.sqrt(cc * cc + 4 * p * p)) / 2   # sinh^2 b
    Y = p * p / X                                 # sin^2 th
    b = np.arcsinh(np.sqrt(X))
    th = np.arctan2(np.sqrt(Y), np.where(u2 >= 0, 1.0, -1.0) * np.sqrt(np.maximum(1 - Y, 0)))
    return np.stack([b, th], axis=-1)


_register("H2", "hyperbolic_parabolic", forward=_hp_f, inverse=_hp_i,
          domain=_box((0, INF, False, False), (0, math.pi, False, False)),
          sample=lambda c, rng, n: np.stack([_uniform(rng, n, 0.2, 2), _uniform(rng, n, 0.15, math.pi - 0.15)], -1))


def _scp_f(c, q, R, s=None):
    xi, eta = q[..., 0], q[..., 1]
    s2 = (xi * xi + eta * eta) ** 2
    pq = xi * eta
    return R * np.stack([(s2 + 4) / (8 * pq), (s2 - 4) / (8 * pq), (eta * eta - xi * xi) / (2 * pq)], axis=-1)


def _scp_i(c, a_pt, R):
    u0, u1, u2 = a_pt[..., 0], a_pt[..., 1], a_pt[..., 2]
    P = R / (u0 - u1)
    S = 2 * np.sqrt(P * (u0 + u1) / R)
    dlt = 2 * P * u2 / R
    return np.stack([np.sqrt((S - dlt) / 2), np.sqrt((S + dlt) / 2)], axis=-1)


_register("H2", "semicircular_parabolic", forward=_scp_f, inverse=_scp_i,
          domain=_box((0, INF, False, False), (0, INF, False, False)),
          sample=lambda c, rng, n: rng.uniform(0.3, 2.0, size=(n, 2)))


def _h2_jac_complex(c, q, R):
    """Ambient point from the complex Jacobi form, alpha = i K' + s."""
    k = c["k"]
    kp = _kp(k)
    Kp = elliptic_K(kp)
    q = np.atleast_2d(q)
    out = np.empty((q.shape[0], 3), dtype=complex)
    for n, (s_, beta) in enumerate(q):
        sa, ca, da = jacobi_elliptic_complex(complex(s_, Kp), k)
        sb, cb, db = (float(v) for v in jacobi_elliptic(beta, kp))
        out[n] = (R * sa * db, 1j * R * ca * cb, 1j * R * da * sb)
    return out


def _h2_jac_f(c, q, R, s=None):
    z = _h2_jac_complex(c, q, R)
    scale = np.maximum(np.abs(z).max(axis=-1), R)
    if np.any(np.abs(z.imag).max(axis=-1) > 1e-10 * scale):
        raise DomainError("complex Jacobi form left a non-negligible imaginary part")
    u = z.real
    return u if np.ndim(q) > 1 else u[0]


def _h2_jac_i(c, a_pt, R):
    k = c["k"]
    kp = _kp(k)
    # algebraic elliptic form with a = (1, k^2, 0)
    pts = np.atleast_2d(a_pt)
    w = np.stack([-pts[:, 2] ** 2, -pts[:, 1] ** 2, pts[:, 0] ** 2], axis=-1)
    r2, r1 = _alg_roots((1.0, k * k, 0.0), w, R)
    sn_s = np.sqrt(1 / r1)                                  # rho1 = 1 / sn^2 s
    sb2 = np.clip((1 - r2) / (kp * kp), 0, 1)               # sn^2(beta, k')
    cn_s = np.sqrt(np.maximum(1 - sn_s ** 2, 0))
    s_ = ellipkinc(np.arctan2(sn_s, cn_s), k * k)
    sgn1 = _signs_of(pts[:, 1])
    sgn2 = _signs_of(pts[:, 2])
    phi = np.arctan2(np.sqrt(sb2), sgn1 * np.sqrt(1 - sb2))  # in [0, pi]
    beta = ellipkinc(phi, kp * kp)
    Kp = elliptic_K(kp)
    beta = np.where(sgn2 >= 0, beta, 4 * Kp - beta)
    out = np.stack([s_, beta], axis=-1)
    return out if np.ndim(a_pt) > 1 else out[0]


def _h2_jac_domain(chart):
    k = chart["k"]
    return ((0, 2 * elliptic_K(k), False, False), (0, 4 * elliptic_K(_kp(k)), True, False))


def _h2_jac_sample(c, rng, n):
    K, Kp = elliptic_K(c["k"]), elliptic_K(_kp(c["k"]))
    return np.stack([_uniform(rng, n, 0.05 * K, 0.97 * K), _uniform(rng, n, 0.03 * Kp, 3.97 * Kp)], -1)


_register("H2", "elliptic_jacobi", forward=_h2_jac_f, inverse=_h2_jac_i, params=("k",),
          check=_modulus_check, domain=_h2_jac_domain, sample=_h2_jac_sample,
          complex_form=True)


# ---------------------------------------------------------------------------
# public chart maps

def _coords_of(p):
    if isinstance(p, ChartPoint):
        return np.asarray(p.coords, dtype=float), (np.asarray(p.signs, dtype=float) if p.signs else None)
    return np.asarray(p, dtype=float), None


def _forward(space, chart, q, signs):
    spec = chart.spec
    if space.curved:
        return spec.forward(chart, q, space.radius, signs)
    return spec.forward(chart, q, signs)


def to_ambient(space, chart, p, signs=None):
    """Map local chart coordinates to an ambient point."""
    if chart.space != space.kind:
        raise DomainError("chart %s belongs to %s, not %s" % (chart.name, chart.space, space.kind))
    q, s = _coords_of(p)
    if signs is not None:
        s = np.asarray(signs, dtype=float)
    _in_domain(chart, q)
    spec = chart.spec
    if spec.signed and s is not None and space.kind == "H2" and np.any(s[..., 0] < 0):
        raise DomainError("u0 must stay on the upper sheet")
    a = _forward(space, chart, q, s if spec.signed else None)
    if space.curved:
        res = constraint_residual(space, a)
        if np.any(res > CONSTRAINT_TOL * max(1.0, space.radius ** 2) * 10):
            raise DomainError("chart %s produced an off-surface point (residual %g)"
                              % (chart.name, np.max(res)))
    return a


def _polish(space, chart, a, q, s):
    """Gauss-Newton refinement of an analytic inverse on the forward map."""
    q = np.array(q, dtype=float)
    single = q.ndim == 1
    qq = np.atleast_2d(q)
    aa = np.atleast_2d(a)
    ss = None if s is None else np.atleast_2d(s)
    scale = np.maximum(1.0, np.abs(qq))
    for _ in range(2):
        f0 = _forward(space, chart, qq, ss) - aa
        J = np.empty(aa.shape + (2,))
        for j in range(2):
            e = np.zeros_like(qq)
            e[:, j] = 1e-7 * scale[:, j]
            J[..., j] = (_forward(space, chart, qq + e, ss) - _forward(space, chart, qq - e, ss)) / (2 * e[:, j:j + 1])
        JtJ = np.einsum("nij,nik->njk", J, J)
        Jtf = np.einsum("nij,ni->nj", J, f0)
        det = JtJ[:, 0, 0] * JtJ[:, 1, 1] - JtJ[:, 0, 1] * JtJ[:, 1, 0]
        good = np.abs(det) > 1e-20
        dq = np.zeros_like(qq)
        dq[good] = np.linalg.solve(JtJ[good], Jtf[good][..., None])[..., 0]
        trial = qq - dq
        f1 = _forward(space, chart, trial, ss) - aa
        better = np.linalg.norm(f1, axis=-1) < np.linalg.norm(f0, axis=-1)
        qq = np.where(better[:, None], trial, qq)
    return qq[0] if single else qq


def from_ambient(space, chart, a, polish=True):
    """Map an ambient point to local chart coordinates (a ChartPoint)."""
    if chart.space != space.kind:
        raise DomainError("chart %s belongs to %s, not %s" % (chart.name, chart.space, space.kind))
    a = np.asarray(a, dtype=float)
    if space.curved:
        res = constraint_residual(space, a)
        if np.any(res > 1e-9 * max(1.0, space.radius ** 2)):
            raise ConstraintError("point is off the %s surface (residual %g)" % (space.kind, np.max(res)))
        if space.kind == "H2" and np.any(a[..., 0] <= 0):
            raise ConstraintError("point lies on the lower sheet of the hyperboloid")
    spec = chart.spec
    q = spec.inverse(chart, a, space.radius) if space.curved else spec.inverse(chart, a)
    signs = _signs_of(a) if spec.signed else None
    if polish and spec.polish:
        q = _polish(space, chart, a, q, signs)
    if q.ndim > 1:
        return q, signs
    return ChartPoint(chart.name, tuple(float(v) for v in q),
                      tuple(float(v) for v in signs) if signs is not None else ())


def sample_chart(chart, rng, n):
    """Interior chart points on the branch used by from_ambient, plus signs."""
    spec = chart.spec
    q = spec.sample(chart, rng, n)
    s = spec.sample_signs(chart, rng, n) if spec.signed else None
    return q, s


def roundtrip_error(space, chart, rng, n=100):
    """(max |from(to(q)) - q|, max constraint residual) over n interior samples."""
    q, s = sample_chart(chart, rng, n)
    a = to_ambient(space, chart, q, signs=s)
    q2, _ = from_ambient(space, chart, a)
    a2 = to_ambient(space, chart, q2, signs=s)
    err = max(np.max(np.abs(q2 - q)), np.max(np.abs(a2 - a)))
    return float(err), float(np.max(constraint_residual(space, a)))


# ---------------------------------------------------------------------------
# Beltrami projections

PROJECTIONS = {"S2": ("E2",), "H2": ("E2", "E11")}


def _projection_target(space, target):
    if target is None:
        target = "E2"
    if target not in PROJECTIONS.get(space.kind, ()):
        raise ValueError("no Beltrami projection %s -> %s" % (space.kind, target))
    return target


def beltrami_project(space, a, target=None, tol=1e-12):
    """Central projection x_mu = R u_mu / u_denominator."""
    a = np.asarray(a, dtype=float)
    R = space.radius
    target = _projection_target(space, target)
    if space.kind == "S2":
        den, num = a[..., 2], a[..., :2]
    elif target == "E2":
        den, num = a[..., 0], a[..., 1:]
    else:
        den, num = a[..., 2], a[..., :2]
    if np.any(np.abs(den) < tol * R):
        raise SingularityError("projection denominator vanishes")
    return R * num / den[..., None]


def beltrami_lift(space, x, target=None):
    """Inverse of beltrami_project onto the sheet with positive denominator."""
    x = np.asarray(x)
    R = space.radius
    target = _projection_target(space, target)
    if space.kind == "S2":
        c = 1 / np.sqrt(1 + (x[..., 0] ** 2 + x[..., 1] ** 2) / R ** 2)
        return np.stack([x[..., 0] * c, x[..., 1] * c, R * c], axis=-1)
    if target == "E2":
        q = 1 - (x[..., 0] ** 2 + x[..., 1] ** 2) / R ** 2
        if np.any(q <= 0):
            raise SingularityError("Beltrami point outside the disc |x| < R")
        c = 1 / np.sqrt(q)
        return np.stack([R * c, x[..., 0] * c, x[..., 1] * c], axis=-1)
    q = (x[..., 0] ** 2 - x[..., 1] ** 2) / R ** 2 - 1
    if np.any(q <= 0):
        raise SingularityError("Beltrami point needs y0^2 - y1^2 > R^2")
    u2 = R / np.sqrt(q)
    return np.stack([x[..., 0] * u2 / R, x[..., 1] * u2 / R, u2], axis=-1)


# ---------------------------------------------------------------------------
# finite differences

MIN_STEP = 1e-7


def fd_grad_hess(f, x, h):
    """Central-difference gradient and Hessian of f at a batch of 2-d points."""
    x = np.asarray(x)
    e0 = np.zeros(2, dtype=x.dtype)
    e1 = np.zeros(2, dtype=x.dtype)
    e0[0] = h
    e1[1] = h
    pts = [x, x + e0, x - e0, x + e1, x - e1, x + e0 + e1, x + e0 - e1, x - e0 + e1, x - e0 - e1]
    n = x.shape[0]
    vals = np.asarray(f(np.concatenate(pts, axis=0)))
    v = [vals[i * n:(i + 1) * n] for i in range(9)]
    g = np.stack([(v[1] - v[2]) / (2 * h), (v[3] - v[4]) / (2 * h)], axis=-1)
    hxx = (v[1] - 2 * v[0] + v[2]) / (h * h)
    hyy = (v[3] - 2 * v[0] + v[4]) / (h * h)
    hxy = (v[5] - v[6] - v[7] + v[8]) / (4 * h * h)
    return v[0], g, hxx, hyy, hxy


def _check_step(h):
    if not (0 < h <= 0.1):
        raise ValueError("step h must lie in (0, 0.1]")
    if h < MIN_STEP:
        raise ValueError("step h below %g invites cancellation" % MIN_STEP)


def laplace_beltrami_apply(space, f, x, h=1e-4, target=None):
    """Central-difference Laplace-Beltrami operator in flat (Beltrami) coordinates.

    f maps an (n, 2) array to n values. On curved spaces x are Beltrami
    coordinates (projection target E2 by default, or E11 for H2)."""
    _check_step(h)
    x = np.asarray(x)
    single = x.ndim == 1
    xb = np.atleast_2d(x)
    _, g, fxx, fyy, fxy = fd_grad_hess(f, xb, h)
    X, Y = xb[:, 0], xb[:, 1]
    if space.kind == "E2":
        out = fxx + fyy
    elif space.kind == "E11":
        out = fxx - fyy
    else:
        R2 = space.radius ** 2
        target = _projection_target(space, target)
        kappa = 1.0 if space.kind == "S2" else -1.0
        eta = -1.0 if target == "E11" else 1.0
        quad = (X * X + eta * Y * Y) / R2
        box = fxx + eta * fyy
        euler = X * g[:, 0] + Y * g[:, 1]
        euler2 = X * X * fxx + 2 * X * Y * fxy + Y * Y * fyy + euler
        out = (1 + kappa * quad) * (box + kappa * (euler2 + euler) / R2)
        if space.kind == "H2" and target == "E2" and np.any(quad >= 1):
            raise SingularityError("Beltrami point outside the disc |x| < R")
    return out[0] if single else out


DEFAULT_PARAMS = {
    ("E2", "elliptic"): [{"D": 1.3}],
    ("E11", "hyperbolic_1"): [{"l": 1.5}],
    ("E11", "elliptic_1"): [{"D": 1.2}],
    ("E11", "elliptic_2"): [{"d": 0.8, "variant": "i"}, {"d": 0.8, "variant": "ii"}],
    ("S2", "elliptic_algebraic"): [{"a": (0.3, 1.1, 2.0)}],
    ("S2", "elliptic_jacobi"): [{"k": 0.6}],
    ("H2", "elliptic"): [{"a": (2.0, 1.1, 0.3)}],
    ("H2", "hyperbolic"): [{"a": (2.0, 1.1, 0.3)}],
    ("H2", "elliptic_jacobi"): [{"k": 0.6}],
}


def default_charts():
    """Every registered chart, with representative parameters where needed."""
    out = []
    for (kind, name) in sorted(_CHARTS):
        for params in DEFAULT_PARAMS.get((kind, name), [{}]):
            out.append(make_chart(kind, name, **params))
    return out
