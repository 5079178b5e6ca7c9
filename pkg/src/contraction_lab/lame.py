"""Lame polynomials on the sphere: three-term recursion, secular eigenvalues,
normalized product bases, a dense ladder-operator oracle and the
flat-limit checks of the separated equations."""

from dataclasses import dataclass, field
import itertools
import math

import numpy as np
from scipy import linalg as sla

from . import geometry as geo
from .specfun import hyp_0f1


class LameError(ValueError):
    """Invalid Lame system (parity, degenerate parameters, unknown eigenvalue)."""


CYCLIC = {1: (2, 3), 2: (3, 1), 3: (1, 2)}


@dataclass
class LameSystem:
    """Polynomial Lame solutions of degree l in one parity class alpha."""
    l: int
    alpha: tuple
    a: tuple
    eigenvalues: list = field(default_factory=list)
    coeff_table: dict = field(default_factory=dict)
    center: int = 0

    def __post_init__(self):
        self.l = int(self.l)
        self.alpha = tuple(int(v) for v in self.alpha)
        self.a = tuple(float(v) for v in self.a)
        if len(self.alpha) != 3 or any(v not in (0, 1) for v in self.alpha):
            raise LameError("alpha must be a triple of 0/1 entries")
        if len(self.a) != 3 or len(set(self.a)) != 3:
            raise LameError("a-triple must have three distinct entries")
        if self.l < 0 or (self.l - sum(self.alpha)) % 2 or self.l < sum(self.alpha):
            raise LameError("l = %d and alpha = %r violate l = 2N + alpha" % (self.l, self.alpha))
        if not self.center:
            # the middle parameter gives beta_t * delta_{t+1} > 0: a real symmetrizable matrix
            order = np.argsort(self.a)
            self.center = int(order[1]) + 1

    @property
    def N(self):
        return (self.l - sum(self.alpha)) // 2

    @property
    def labels(self):
        """D2 reflection characters (p, q) = ((-1)^alpha1, (-1)^alpha2)."""
        return (-1) ** self.alpha[0], (-1) ** self.alpha[1]


def recursion_row(k, t, system, lam):
    """Coefficients (of b_{t+1}, b_t, b_{t-1}) in the recursion about a_k."""
    if k not in CYCLIC:
        raise ValueError("expansion center must be 1, 2 or 3")
    i, j = CYCLIC[k]
    a = dict(zip((1, 2, 3), system.a))
    al = dict(zip((1, 2, 3), system.alpha))
    l = system.l
    asum = sum(system.alpha)
    beta = 4 * (a[i] - a[k]) * (a[j] - a[k]) * (t + 1) * (t + al[k] + 0.5)
    gamma = -(a[i] - a[k]) * (2 * t + al[k] + al[j]) ** 2 - (a[j] - a[k]) * (2 * t + al[k] + al[i]) ** 2
    middle = gamma + lam - l * (l + 1) * a[k]
    lower = (2 * t + asum - l - 2) * (2 * t + asum + l - 1) if t > 0 else 0.0
    return beta, middle, lower


def _recursion_matrix(system, k):
    """Matrix M with (M + lam I) b = 0 for the truncated recursion about a_k."""
    n = system.N + 1
    M = np.zeros((n, n))
    for t in range(n):
        beta, middle, lower = recursion_row(k, t, system, 0.0)
        M[t, t] = middle
        if t + 1 < n:
            M[t, t + 1] = beta
        if t > 0:
            M[t, t - 1] = lower
    return M


def secular_eigenvalues(system):
    """Ascending separation constants lam of the truncated recursion.

    The tridiagonal matrix is balanced by a diagonal similarity into a
    symmetric one; its eigenvectors give the coefficients b_t."""
    k = system.center
    M = _recursion_matrix(system, k)
    n = M.shape[0]
    diag = -np.diag(M)
    if n == 1:
        lam = [float(diag[0])]
        system.eigenvalues = lam
        system.coeff_table = {lam[0]: np.ones(1)}
        return lam
    up = -np.diag(M, 1)
    lo = -np.diag(M, -1)
    prod = up * lo
    if np.any(prod <= 0):
        raise LameError("recursion about a_%d is not symmetrizable" % k)
    off = np.sqrt(prod)
    vals, vecs = sla.eigh_tridiagonal(diag, off)
    # undo the balancing: b_{t+1} / b_t scale = off_t / up_t
    scale = np.ones(n)
    for t in range(n - 1):
        scale[t + 1] = scale[t] * off[t] / up[t]
    table = {}
    for v, w in zip(vals, vecs.T):
        b = scale * w
        b = b / b[0] if b[0] != 0 else b / np.max(np.abs(b))
        table[float(v)] = b
    system.eigenvalues = [float(v) for v in vals]
    system.coeff_table = table
    return system.eigenvalues


def coefficients(system, lam, k=None):
    """Expansion coefficients b_t about a_k (b_0 = 1) for an eigenvalue lam."""
    lam = _match_eigenvalue(system, lam)
    k = k or system.center
    if k == system.center:
        return system.coeff_table[lam].copy()
    M = _recursion_matrix(system, k) + lam * np.eye(system.N + 1)
    _, _, vt = np.linalg.svd(M)
    b = vt[-1]
    return b / b[0]


def _match_eigenvalue(system, lam, tol=1e-8):
    if not system.eigenvalues:
        secular_eigenvalues(system)
    ev = np.asarray(system.eigenvalues)
    i = int(np.argmin(np.abs(ev - lam)))
    if abs(ev[i] - lam) > tol * max(1.0, abs(lam)):
        raise LameError("%r is not an eigenvalue of this system" % (lam,))
    return system.eigenvalues[i]


def parity_classes(l):
    """All alpha in {0,1}^3 compatible with l."""
    return [al for al in itertools.product((0, 1), repeat=3)
            if sum(al) <= l and (l - sum(al)) % 2 == 0]


def all_eigenvalues(l, a):
    """{alpha: eigenvalues} over every parity class of degree l."""
    out = {}
    for al in parity_classes(l):
        out[al] = secular_eigenvalues(LameSystem(l, al, a))
    return out


# ---------------------------------------------------------------------------
# dense oracle

def _angular_momentum(l):
    m = np.arange(-l, l + 1, dtype=float)
    jp = np.zeros((2 * l + 1, 2 * l + 1))
    for i in range(2 * l):
        jp[i + 1, i] = math.sqrt(l * (l + 1) - m[i] * (m[i] + 1))
    jm = jp.T
    j1 = (jp + jm) / 2
    j2 = (jp - jm) / 2j
    j3 = np.diag(m)
    return j1, j2, j3


ORACLE_MAX_L = 30


def oracle_q_spectrum(l, a):
    """Spectrum of Q = a1 L1^2 + a2 L2^2 + a3 L3^2 on the degree-l multiplet.

    The generators are anti-Hermitian vector fields, L_j = i J_j with
    Hermitian ladder matrices J_j, so each L_j^2 = -J_j^2."""
    if l > ORACLE_MAX_L:
        raise ValueError("oracle limited to l <= %d" % ORACLE_MAX_L)
    j1, j2, j3 = _angular_momentum(l)
    Q = -(a[0] * j1 @ j1 + a[1] * j2 @ j2 + a[2] * j3 @ j3)
    return [float(v) for v in np.linalg.eigvalsh(Q)]


# q = slope * lam + intercept, measured against the oracle at l = 1
LAMBDA_MAP = (-1.0, 0.0)


def calibrate_lambda_map(a):
    """Least-squares affine fit q = s lam + c between the l = 1 separation
    constants and the oracle spectrum, pairing both sorted in matching order."""
    lam = sorted(v for vals in all_eigenvalues(1, a).values() for v in vals)
    q = sorted(oracle_q_spectrum(1, a), reverse=True)
    A = np.stack([lam, np.ones(3)], -1)
    (slope, icpt), *_ = np.linalg.lstsq(A, np.asarray(q), rcond=None)
    return float(slope), float(icpt)


def q_from_lambda(lam, l=None, a=None):
    """Eigenvalue of Q = a1 L1^2 + a2 L2^2 + a3 L3^2 for a separation constant lam."""
    return LAMBDA_MAP[0] * lam + LAMBDA_MAP[1]


# ---------------------------------------------------------------------------
# evaluation

def _root_factor(system, rho):
    out = np.ones_like(np.asarray(rho, dtype=float))
    for aj, al in zip(system.a, system.alpha):
        if al:
            out = out * np.sqrt(np.abs(rho - aj))
    return out


def lame_eval(system, lam, rho, k=None):
    """psi(rho) = prod |rho - a_j|^{alpha_j/2} sum_t b_t (rho - a_k)^t."""
    k = k or system.center
    b = coefficients(system, lam, k)
    rho = np.asarray(rho, dtype=float)
    x = rho - system.a[k - 1]
    poly = np.zeros_like(x)
    for c in b[::-1]:
        poly = poly * x + c
    return _root_factor(system, rho) * poly


def _band_check(system, rho1, rho2):
    a1, a2, a3 = sorted(system.a)
    r1, r2 = np.asarray(rho1), np.asarray(rho2)
    tol = 1e-12 * max(1.0, abs(a3))
    if np.any(r1 < a1 - tol) or np.any(r1 > a2 + tol) or np.any(r2 < a2 - tol) or np.any(r2 > a3 + tol):
        raise geo.DomainError("rho values outside the bands a1 <= rho1 <= a2 <= rho2 <= a3")


def _unnormalized(system, lam, rho1, rho2, signs):
    s = np.ones_like(np.asarray(rho1, dtype=float))
    if signs is not None:
        signs = np.asarray(signs, dtype=float)
        for j in range(3):
            if system.alpha[j]:
                s = s * signs[..., j]
    return s * lame_eval(system, lam, rho1) * lame_eval(system, lam, rho2)


def _sphere_grid(n_theta, n_phi):
    x, w = np.polynomial.legendre.leggauss(n_theta)
    th = np.arccos(x)
    ph = np.arange(n_phi) * (2 * math.pi / n_phi)
    T, P = np.meshgrid(th, ph, indexing="ij")
    W = np.outer(w, np.full(n_phi, 2 * math.pi / n_phi))
    u = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], -1)
    return u.reshape(-1, 3), W.reshape(-1)


def sphere_to_rho(system, u):
    """Algebraic elliptic coordinates (rho1, rho2) and ambient signs of unit vectors u."""
    a_sorted = tuple(sorted(system.a))
    if a_sorted != system.a:
        raise LameError("sphere evaluation needs a1 < a2 < a3")
    r1, r2 = geo._alg_roots(system.a, u * u, 1.0)
    return r1, r2, np.where(u >= 0, 1.0, -1.0)


def normalization(system, lam):
    """A > 0 with unit L2 norm over the unit sphere (b_0 = 1 fixes the sign)."""
    l = system.l
    u, w = _sphere_grid(l + 2, 2 * l + 4)
    r1, r2, s = sphere_to_rho(system, u)
    v = _unnormalized(system, lam, r1, r2, s)
    return 1.0 / math.sqrt(float(np.sum(w * v * v)))


def lame_basis(system, lam, rho1, rho2, signs=None):
    """Normalized product A psi(rho1) psi(rho2), with ambient signs of u_j
    restoring the odd factors u_j^{alpha_j}."""
    _band_check(system, rho1, rho2)
    return normalization(system, lam) * _unnormalized(system, lam, rho1, rho2, signs)


def lame_on_sphere(system, lam, R=1.0):
    """Callable on ambient points of S2(R) evaluating the normalized basis."""
    A = normalization(system, lam)

    def f(u):
        u = np.asarray(u, dtype=float) / R
        r1, r2, s = sphere_to_rho(system, u)
        return A * _unnormalized(system, lam, r1, r2, s)

    return f


def lame_on_plane(system, lam, R=1.0):
    """Callable on Beltrami points of S2(R)."""
    f = lame_on_sphere(system, lam, R)
    space = geo.S2(R)
    return lambda x: f(geo.beltrami_lift(space, np.asarray(x, dtype=float)))


# ---------------------------------------------------------------------------
# flat limits

def limit_recursion_row(which, t, l, alpha, mu):
    """Coefficients of C_{t+1}, C_t, C_{t-1} in the rescaled recursion used
    for the Cartesian limit (which = 1 expands about a1, which = 2 about a2)."""
    a1, a2, a3 = alpha
    asum = a1 + a2 + a3
    lower = (2 * t + asum - l - 2) * (2 * t + asum + l - 1) if t > 0 else 0.0
    if which == 1:
        return (8 * (t + 1) * (t + a1 + 0.5),
                mu - 2 * (2 * t + a1 + a3) ** 2 - (2 * t + a1 + a2) ** 2,
                lower)
    if which == 2:
        return (-8 * (t + 1) * (t + a2 + 0.5),
                mu + 2 * (2 * t + a2 + a3) ** 2 + (2 * t + a1 + a2) ** 2,
                -lower)
    raise ValueError("which must be 1 or 2")


def solve_limit_recursion(which, l, alpha, mu, t_max):
    """C_0 = 1, ..., C_{t_max} by forward recursion at finite l and mu."""
    C = [1.0]
    prev = 0.0
    for t in range(t_max):
        up, mid, low = limit_recursion_row(which, t, l, alpha, mu)
        nxt = -(mid * C[t] + low * prev) / up
        prev = C[t]
        C.append(nxt)
    return np.array(C)


def cartesian_limit_coeffs(t, alpha_j, k_j, R):
    """R^{2t} / (alpha_j + 1/2)_t * (-k_j^2/4)^t / t!."""
    if t < 0:
        raise ValueError("t must be non-negative")
    poch = 1.0
    for s in range(t):
        poch *= alpha_j + 0.5 + s
    return R ** (2 * t) / poch * (-k_j * k_j / 4) ** t / math.factorial(t)


def cartesian_limit_series(alpha_j, k_j, x, t_max=60):
    """sum_t C_t (x/R)^{2t} with the limiting coefficients; equals
    0F1(alpha_j + 1/2; -k_j^2 x^2 / 4)."""
    total = 0.0
    for t in range(t_max + 1):
        total += cartesian_limit_coeffs(t, alpha_j, k_j, 1.0) * x ** (2 * t)
    return total


def cartesian_limit_function(alpha_j, k_j, x):
    """x^{alpha_j} 0F1(alpha_j + 1/2; -k^2 x^2/4): cos(kx) or sin(kx)/k."""
    return x ** alpha_j * hyp_0f1(alpha_j + 0.5, -(k_j * x) ** 2 / 4).real


@dataclass(frozen=True)
class ODECoefficients:
    """Separated equation psi'' + p psi' + q psi = 0 sampled on a grid,
    compared against its flat limit psi'' + q_lim psi = 0."""
    s: np.ndarray
    p: np.ndarray
    q: np.ndarray
    q_limit: np.ndarray
    constant: float
    amplitude: float
    limit_constant: float
    limit_amplitude: float

    @property
    def error(self):
        return float(np.max(np.abs(self.p)) + np.max(np.abs(self.q - self.q_limit)))


def separated_ode(a, l, lam, g, dg, d2g, s):
    """Lame equation in algebraic form rewritten in the variable s with rho = g(s).

    Returns (p(s), q(s)) for psi_ss + p psi_s + q psi = 0."""
    rho, r1, r2 = g(s), dg(s), d2g(s)
    a1, a2, a3 = a
    P = (rho - a1) * (rho - a2) * (rho - a3)
    # the -g''/g' term cancels the log-singular part of the drift analytically
    # for the maps used below; evaluate it directly all the same
    p = -r2 / r1 + 0.5 * r1 * (1 / (rho - a1) + 1 / (rho - a2) + 1 / (rho - a3))
    q = r1 * r1 * (lam - l * (l + 1) * rho) / (4 * P)
    return p, q


def _fourier_pair(s, q, kind):
    if kind == "eta":
        basis = np.cos(2 * s)
    else:
        basis = np.cosh(2 * s)
    A = np.stack([np.ones_like(s), basis], -1)
    coef, *_ = np.linalg.lstsq(A, q, rcond=None)
    return float(coef[0]), float(coef[1])


def mathieu_ode_coeffs(R, a1, a2, D, k, variable="eta", mu=1.0, n=201):
    """Separated equation in eta (or xi) at finite R with a3 set by
    R^2/(a3 - a1) = D^2/(a2 - a1), l = kR and lam = mu a3.

    The limit is psi'' + {mu - c - (k^2 D^2/2) cos 2 eta} psi = 0 with
    c = (k^2 D^2/2)(a2 + a1)/(a2 - a1); in xi the bracket carries cosh 2 xi
    and the opposite overall sign (modified Mathieu equation)."""
    A = a2 - a1
    a3 = a1 + R * R * A / (D * D)
    l = k * R
    lam = mu * a3
    c = 0.5 * k * k * D * D * (a2 + a1) / A
    amp = 0.5 * k * k * D * D
    if variable == "eta":
        s = np.linspace(0.05, math.pi / 2 - 0.05, n)
        g = lambda v: a1 + A * np.cos(v) ** 2
        dg = lambda v: -A * np.sin(2 * v)
        d2g = lambda v: -2 * A * np.cos(2 * v)
        q_lim = mu - c - amp * np.cos(2 * s)
        lim = (mu - c, -amp)
    elif variable == "xi":
        s = np.linspace(0.05, min(1.5, 0.5 * math.acosh(R / D)), n)
        g = lambda v: a1 + A * np.cosh(v) ** 2
        dg = lambda v: A * np.sinh(2 * v)
        d2g = lambda v: 2 * A * np.cosh(2 * v)
        q_lim = -(mu - c) + amp * np.cosh(2 * s)
        lim = (-(mu - c), amp)
    else:
        raise ValueError("variable must be 'eta' or 'xi'")
    p, q = separated_ode((a1, a2, a3), l, lam, g, dg, d2g, s)
    const, ampl = _fourier_pair(s, q, variable)
    return ODECoefficients(s, p, q, q_lim, const, ampl, lim[0], lim[1])


def pcf_ode_limit(R, a, k, variable="u", mu=1.0, a2=0.0, n=201, window=(0.1, 2.0)):
    """Separated equation near the middle parameter with a3 - a2 = a2 - a1 = a,
    rho1 = a2 - a u^2/R, rho2 = a2 + a v^2/R, l = kR and
    lam = a2 l(l+1) + mu R a. Limit: psi'' + (k^2 s^2 +/- mu) psi = 0."""
    trip = (a2 - a, a2, a2 + a)
    l = k * R
    lam = a2 * l * (l + 1) + mu * R * a
    s = np.linspace(window[0], window[1], n)
    if variable == "u":
        g = lambda v: a2 - a * v * v / R
        dg = lambda v: -2 * a * v / R
        d2g = lambda v: np.full_like(v, -2 * a / R)
        q_lim = k * k * s * s + mu
    elif variable == "v":
        g = lambda v: a2 + a * v * v / R
        dg = lambda v: 2 * a * v / R
        d2g = lambda v: np.full_like(v, 2 * a / R)
        q_lim = k * k * s * s - mu
    else:
        raise ValueError("variable must be 'u' or 'v'")
    p, q = separated_ode(trip, l, lam, g, dg, d2g, s)
    A = np.stack([np.ones_like(s), s * s], -1)
    coef, *_ = np.linalg.lstsq(A, q, rcond=None)
    lim_const = mu if variable == "u" else -mu
    return ODECoefficients(s, p, q, q_lim, float(coef[0]), float(coef[1]), lim_const, k * k)
