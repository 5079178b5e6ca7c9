"""Generators as vector fields, finite-difference commutator checks, second
order operators and their classification on E2 and E11.

A generator is a vector field v(x) acting as v . grad. Fields map a batch of
points of shape (n, d) to components of the same shape and keep the input
dtype, so every check here also runs in np.longdouble.
"""

from dataclasses import dataclass
import math

import numpy as np

from .geometry import laplace_beltrami_apply

TOL = 1e-10


def _stack(*cols):
    return np.stack(cols, axis=-1)


def _const(vals):
    def field(x):
        out = np.zeros_like(x)
        for j, v in enumerate(vals):
            out[:, j] = v
        return out
    return field


# ---------------------------------------------------------------------------
# vector fields

def _e2_fields():
    return (lambda x: _stack(x[:, 1], -x[:, 0]), _const((1, 0)), _const((0, 1)))


def _e11_fields():
    return (lambda x: _stack(x[:, 1], x[:, 0]), _const((1, 0)), _const((0, 1)))


def _s2_fields():
    return (lambda u: _stack(0 * u[:, 0], u[:, 2], -u[:, 1]),
            lambda u: _stack(-u[:, 2], 0 * u[:, 0], u[:, 0]),
            lambda u: _stack(u[:, 1], -u[:, 0], 0 * u[:, 0]))


def _h2_fields():
    return (lambda u: _stack(-u[:, 2], 0 * u[:, 0], -u[:, 0]),
            lambda u: _stack(-u[:, 1], -u[:, 0], 0 * u[:, 0]),
            lambda u: _stack(0 * u[:, 0], u[:, 2], -u[:, 1]))


def _rotation(x):
    return _stack(x[:, 1], -x[:, 0])


def _pi(i, kappa, eta, R):
    """d_i + kappa * eta_i * x_i (x . d) / R^2 in flat coordinates."""
    R2 = R * R

    def field(x):
        out = kappa * eta[i] * x[:, i:i + 1] * x / R2
        out[:, i] += 1
        return out
    return field


def _scaled(field, s):
    return lambda x: s * field(x)


# structure constants: [X_i, X_j] = sum_k c[i, j, k] X_k

def _table(entries):
    c = np.zeros((3, 3, 3))
    for (i, j), vec in entries.items():
        c[i, j] = vec
        c[j, i] = -np.asarray(vec, dtype=float)
    return c


STRUCTURE = {
    # (L, P1, P2)
    "E2": _table({(0, 1): (0, 0, 1), (0, 2): (0, -1, 0), (1, 2): (0, 0, 0)}),
    # (K, P0, P1)
    "E11": _table({(0, 1): (0, 0, -1), (0, 2): (0, -1, 0), (1, 2): (0, 0, 0)}),
    # (L1, L2, L3)
    "S2": _table({(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (2, 0): (0, 1, 0)}),
    # (K1, K2, L3), as realized by the vector fields below
    "H2": _table({(0, 1): (0, 0, 1), (2, 0): (0, -1, 0), (1, 2): (-1, 0, 0)}),
}

NAMES = {
    "E2": ("L", "P1", "P2"),
    "E11": ("K", "P0", "P1"),
    "S2": ("L1", "L2", "L3"),
    "H2": ("K1", "K2", "L3"),
}

# Casimir operators as coefficient matrices over the generator basis
CASIMIR = {
    "E2": np.diag([0.0, 1.0, 1.0]),
    "E11": np.diag([0.0, 1.0, -1.0]),
    "S2": np.eye(3),
    "H2": np.diag([1.0, 1.0, -1.0]),
}


@dataclass(frozen=True)
class Realization:
    """Three generators as vector fields together with their structure constants."""
    name: str
    names: tuple
    fields: tuple
    structure: np.ndarray
    dim: int

    def __len__(self):
        return len(self.fields)


def realization(kind, R=None, coords="ambient", target="E2"):
    """Vector-field realization of the isometry algebra of a space.

    coords="ambient" uses the embedding coordinates; coords="beltrami" pushes
    the S2 or H2 generators forward to Beltrami coordinates of radius R (for
    H2 onto the E2 disc or the E11 chart selected by target)."""
    if kind in ("E2", "E11"):
        fields = _e2_fields() if kind == "E2" else _e11_fields()
        return Realization(kind, NAMES[kind], fields, STRUCTURE[kind], 2)
    if coords == "ambient":
        fields = _s2_fields() if kind == "S2" else _h2_fields()
        return Realization(kind, NAMES[kind], fields, STRUCTURE[kind], 3)
    if coords != "beltrami":
        raise ValueError("coords must be 'ambient' or 'beltrami'")
    if R is None or not R > 0:
        raise ValueError("Beltrami realization needs a positive radius")
    fam = contracted_family(kind + "->" + ("E2" if kind == "S2" else target), R)
    p1, p2, rot = fam.fields
    if kind == "S2":
        fields = (_scaled(p2, R), _scaled(p1, -R), rot)
    elif target == "E2":
        fields = (_scaled(p2, -R), _scaled(p1, -R), rot)
    else:
        fields = (_scaled(p1, -R), _scaled(rot, -1.0), _scaled(p2, R))
    return Realization("%s@%s" % (kind, fam.name), NAMES[kind], fields, STRUCTURE[kind], 2)


FAMILIES = ("S2->E2", "H2->E2", "H2->E11")


def contracted_family(name, R):
    """R-dependent generators in Beltrami coordinates that contract to a flat algebra.

    S2->E2:  (pi1, pi2, L3),  [pi1, pi2] = L3/R^2,  [L3, pi1] = pi2, [L3, pi2] = -pi1
    H2->E2:  same with [pi1, pi2] = -L3/R^2
    H2->E11: (pi1, pi2, K),   [pi1, pi2] = K/R^2,   [K, pi1] = -pi2, [K, pi2] = -pi1
    """
    R2 = float(R) ** 2
    if name == "S2->E2":
        fields = (_pi(0, 1, (1, 1), R), _pi(1, 1, (1, 1), R), _rotation)
        c = _table({(0, 1): (0, 0, 1 / R2), (2, 0): (0, 1, 0), (2, 1): (-1, 0, 0)})
        names = ("pi1", "pi2", "L3")
    elif name == "H2->E2":
        fields = (_pi(0, -1, (1, 1), R), _pi(1, -1, (1, 1), R), _rotation)
        c = _table({(0, 1): (0, 0, -1 / R2), (2, 0): (0, 1, 0), (2, 1): (-1, 0, 0)})
        names = ("pi1", "pi2", "L3")
    elif name == "H2->E11":
        fields = (_pi(0, -1, (1, -1), R), _pi(1, -1, (1, -1), R), _e11_fields()[0])
        c = _table({(0, 1): (0, 0, 1 / R2), (2, 0): (0, -1, 0), (2, 1): (-1, 0, 0)})
        names = ("pi1", "pi2", "K")
    else:
        raise ValueError("unknown contracted family %r; valid: %s" % (name, ", ".join(FAMILIES)))
    return Realization(name, names, fields, c, 2)


def flat_limit(name):
    """The flat algebra a contracted family tends to, with matching generator order."""
    if name == "H2->E11":
        fields = _e11_fields()
        return Realization("E11", ("P0", "P1", "K"), (fields[1], fields[2], fields[0]), None, 2)
    fields = _e2_fields()
    return Realization("E2", ("P1", "P2", "L"), (fields[1], fields[2], fields[0]), None, 2)


# ---------------------------------------------------------------------------
# finite-difference actions

def _as_batch(p):
    p = np.asarray(p)
    if p.dtype.kind not in "fc":
        p = p.astype(float)
    return p[None, :] if p.ndim == 1 else p, p.ndim == 1


def field_apply(field, f, x, h):
    """Central directional difference (f(x + h v) - f(x - h v)) / 2h, v = field(x)."""
    v = field(x)
    n = x.shape[0]
    vals = np.asarray(f(np.concatenate([x + h * v, x - h * v], axis=0)))
    return (vals[:n] - vals[n:]) / (2 * h)


def _lift(fields, f, h):
    """Functions g_i = X_i f, ready for nesting."""
    return [lambda y, fld=fld: field_apply(fld, f, y, h) for fld in fields]


def generator_apply(rep, index, f, p, h=1e-4):
    """Action of generator `index` of a realization on f at point(s) p."""
    x, single = _as_batch(p)
    out = field_apply(rep.fields[index], f, x, h)
    return out[0] if single else out


def commutator_apply(rep, i, j, f, p, h=1e-4):
    """[X_i, X_j] f by nested differences."""
    x, single = _as_batch(p)
    Xi, Xj = rep.fields[i], rep.fields[j]
    out = (field_apply(Xi, lambda y: field_apply(Xj, f, y, h), x, h)
           - field_apply(Xj, lambda y: field_apply(Xi, f, y, h), x, h))
    return out[0] if single else out


def commutator_residual(rep, i, j, f, p, h=1e-4):
    """|([X_i, X_j] - sum_k c_ijk X_k) f| at p."""
    x, single = _as_batch(p)
    lhs = commutator_apply(rep, i, j, f, x, h)
    rhs = np.zeros_like(lhs)
    for k in range(len(rep.fields)):
        c = rep.structure[i, j, k]
        if c != 0:
            rhs = rhs + c * field_apply(rep.fields[k], f, x, h)
    out = np.abs(lhs - rhs)
    return out[0] if single else out


def jacobi_defect(structure):
    """Largest violation of the Jacobi identity for a structure-constant table."""
    c = np.asarray(structure)
    n = c.shape[0]
    worst = 0.0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                # [[X_i, X_j], X_k] + cyclic
                t = (np.einsum("l,lm->m", c[i, j], c[:, k])
                     + np.einsum("l,lm->m", c[j, k], c[:, i])
                     + np.einsum("l,lm->m", c[k, i], c[:, j]))
                worst = max(worst, float(np.max(np.abs(t))))
    return worst


# ---------------------------------------------------------------------------
# second-order operators

@dataclass(frozen=True)
class QuadraticOperator:
    """Q = sum_ik A_ik X_i X_k over an ordered generator basis of `kind`."""
    kind: str
    A: tuple
    name: str = ""

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        if A.shape != (3, 3):
            raise ValueError("coefficient matrix must be 3x3")
        if not np.allclose(A, A.T, atol=0, rtol=0):
            raise ValueError("coefficient matrix must be symmetric")
        object.__setattr__(self, "A", tuple(map(tuple, A)))

    @property
    def matrix(self):
        return np.array(self.A)

    @classmethod
    def from_upper(cls, kind, six, name=""):
        """Build from the upper triangle (A00, A01, A02, A11, A12, A22)."""
        a00, a01, a02, a11, a12, a22 = map(float, six)
        return cls(kind, ((a00, a01, a02), (a01, a11, a12), (a02, a12, a22)), name)


def op(kind, terms, name=""):
    """Quadratic operator from a dict of products: {(i, k): coefficient}.

    (i, i) adds coefficient * X_i^2; (i, k) with i != k adds the
    anticommutator coefficient * {X_i, X_k}."""
    A = np.zeros((3, 3))
    for (i, k), c in terms.items():
        if i == k:
            A[i, i] += c
        else:
            A[i, k] += c
            A[k, i] += c
    return QuadraticOperator(kind, A, name)


def qop_apply(rep, Q, f, p, h=1e-4):
    """sum_ik A_ik X_i X_k f by nested central differences."""
    x, single = _as_batch(p)
    A = Q.matrix if isinstance(Q, QuadraticOperator) else np.asarray(Q, dtype=float)
    inner = _lift(rep.fields, f, h)
    out = np.zeros(x.shape[0], dtype=x.dtype)
    for i in range(3):
        for k in range(3):
            if A[i, k] != 0:
                out = out + A[i, k] * field_apply(rep.fields[i], inner[k], x, h)
    return out[0] if single else out


def qop_laplace_commutator(space, rep, Q, f, p, h=1e-3, target=None):
    """[Q, Delta] f at p; Q acts through rep in the coordinates Delta uses."""
    x, single = _as_batch(p)
    lap = lambda y: laplace_beltrami_apply(space, f, y, h=h, target=target)
    qf = lambda y: qop_apply(rep, Q, f, y, h)
    out = qop_apply(rep, Q, lap, x, h) - laplace_beltrami_apply(space, qf, x, h=h, target=target)
    return out[0] if single else out


# ---------------------------------------------------------------------------
# invariants and classification

@dataclass(frozen=True)
class CanonicalClass:
    label: str
    param: float = None
    param_name: str = None
    margin: float = math.inf
    separable: bool = True
    detail: str = ""


def _modulo_casimir(A, C):
    """Component of A orthogonal to C in the Frobenius inner product."""
    return A - np.sum(A * C) / np.sum(C * C) * C


def _scale(A, C):
    return float(np.linalg.norm(_modulo_casimir(A, C)))


def e2_invariants(Q):
    """(I1, I2) of an E2 operator over (L, P1, P2)."""
    A = Q.matrix if isinstance(Q, QuadraticOperator) else np.asarray(Q, dtype=float)
    a, b1, b2 = A[0, 0], A[0, 1], A[0, 2]
    c1, c2, c3 = A[1, 1], A[2, 2], A[1, 2]
    I2 = math.hypot(a * (c1 - c2) - (b1 * b1 - b2 * b2), 2 * (a * c3 - b1 * b2))
    return float(a), float(I2)


class TrivialOperator(ValueError):
    """Q is proportional to the Casimir operator (modulo nothing else)."""


def classify_e2(Q, tol=TOL):
    A = Q.matrix if isinstance(Q, QuadraticOperator) else np.asarray(Q, dtype=float)
    s = _scale(A, CASIMIR["E2"])
    if s <= tol * max(1.0, float(np.linalg.norm(A))):
        return CanonicalClass("trivial", margin=s, separable=False, detail="multiple of the Casimir")
    I1, I2 = e2_invariants(A)
    m1, m2 = abs(I1) / s, I2 / (s * s)
    margin = min(m1, m2)
    if m1 <= tol and m2 <= tol:
        return CanonicalClass("cartesian", margin=max(m1, m2), detail="Q ~ P1^2")
    if m1 <= tol:
        return CanonicalClass("parabolic", margin=m1, detail="Q ~ {L, P2}")
    if m2 <= tol:
        return CanonicalClass("polar", margin=m2, detail="Q ~ L^2")
    return CanonicalClass("elliptic", math.sqrt(I2) / abs(I1), "D", margin, detail="Q ~ L^2 - D^2 P2^2")


_J = np.diag([1.0, -1.0])


def _jordan_type(X, tol):
    """Eigenstructure of a 2x2 J-symmetric matrix: ('scalar'|'real'|'complex'|'defective', ...)."""
    tr = X[0, 0] + X[1, 1]
    p = tr / 2
    Y = X - p * np.eye(2)
    disc = -np.linalg.det(Y)  # eigenvalues of Y are +-sqrt(disc)
    nrm = max(float(np.linalg.norm(X)), 1e-300)
    if np.linalg.norm(Y) <= tol * nrm:
        return "scalar", p, 0.0, float(np.linalg.norm(Y)) / nrm
    m = abs(disc) / nrm ** 2
    if m <= tol:
        return "defective", p, 0.0, m
    if disc > 0:
        return "real", p, math.sqrt(disc), m
    return "complex", p, math.sqrt(-disc), m


def classify_e11(Q, tol=TOL):
    """Canonical form Q1..Q11 of an E11 operator over (K, P0, P1)."""
    A = Q.matrix if isinstance(Q, QuadraticOperator) else np.asarray(Q, dtype=float)
    s = _scale(A, CASIMIR["E11"])
    if s <= tol * max(1.0, float(np.linalg.norm(A))):
        return CanonicalClass("trivial", margin=s, separable=False, detail="multiple of the Casimir")
    A = A / s
    a = A[0, 0]
    beta = A[0, 1:].copy()
    C = A[1:, 1:].copy()
    if abs(a) > tol:
        beta = beta / a
        C = C / a
        X = _J @ (C - np.outer(beta, beta))
        kind, p, q, m = _jordan_type(X, tol)
        margin = min(abs(a), m)
        if kind == "scalar":
            return CanonicalClass("Q2", margin=margin, detail="K^2")
        if kind == "complex":
            return CanonicalClass("Q7", math.sqrt(2 * q), "l", margin, detail="K^2 - l^2 P0 P1")
        if kind == "defective":
            S = C - np.outer(beta, beta) - p * _J
            eps = np.sign(np.trace(S))
            label = "Q10" if eps > 0 else "Q11"
            sign = "+" if eps > 0 else "-"
            return CanonicalClass(label, margin=margin, detail="K^2 %s (P0 + P1)^2" % sign)
        w, V = np.linalg.eig(X)
        w = w.real
        V = V.real
        norms = np.einsum("ij,ik,kj->j", V, _J, V)
        t = int(np.argmax(norms))
        p_t, p_s = w[t], w[1 - t]
        gap = p_s - p_t
        if gap > 0:
            return CanonicalClass("Q9", math.sqrt(gap), "d", margin, detail="K^2 - d^2 P1^2")
        return CanonicalClass("Q8", math.sqrt(-gap), "D", margin, detail="K^2 + D^2 P1^2")
    nb = float(np.linalg.norm(beta))
    if nb > tol:
        b0, b1 = abs(beta[0]), abs(beta[1])
        gap = (b0 - b1) / nb
        margin = min(nb, abs(gap))
        if gap > tol:
            return CanonicalClass("Q4", margin=margin, detail="{K, P0}")
        if gap < -tol:
            return CanonicalClass("Q3", margin=margin, detail="{K, P1}")
        v = np.array([beta[1], -beta[0]]) / nb
        w = float(v @ C @ v)
        if abs(w) <= tol:
            return CanonicalClass("Q5", margin=min(abs(gap), abs(w)), separable=False,
                                  detail="{K, P0 + P1}; no separable coordinates")
        return CanonicalClass("Q6", margin=min(abs(gap), abs(w)), detail="{K, P0 + P1} + (P0 - P1)^2")
    kind, p, q, m = _jordan_type(_J @ C, tol)
    margin = min(nb if nb > 0 else math.inf, m)
    if kind == "scalar":
        return CanonicalClass("trivial", margin=m, separable=False, detail="multiple of the Casimir")
    if kind == "real":
        return CanonicalClass("Q1(1,0)", margin=margin, detail="P0^2 + P1^2")
    if kind == "complex":
        return CanonicalClass("Q1(0,1)", margin=margin, detail="2 P0 P1")
    return CanonicalClass("Q1(1,1)", margin=margin, detail="(P0 + P1)^2")


def classify(kind, Q, tol=TOL):
    if kind == "E2":
        return classify_e2(Q, tol)
    if kind == "E11":
        return classify_e11(Q, tol)
    raise ValueError("classification is available for E2 and E11 only")


# group actions used for invariance checks

def e2_automorphism(angle, xi, reflect=False):
    """Matrix M of a motion acting on (L, P1, P2): X'_j = sum_i M_ij X_i.

    The motion is a rotation by `angle` followed by a translation by xi."""
    c, s = math.cos(angle), math.sin(angle)
    M = np.eye(3)
    M[1:, 1:] = [[c, -s], [s, c]]
    if reflect:
        # x2 -> -x2 sends L -> -L, P2 -> -P2
        M = M @ np.diag([-1.0, 1.0, -1.0])
    T = np.eye(3)
    # exp(ad(xi . P)) L = L - xi1 P2 + xi2 P1
    T[1, 0] = xi[1]
    T[2, 0] = -xi[0]
    return T @ M


def e11_automorphism(rapidity, xi, reflect=False):
    """Matrix M of a Poincare motion acting on (K, P0, P1)."""
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    M = np.eye(3)
    M[1:, 1:] = [[ch, sh], [sh, ch]]
    if reflect:
        # x -> -x sends K -> -K, P1 -> -P1
        M = M @ np.diag([-1.0, 1.0, -1.0])
    T = np.eye(3)
    # exp(ad(xi . P)) K = K + xi1 P0 + xi0 P1
    T[1, 0] = xi[1]
    T[2, 0] = xi[0]
    return T @ M


def transform_operator(A, M, lam=1.0, mu=0.0, casimir=None):
    """lam * M A M^T + mu * C: Q in the transformed basis, rescaled and Casimir shifted."""
    A = np.asarray(A, dtype=float)
    out = lam * (M @ A @ M.T)
    if casimir is not None:
        out = out + mu * casimir
    return 0.5 * (out + out.T)


def automorphism_defect(M, structure):
    """max |[X'_i, X'_j] - c_ijk X'_k| for X'_j = sum_i M_ij X_i."""
    c = np.asarray(structure)
    # [X'_i, X'_j] = M_ai M_bj c_abk X_k ; c_ijl X'_l = c_ijl M_kl X_k
    lhs = np.einsum("ai,bj,abk->ijk", M, M, c)
    rhs = np.einsum("ijl,kl->ijk", c, M)
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------------------
# characteristic equation

def inverse_metric(space, x, target=None):
    """Contravariant metric g^{ij} in flat or Beltrami coordinates, shape (n, 2, 2)."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    n = x.shape[0]
    if space.kind == "E2":
        return np.broadcast_to(np.eye(2), (n, 2, 2)).copy()
    if space.kind == "E11":
        return np.broadcast_to(_J, (n, 2, 2)).copy()
    R2 = space.radius ** 2
    kappa = 1.0 if space.kind == "S2" else -1.0
    eta = _J if (space.kind == "H2" and target == "E11") else np.eye(2)
    q = np.einsum("ni,ij,nj->n", x, eta, x) / R2
    g = eta[None] + kappa * np.einsum("ni,nj->nij", x, x) / R2
    return (1 + kappa * q)[:, None, None] * g


def principal_symbol(rep, Q, x):
    """a^{ij} = sum_kl A_kl v_k^i v_l^j at points x."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    A = Q.matrix if isinstance(Q, QuadraticOperator) else np.asarray(Q, dtype=float)
    V = np.stack([fld(x) for fld in rep.fields], axis=1)   # (n, 3, 2)
    return np.einsum("kl,nki,nlj->nij", A, V, V)


@dataclass(frozen=True)
class CharacteristicRoots:
    roots: tuple
    equal: bool
    complex: bool


def characteristic_roots(space, Q, p, target=None, R_rep=None, tol=1e-10):
    """Roots rho of det(a - rho g) = 0 at the point p (flat or Beltrami coordinates)."""
    if space.curved:
        rep = realization(space.kind, space.radius, "beltrami", target or "E2")
    else:
        rep = realization(space.kind)
    p = np.asarray(p, dtype=float)
    a = principal_symbol(rep, Q, p)[0]
    g = inverse_metric(space, p, target)[0]
    # det(a - rho g) = det(g) rho^2 - (a00 g11 + a11 g00 - 2 a01 g01) rho + det(a)
    c2 = np.linalg.det(g)
    c1 = -(a[0, 0] * g[1, 1] + a[1, 1] * g[0, 0] - 2 * a[0, 1] * g[0, 1])
    c0 = np.linalg.det(a)
    r = np.roots([c2, c1, c0]).astype(complex)
    if r.size == 1:
        r = np.array([r[0], r[0]])
    r = sorted(r, key=lambda z: (z.real, z.imag))
    scale = max(1.0, max(abs(z) for z in r))
    is_complex = any(abs(z.imag) > tol * scale for z in r)
    equal = abs(r[0] - r[1]) <= tol * scale
    if not is_complex:
        r = [complex(z.real, 0.0) for z in r]
    return CharacteristicRoots(tuple(r), bool(equal), bool(is_complex))


# ---------------------------------------------------------------------------
# contraction of generators

def contracted_generator_residual(name, index, f, p, R, h=1e-4):
    """|pi_index f(p) - P_index f(p)| between a contracted family and its flat limit."""
    fam = contracted_family(name, R)
    flat = flat_limit(name)
    x, single = _as_batch(p)
    out = np.abs(field_apply(fam.fields[index], f, x, h) - field_apply(flat.fields[index], f, x, h))
    return out[0] if single else out


# ---------------------------------------------------------------------------
# catalogs of canonical operators

def e2_catalog(D=1.2):
    return [
        op("E2", {(1, 1): 1.0}, "cartesian: P1^2"),
        op("E2", {(1, 1): 1.0, (2, 2): -1.0}, "cartesian: P1^2 - P2^2"),
        op("E2", {(0, 0): 1.0}, "polar: L^2"),
        op("E2", {(0, 2): 1.0}, "parabolic: {L, P2}"),
        op("E2", {(0, 1): 1.0}, "parabolic: {L, P1}"),
        op("E2", {(0, 0): 1.0, (2, 2): -D * D}, "elliptic: L^2 - D^2 P2^2"),
    ]


def e11_catalog(l=1.5, D=1.2, d=0.8):
    return [
        op("E11", {(1, 1): 1.0, (2, 2): 1.0}, "Q1(1,0)"),
        op("E11", {(1, 1): 1.0, (2, 2): 1.0, (1, 2): 1.0}, "Q1(1,1)"),
        op("E11", {(1, 2): 1.0}, "Q1(0,1)"),
        op("E11", {(0, 0): 1.0}, "Q2"),
        op("E11", {(0, 2): 1.0}, "Q3"),
        op("E11", {(0, 1): 1.0}, "Q4"),
        op("E11", {(0, 1): 1.0, (0, 2): 1.0}, "Q5"),
        op("E11", {(0, 1): 1.0, (0, 2): 1.0, (1, 1): 1.0, (2, 2): 1.0, (1, 2): -1.0}, "Q6"),
        op("E11", {(0, 0): 1.0, (1, 2): -l * l / 2}, "Q7"),
        op("E11", {(0, 0): 1.0, (2, 2): D * D}, "Q8"),
        op("E11", {(0, 0): 1.0, (2, 2): -d * d}, "Q9"),
        op("E11", {(0, 0): 1.0, (1, 1): 1.0, (2, 2): 1.0, (1, 2): 1.0}, "Q10"),
        op("E11", {(0, 0): 1.0, (1, 1): -1.0, (2, 2): -1.0, (1, 2): -1.0}, "Q11"),
    ]


def s2_catalog(a=(0.3, 1.1, 2.0), k=0.6):
    kp2 = 1 - k * k
    return [
        op("S2", {(2, 2): 1.0}, "spherical: L3^2"),
        op("S2", {(0, 0): 1.0}, "spherical': L1^2"),
        op("S2", {(1, 1): 1.0}, "spherical'': L2^2"),
        op("S2", {(0, 0): a[0], (1, 1): a[1], (2, 2): a[2]}, "elliptic: a1 L1^2 + a2 L2^2 + a3 L3^2"),
        op("S2", {(2, 2): kp2, (0, 0): -k * k}, "elliptic: k'^2 L3^2 - k^2 L1^2"),
    ]


def h2_catalog(f=0.7, alpha=0.6):
    sf2 = math.sinh(f) ** 2
    sa2 = math.sin(alpha) ** 2
    return [
        op("H2", {(2, 2): 1.0}, "pseudo-spherical: L3^2"),
        op("H2", {(0, 0): 1.0}, "equidistant: K1^2"),
        op("H2", {(0, 0): 1.0, (2, 2): 1.0, (0, 2): 1.0}, "horocyclic: (K1 + L3)^2"),
        op("H2", {(2, 2): 1.0, (1, 1): sf2}, "elliptic: L3^2 + sinh^2 f K2^2"),
        op("H2", {(1, 1): 1.0, (2, 2): -sa2}, "hyperbolic: K2^2 - sin^2 a L3^2"),
        op("H2", {(0, 2): -1.0}, "semi-hyperbolic: -{K1, L3}"),
        op("H2", {(0, 0): 1.0, (2, 2): 1.0, (0, 2): 1.0, (1, 1): 1.0}, "elliptic-parabolic: (K1 + L3)^2 + K2^2"),
        op("H2", {(0, 0): 1.0, (2, 2): 1.0, (0, 2): 1.0, (1, 1): -1.0}, "hyperbolic-parabolic: (K1 + L3)^2 - K2^2"),
        op("H2", {(0, 1): 1.0, (1, 2): 1.0}, "semicircular-parabolic: {K1, K2} + {K2, L3}"),
    ]


def catalog(kind):
    return {"E2": e2_catalog, "E11": e11_catalog, "S2": s2_catalog, "H2": h2_catalog}[kind]()
