"""Acceptance criteria. Each test prints one PASS/FAIL line; the lines are
also collected and repeated in the pytest terminal summary.

Run directly with ``python tests/test_acceptance.py`` for the bare report."""
import cmath
import math
import sys

import numpy as np

from contraction_lab import bases as B
from contraction_lab import contraction as C
from contraction_lab import geometry as geo
from contraction_lab import lame as L
from contraction_lab import liealg as lie

RESULTS = []


def report(n, ok, detail):
    line = "%s criterion %d: %s" % ("PASS" if ok else "FAIL", n, detail)
    RESULTS.append(line)
    print(line, flush=True)
    assert ok, line


def _rng(n):
    return np.random.default_rng(1000 + n)


def _f3(x):
    s = np.sum(x * np.arange(1, x.shape[1] + 1) * 0.3, axis=1)
    return np.sin(s) * np.exp(0.2 * x[:, 0]) + x[:, 1] ** 2 * np.cos(x[:, -1])


def _smooth(c):
    return lambda x: np.sin(c[0] * x[:, 0] + c[1] * x[:, 1]) * np.exp(c[2] * x[:, 1] + c[3] * x[:, 0])


def test_criterion_01_structure_constants():
    rng = _rng(1)
    reps = [lie.realization(k) for k in ("E2", "E11", "S2", "H2")]
    reps += [lie.contracted_family(n, 10.0) for n in lie.FAMILIES]
    worst_size, worst_order = 0.0, 0.0
    for rep in reps:
        x = rng.uniform(-1, 1, size=(20, rep.dim))
        if rep.name == "H2@H2->E11":
            x = x + np.array([4.0, 0.0])
        res = {h: max(float(np.max(lie.commutator_residual(rep, i, j, _f3, x, h)))
                      for i in range(3) for j in range(i + 1, 3)) for h in (2e-3, 1e-3)}
        worst_size = max(worst_size, res[1e-3])
        if res[2e-3] > 1e-11:
            worst_order = max(worst_order, abs(math.log2(res[2e-3] / res[1e-3]) - 2.0))
    report(1, worst_size < 1e-5 and worst_order < 0.2,
           "%d realizations, max residual %.2e at h=1e-3 (< 1e-5), max |order - 2| %.3f (< 0.2)"
           % (len(reps), worst_size, worst_order))


def test_criterion_02_commuting_pairs():
    rng = _rng(2)
    worst, count = 0.0, 0
    for kind in ("E2", "E11", "S2", "H2"):
        space = geo.Space(kind, 1.0) if kind in ("S2", "H2") else geo.Space(kind)
        for tgt in (["E2", "E11"] if kind == "H2" else [None]):
            rep = lie.realization(kind, 1.0, "beltrami", tgt or "E2") if space.curved else lie.realization(kind)
            for _ in range(10):
                if tgt == "E11":
                    x = np.stack([rng.uniform(1.05, 1.3, 2), rng.uniform(-0.2, 0.2, 2)], -1)
                else:
                    x = rng.uniform(-0.5, 0.5, size=(2, 2))
                f = _smooth(rng.uniform(-0.5, 0.5, 4))
                for Q in lie.catalog(kind):
                    r = lie.qop_laplace_commutator(space, rep, Q, f, x.astype(np.longdouble), 1e-3, tgt)
                    worst = max(worst, float(np.max(np.abs(r))))
                    count += 1
    report(2, worst < 1e-4, "%d operator/function pairs, max |[Q, Laplacian] f| %.2e (< 1e-4)" % (count, worst))


def test_criterion_03_helmholtz():
    rng = _rng(3)
    R = 2.0
    pts = rng.uniform(-0.5, 0.5, (20, 2)) * R
    checks = []
    for l in range(0, 6):
        for m in range(-l, l + 1):
            checks.append((geo.S2(R), B.sphere_basis(l, m, R), B.s2_eigenvalue(l, R), pts))
    flat_pts = np.column_stack([rng.uniform(1.5, 3, 20), rng.uniform(-1, 1, 20)])
    for kind, chart, qn in [("E2", "cartesian", dict(k1=1.2, k2=-0.7)), ("E2", "polar", dict(k=1.3, m=2)),
                            ("E11", "cartesian", dict(k0=1.5, k1=0.6)),
                            ("E11", "pseudo_polar", dict(k=1.1, lam=0.7))]:
        f = B.flat_basis_function(kind, chart, **qn)
        checks.append((f.space, f, f.eigenvalue, flat_pts))
    for rho, m, lam in [(0.5, 0, 0.3), (1.5, 1, 1.0), (2.5, 2, -1.5)]:
        checks.append((geo.H2(R), B.pseudospherical_basis(rho, m, R), B.h2_eigenvalue(rho, R), pts))
        checks.append((geo.H2(R), B.equidistant_basis(rho, lam, R), B.h2_eigenvalue(rho, R), pts))
    a = (0.3, 1.1, 2.0)
    for l in range(0, 5):
        for al in L.parity_classes(l):
            s = L.LameSystem(l, al, a)
            for lam_ in L.secular_eigenvalues(s):
                checks.append((geo.S2(R), L.lame_on_plane(s, lam_, R), B.s2_eigenvalue(l, R), pts))
    worst = max(B.helmholtz_residual(sp_, f, ev, p, 1e-3) for sp_, f, ev, p in checks)
    report(3, worst < 1e-5, "%d basis functions, max Helmholtz residual %.2e (< 1e-5)" % (len(checks), worst))


def test_criterion_04_lame_oracle():
    rng = _rng(4)
    worst, counts_ok = 0.0, True
    for l in range(1, 9):
        for _ in range(10):
            a = tuple(sorted(rng.uniform(-3, 3, 3)))
            q = sorted(L.q_from_lambda(v) for vals in L.all_eigenvalues(l, a).values() for v in vals)
            counts_ok &= len(q) == 2 * l + 1
            worst = max(worst, float(np.max(np.abs(np.asarray(q) - np.asarray(L.oracle_q_spectrum(l, a))))))
    report(4, counts_ok and worst < 1e-9,
           "l=1..8 x 10 triples, counts 2l+1: %s, max deviation %.2e (< 1e-9)" % (counts_ok, worst))


def test_criterion_05_wigner_halfpi():
    worst = 0.0
    for l in range(0, 21):
        for m2 in range(-l, l + 1):
            for m1 in range(-l, l + 1):
                v = [B.wigner_d_halfpi(l, m2, m1, meth) for meth in ("hyp3f2", "hyp2f1", "integral")]
                worst = max(worst, abs(v[0] - v[1]), abs(v[0] - v[2]), abs(v[1] - v[2]))
    report(5, worst < 1e-8, "l <= 20, all (m2, m1), max pairwise difference %.2e (< 1e-8)" % worst)


def test_criterion_06_interbasis():
    rng = _rng(6)
    worst = 0.0
    for _ in range(10):
        v = rng.normal(size=3)
        u = v / np.linalg.norm(v)
        for l in range(0, 7):
            worst = max(worst, B.interbasis_residual(l, u))
    report(6, worst < 1e-10, "l <= 6 at 10 points, with composition, max defect %.2e (< 1e-10)" % worst)


def test_criterion_07_plane_wave():
    pw = 0.0
    for kr in np.linspace(0, 10, 101):
        for d in np.linspace(0, 2 * np.pi, 64, endpoint=False):
            pw = max(pw, abs(B.plane_wave_partial(1.0, kr, d, 50) - cmath.exp(1j * kr * math.cos(d))))
    from scipy.special import jv
    quad = 0.0
    for m in range(0, 6):
        for kr in np.linspace(0, 10, 21):
            quad = max(quad, abs(B.bessel_via_quadrature(m, 1.0, kr) - jv(m, kr)))
    report(7, pw < 1e-9 and quad < 1e-10,
           "partial sum M=50 sup error %.2e (< 1e-9); quadrature J_m error %.2e (< 1e-10)" % (pw, quad))


def test_criterion_08_registry():
    reps = C.run_all()
    failed = [r.id for r in reps if not r.passed]
    case = C.get_case("S2.spherical→E2.polar")
    pts = np.array([[1.0, 0.0], [0.0, 1.0], [math.sqrt(0.5), math.sqrt(0.5)]])
    ratios = []
    for m in (0, 1, 2):
        p = dict(case.params, k=1.0, m_values=(m,))
        e200 = float(np.max(case.error(pts, 200.0, p)[0]))
        e400 = float(np.max(case.error(pts, 400.0, p)[0]))
        ratios.append(e200 / e400)
    ok = len(reps) >= 20 and not failed and min(ratios) >= 1.8
    report(8, ok, "%d cases, failed: %s; Bessel-limit error ratio R=200/R=400 for m=0,1,2: %s (>= 1.8)"
           % (len(reps), failed or "none", ", ".join("%.3f" % r for r in ratios)))


def test_criterion_09_roundtrip():
    rng = _rng(9)
    worst_rt, worst_c, n = 0.0, 0.0, 0
    for chart in geo.default_charts():
        for R in (1.0, 7.0):
            space = geo.Space(chart.space, R) if chart.space in ("S2", "H2") else geo.Space(chart.space)
            err, res = geo.roundtrip_error(space, chart, rng, 100)
            worst_rt = max(worst_rt, err)
            worst_c = max(worst_c, res / max(1.0, R * R))
            n += 1
    report(9, worst_rt < 1e-12 and worst_c < 1e-12,
           "%d chart/radius pairs, roundtrip %.2e (< 1e-12), relative constraint residual %.2e (< 1e-12)"
           % (n, worst_rt, worst_c))


def _random_operators(kind, rng, n=50):
    ops = [Q.matrix for Q in lie.catalog(kind)]
    while len(ops) < n:
        A = rng.normal(size=(3, 3))
        ops.append(0.5 * (A + A.T))
    return ops[:n]


def test_criterion_10_classification_invariance():
    rng = _rng(10)
    changed, total = 0, 0
    for kind, aut in (("E2", lie.e2_automorphism), ("E11", lie.e11_automorphism)):
        for A in _random_operators(kind, rng):
            c0 = lie.classify(kind, A)
            for _ in range(100):
                M = aut(rng.uniform(-1.5, 1.5), rng.uniform(-2, 2, 2), bool(rng.integers(2)))
                Bm = lie.transform_operator(A, M, rng.uniform(0.5, 2) * rng.choice([-1, 1]), rng.normal(),
                                            lie.CASIMIR[kind])
                changed += lie.classify(kind, Bm).label != c0.label
                total += 1
    report(10, changed == 0, "%d conjugations of 100 operators, label changes: %d" % (total, changed))


def test_criterion_11_ode_limits():
    seqs = {}
    for var in ("eta", "xi"):
        seqs["Mathieu " + var] = [L.mathieu_ode_coeffs(R, 0.0, 1.0, 2.0, 1.0, var).error for R in (10, 100, 1000)]
    for var in ("u", "v"):
        for mu in (1.0, 0.0):
            seqs["PCF %s mu=%g" % (var, mu)] = [L.pcf_ode_limit(R, 1.0, 1.0, var, mu).error for R in (10, 100, 1000)]
    ok = all(e[0] > e[1] > e[2] for e in seqs.values())
    detail = "; ".join("%s %s" % (k, " > ".join("%.1e" % v for v in e)) for k, e in seqs.items())
    report(11, ok, "errors along R = 10, 100, 1000: " + detail)


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
