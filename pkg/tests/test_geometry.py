import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from contraction_lab import geometry as geo


def _space_for(chart, R):
    return geo.Space(chart.space, R) if chart.space in ("S2", "H2") else geo.Space(chart.space)


@pytest.mark.parametrize("chart", geo.default_charts(), ids=lambda c: "%s.%s%s" % (c.space, c.name, c.params or ""))
@pytest.mark.parametrize("R", [1.0, 7.0])
def test_roundtrip_and_constraint(chart, R, rng):
    space = _space_for(chart, R)
    err, res = geo.roundtrip_error(space, chart, rng, 100)
    assert err < 1e-12
    assert res < 1e-12 * max(1.0, R * R)


def test_space_validation():
    with pytest.raises(ValueError):
        geo.Space("S3", 1.0)
    with pytest.raises(ValueError):
        geo.Space("S2", -1.0)
    with pytest.raises(ValueError):
        geo.Space("E2", 1.0)


def test_unknown_chart_lists_valid():
    with pytest.raises(geo.DomainError, match="spherical"):
        geo.make_chart("S2", "nope")


def test_spherical_point_trivial():
    a = geo.to_ambient(geo.S2(2.0), geo.make_chart("S2", "spherical"), [math.pi / 2, 0.0])
    assert np.allclose(a, [2.0, 0.0, 0.0], atol=1e-15)


def test_coverage_violation_pseudo_polar():
    with pytest.raises(geo.GeometryError):
        geo.from_ambient(geo.E11(), geo.make_chart("E11", "pseudo_polar"), [0.0, 1.0])


def test_off_surface_rejected():
    with pytest.raises(geo.ConstraintError):
        geo.from_ambient(geo.S2(1.0), geo.make_chart("S2", "spherical"), [1.0, 1.0, 0.0])
    with pytest.raises(geo.ConstraintError):
        geo.from_ambient(geo.H2(1.0), geo.make_chart("H2", "pseudo_spherical"), [-1.0, 0.0, 0.0])


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.5, 20))
def test_beltrami_roundtrip_s2(x, y, R):
    space = geo.S2(R)
    a = geo.beltrami_lift(space, np.array([[x, y]]))
    assert geo.constraint_residual(space, a)[0] < 1e-12 * R * R
    assert np.allclose(geo.beltrami_project(space, a), [[x, y]], atol=1e-12 * max(1, R))


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 0.95), st.floats(0, 2 * math.pi), st.floats(0.5, 20))
def test_beltrami_roundtrip_h2_disc(frac, ang, R):
    space = geo.H2(R)
    x = np.array([[frac * R * math.cos(ang), frac * R * math.sin(ang)]])
    a = geo.beltrami_lift(space, x, "E2")
    assert a[0, 0] > 0
    assert np.allclose(geo.beltrami_project(space, a, "E2"), x, atol=1e-10 * R)


def test_beltrami_e11_chart_and_singularities():
    space = geo.H2(2.0)
    x = np.array([[3.0, 1.0]])
    a = geo.beltrami_lift(space, x, "E11")
    assert np.allclose(geo.beltrami_project(space, a, "E11"), x)
    with pytest.raises(geo.SingularityError):
        geo.beltrami_lift(space, np.array([[1.0, 0.5]]), "E11")
    with pytest.raises(geo.SingularityError):
        geo.beltrami_lift(space, np.array([[2.5, 0.0]]), "E2")
    with pytest.raises(ValueError):
        geo.beltrami_project(geo.S2(1.0), [[0, 0, 1.0]], "E11")


def _sympy_laplacian(kind, R, target, f_expr, point):
    """Laplace-Beltrami operator from the pulled-back metric, done symbolically."""
    x, y = sp.symbols("x y", real=True)
    Rs = sp.Rational(R)
    if kind == "S2":
        c = 1 / sp.sqrt(1 + (x ** 2 + y ** 2) / Rs ** 2)
        u = sp.Matrix([x * c, y * c, Rs * c])
        eta = sp.diag(1, 1, 1)
    elif target == "E2":
        c = 1 / sp.sqrt(1 - (x ** 2 + y ** 2) / Rs ** 2)
        u = sp.Matrix([Rs * c, x * c, y * c])
        eta = -sp.diag(1, -1, -1)
    else:
        u2 = Rs / sp.sqrt((x ** 2 - y ** 2) / Rs ** 2 - 1)
        u = sp.Matrix([x * u2 / Rs, y * u2 / Rs, u2])
        eta = -sp.diag(1, -1, -1)
    J = u.jacobian([x, y])
    g = (J.T * eta * J)
    ginv = g.inv()
    sq = sp.sqrt(g.det())
    f = f_expr(x, y)
    grad = [sp.diff(f, x), sp.diff(f, y)]
    flux = [sq * sum(ginv[i, j] * grad[j] for j in range(2)) for i in range(2)]
    lap = (sp.diff(flux[0], x) + sp.diff(flux[1], y)) / sq
    return float(lap.subs({x: point[0], y: point[1]}).evalf(30))


@pytest.mark.parametrize("kind,target,point", [("S2", None, (0.4, -0.7)), ("H2", "E2", (0.4, -0.7)),
                                               ("H2", "E11", (4.0, 1.0))])
def test_laplace_beltrami_against_symbolic_metric(kind, target, point):
    R = 3
    fsym = lambda x, y: sp.sin(sp.Rational(3, 10) * x + sp.Rational(1, 5) * y) * sp.exp(y / 10)
    fnum = lambda p: np.sin(0.3 * p[:, 0] + 0.2 * p[:, 1]) * np.exp(p[:, 1] / 10)
    ref = _sympy_laplacian(kind, R, target, fsym, point)
    space = geo.Space(kind, float(R))
    got = geo.laplace_beltrami_apply(space, fnum, np.array([point], dtype=float), h=1e-4, target=target)[0]
    assert abs(got - ref) < 1e-6


@pytest.mark.parametrize("kind,target,idx,expected", [("S2", None, 2, -2.0), ("H2", "E2", 0, 2.0),
                                                      ("H2", "E11", 2, 2.0)])
def test_ambient_coordinates_are_eigenfunctions(kind, target, idx, expected):
    R = 3.0
    space = geo.Space(kind, R)
    x = np.array([[0.4, -0.7], [1.2, 0.3]]) if target != "E11" else np.array([[4.0, 1.0], [-3.5, 0.5]])
    f = lambda y: geo.beltrami_lift(space, y, target)[:, idx]
    ratio = geo.laplace_beltrami_apply(space, f, x, h=1e-4, target=target) / f(x) * R * R
    assert np.allclose(ratio, expected, atol=1e-5)


def test_flat_laplacian_signatures():
    f = lambda p: p[:, 0] ** 2 + 3 * p[:, 1] ** 2
    x = np.array([[0.3, 0.2]])
    assert abs(geo.laplace_beltrami_apply(geo.E2(), f, x)[0] - 8.0) < 1e-6
    assert abs(geo.laplace_beltrami_apply(geo.E11(), f, x)[0] - (2.0 - 6.0)) < 1e-6
