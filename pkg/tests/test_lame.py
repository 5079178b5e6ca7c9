import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from contraction_lab import geometry as geo
from contraction_lab import lame as L
from contraction_lab import liealg as lie


def test_parity_classes_count():
    for l in range(0, 9):
        assert sum(L.LameSystem(l, al, (0, 1, 2)).N + 1 for al in L.parity_classes(l)) == 2 * l + 1


@pytest.mark.parametrize("l", [1, 2, 3, 5, 8])
def test_secular_matches_oracle(l, rng):
    for _ in range(3):
        a = tuple(sorted(rng.uniform(-3, 3, 3)))
        q = sorted(L.q_from_lambda(v) for vals in L.all_eigenvalues(l, a).values() for v in vals)
        assert len(q) == 2 * l + 1
        assert np.max(np.abs(np.asarray(q) - np.asarray(L.oracle_q_spectrum(l, a)))) < 1e-9


def test_oracle_trivial_spectrum():
    assert np.allclose(sorted(L.oracle_q_spectrum(1, (1, 0, 0))), [-1, -1, 0], atol=1e-12)
    with pytest.raises(ValueError):
        L.oracle_q_spectrum(L.ORACLE_MAX_L + 1, (0, 1, 2))


def test_lambda_map_calibration():
    for a in [(0.3, 1.1, 2.0), (-1.0, 0.4, 3.0)]:
        s, c = L.calibrate_lambda_map(a)
        assert (s, c) == pytest.approx(L.LAMBDA_MAP, abs=1e-10)


def test_unsorted_parameters_still_symmetrizable():
    ev = L.all_eigenvalues(3, (2.0, 0.3, 1.1))
    assert sum(len(v) for v in ev.values()) == 7


@pytest.mark.parametrize("l,alpha,a", [(2, (0, 0, 0), (0, 0, 1)), (2, (1, 0, 0), (0, 1, 2)),
                                       (1, (0, 0, 2), (0, 1, 2))])
def test_invalid_systems(l, alpha, a):
    with pytest.raises(L.LameError):
        L.LameSystem(l, alpha, a)


def test_coefficients_independent_of_center():
    s = L.LameSystem(4, (0, 0, 0), (0.3, 1.1, 2.0))
    lam = L.secular_eigenvalues(s)[1]
    rho = np.linspace(0.35, 1.05, 7)
    ref = L.lame_eval(s, lam, rho)
    for k in (1, 2, 3):
        other = L.lame_eval(s, lam, rho, k)
        assert np.allclose(other / other[0], ref / ref[0], atol=1e-9)
    with pytest.raises(L.LameError):
        L.coefficients(s, lam + 0.123)


def test_unit_normalization_and_q_eigenvalue(rng):
    a = (0.3, 1.1, 2.0)
    R = 2.0
    rep = lie.realization("S2", R, coords="beltrami")
    Q = lie.QuadraticOperator("S2", np.diag(a))
    pts = rng.uniform(-0.5, 0.5, (5, 2)) * R
    u, w = L._sphere_grid(40, 80)
    for l in (1, 2, 3):
        for al in L.parity_classes(l):
            s = L.LameSystem(l, al, a)
            for lam in L.secular_eigenvalues(s):
                v = L.lame_on_sphere(s, lam)(u)
                assert np.sum(w * v * v) == pytest.approx(1.0, abs=1e-10)
                f = L.lame_on_plane(s, lam, R)
                ratio = lie.qop_apply(rep, Q, f, pts, 1e-3) / f(pts)
                assert np.allclose(ratio, L.q_from_lambda(lam), rtol=1e-3, atol=1e-4)


def test_band_check():
    s = L.LameSystem(1, (1, 0, 0), (0.0, 1.0, 2.0))
    lam = L.secular_eigenvalues(s)[0]
    with pytest.raises(geo.DomainError):
        L.lame_basis(s, lam, 1.5, 1.8)


# the rescaled limit recursion is the finite one about a_1 or a_2 for a
# particular a-triple, after substituting C_t = a^t b_t

@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6), st.sampled_from([(0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 1, 1)]),
       st.floats(0.2, 3.0), st.floats(-5, 5))
def test_limit_rows_equal_scaled_finite_rows_first(t, alpha, a, mu):
    l = 2 * 6 + sum(alpha)
    sys1 = L.LameSystem(l, alpha, (0.0, 2 * a, a))
    beta, mid, low = L.recursion_row(1, t, sys1, mu * a)
    up9, mid9, low9 = L.limit_recursion_row(1, t, l, alpha, mu)
    assert up9 == pytest.approx(beta / a ** 2)
    assert mid9 == pytest.approx(mid / a, abs=1e-9)
    assert low9 == pytest.approx(low)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6), st.sampled_from([(0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 1, 1)]),
       st.floats(0.2, 3.0), st.floats(-5, 5))
def test_limit_rows_equal_scaled_finite_rows_second(t, alpha, a, mu):
    l = 2 * 6 + sum(alpha)
    sys2 = L.LameSystem(l, alpha, (2 * a, 0.0, a))
    beta, mid, low = L.recursion_row(2, t, sys2, -mu * a)
    up9, mid9, low9 = L.limit_recursion_row(2, t, l, alpha, mu)
    assert up9 == pytest.approx(-beta / a ** 2)
    assert mid9 == pytest.approx(-mid / a, abs=1e-9)
    assert low9 == pytest.approx(-low)


@pytest.mark.parametrize("alpha_j", [0, 1])
@pytest.mark.parametrize("k1", [0.6, 1.0])
def test_cartesian_coefficient_ratio_tends_to_one(alpha_j, k1):
    k = 1.0
    worst = []
    for R in (10, 100, 1000):
        C = L.solve_limit_recursion(1, k * R, (alpha_j, 0, 0), 2 * R * R * k1 * k1, 3)
        r = [C[t] / L.cartesian_limit_coeffs(t, alpha_j, k1, R) for t in range(4)]
        worst.append(max(abs(v - 1) for v in r))
    assert worst[0] > worst[1] > worst[2]
    assert worst[2] < 1e-4


def test_cartesian_limit_functions():
    assert L.cartesian_limit_series(0, 1.3, 2.0) == pytest.approx(math.cos(2.6), abs=1e-12)
    assert L.cartesian_limit_function(1, 1.3, 2.0) == pytest.approx(math.sin(2.6) / 1.3, abs=1e-12)
    assert L.cartesian_limit_coeffs(0, 1, 0.5, 10.0) == 1.0
    with pytest.raises(ValueError):
        L.cartesian_limit_coeffs(-1, 0, 1.0, 1.0)
    with pytest.raises(ValueError):
        L.limit_recursion_row(3, 0, 2, (0, 0, 0), 1.0)


@pytest.mark.parametrize("variable", ["eta", "xi"])
def test_mathieu_limit_decreasing(variable):
    e = [L.mathieu_ode_coeffs(R, 0.0, 1.0, 2.0, 1.0, variable).error for R in (10, 100, 1000)]
    assert e[0] > e[1] > e[2]
    c = L.mathieu_ode_coeffs(1000, 0.0, 1.0, 2.0, 1.0, variable)
    assert abs(c.constant - c.limit_constant) < 1e-2
    assert abs(c.amplitude - c.limit_amplitude) < 1e-2


@pytest.mark.parametrize("variable", ["u", "v"])
@pytest.mark.parametrize("mu", [1.0, 0.0])
def test_pcf_limit_decreasing(variable, mu):
    e = [L.pcf_ode_limit(R, 1.0, 1.0, variable, mu).error for R in (10, 100, 1000)]
    assert e[0] > e[1] > e[2]


def test_ode_variable_checked():
    with pytest.raises(ValueError):
        L.mathieu_ode_coeffs(10, 0, 1, 2, 1, "zeta")
    with pytest.raises(ValueError):
        L.pcf_ode_limit(10, 1, 1, "w")
