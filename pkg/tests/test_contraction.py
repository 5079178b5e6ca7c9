import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from contraction_lab import contraction as C

DOCS = Path(__file__).resolve().parent.parent / "docs"


@pytest.fixture(scope="module")
def reports():
    return C.run_all()


def test_fit_rate_exact_powers():
    R = np.array([50, 100, 200, 400, 800.0])
    assert C.fit_rate(3.0 / R, R).slope == pytest.approx(-1.0, abs=1e-12)
    assert C.fit_rate(3.0 / R ** 2, R).slope == pytest.approx(-2.0, abs=1e-12)
    assert C.fit_rate(3.0 / R, R).residual < 1e-12


def test_fit_rate_noisy():
    rng = np.random.default_rng(7)
    R = np.array([50, 100, 200, 400, 800.0])
    for _ in range(20):
        e = 2.0 / R * (1 + 0.01 * rng.standard_normal(R.size))
        assert abs(C.fit_rate(e, R).slope + 1) < 0.05


@settings(max_examples=50, deadline=None)
@given(st.floats(-3, 0.5), st.floats(1e-6, 1e3))
def test_fit_rate_recovers_any_power(p, c):
    R = np.array([10.0, 30.0, 90.0, 270.0])
    assert C.fit_rate(c * R ** p, R).slope == pytest.approx(p, abs=1e-9)


def test_fit_rate_edge_cases():
    assert C.fit_rate([1e-3, 0.0, 1e-5], [1, 2, 3]).slope == -math.inf
    with pytest.raises(ValueError):
        C.fit_rate([1e-3, -1e-4, 1e-5], [1, 2, 3])
    with pytest.raises(ValueError):
        C.fit_rate([1e-3], [1])
    with pytest.raises(ValueError):
        C.fit_rate([1e-3, np.nan], [1, 2])


def test_registry_size_and_unique_ids():
    cases = C.registry()
    ids = [c.id for c in cases]
    assert len(cases) >= 20
    assert len(set(ids)) == len(ids)
    # one heading per case and one case per heading
    assert len({c.heading for c in cases}) == len(cases)
    assert "S2.spherical→E2.polar" in ids
    assert "H2.equidistant→E11.pseudo_polar" in ids


def test_comparand_kinds():
    kinds = {c.comparand for c in C.registry()}
    assert kinds == {"coordinates", "operator action", "basis value", "expansion coefficient", "ODE coefficient"}


def test_coordinate_and_basis_cases_share_rules():
    by_id = {c.id: c for c in C.registry()}
    for cid, case in by_id.items():
        if cid.startswith("coords."):
            twin = by_id.get(cid[len("coords."):])
            if twin is not None:
                assert twin.scaling is case.scaling


def test_run_case_preconditions():
    with pytest.raises(C.ContractionError):
        C.run_case("S2.spherical→E2.polar", R_list=(100,))
    with pytest.raises(C.ContractionError):
        C.run_case("S2.spherical→E2.polar", R_list=(100, 50, 200))
    with pytest.raises(KeyError):
        C.run_case("bogus")


def test_bessel_case_decreasing_and_halving():
    rep = C.run_case("S2.spherical→E2.polar", R_list=(50, 100, 200, 400), params={"m_values": (0,)})
    assert all(a > b for a, b in zip(rep.max_err, rep.max_err[1:]))
    case = C.get_case("S2.spherical→E2.polar")
    pts = np.array([[1.0, 0.4]])
    for m in (0, 1, 2):
        p = dict(case.params, k=1.0, m_values=(m,))
        e200 = case.error(pts, 200.0, p)[0][0]
        e400 = case.error(pts, 400.0, p)[0][0]
        assert e200 / e400 >= 1.8


def test_rounding_noted():
    rep = C.run_case("S2.spherical_prime→E2.cartesian", R_list=(55, 110, 220), n_samples=3, params={"k2": 0.61})
    assert "rounding" in rep.notes["per_R"][0]


def test_reports_deterministic():
    a = C.run_case("coords.H2.horocyclic→E2.cartesian", n_samples=5)
    b = C.run_case("coords.H2.horocyclic→E2.cartesian", n_samples=5)
    assert a.to_json() == b.to_json()


def test_all_cases_pass(reports):
    failed = [r.id for r in reports if not r.passed]
    assert not failed
    assert [r.id for r in reports] == sorted(r.id for r in reports)
    for r in reports:
        assert r.slope < 0
        assert r.max_err[-1] < C.PASS_ERROR


def test_report_schema(reports):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((DOCS / "convergence_report.schema.json").read_text())
    for r in reports:
        jsonschema.validate(json.loads(r.to_json()), schema)


def test_parabolic_rotations_stay_on_surface():
    for cid in ("coords.S2.elliptic→E2.parabolic", "coords.H2.elliptic→E2.parabolic"):
        rep = C.run_case(cid, n_samples=5)
        for note in rep.notes["per_R"]:
            assert note["constraint_residual"] < 1e-9 * note["R"] ** 2
