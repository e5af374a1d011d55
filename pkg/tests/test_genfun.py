import math

import pytest

from eqmap.endpoints import PotentialSpec, solve_endpoints, uz_jets
from eqmap.genfun import e1_monomial, e1_series, e1_value, verify_relations


def test_e1_vanishes_at_zero_perturbation():
    for x in (0.5, 1.0, 2.0, 3.7):
        res = e1_value(PotentialSpec(x, {}))
        assert res.value == pytest.approx(0.0, abs=1e-13)


def test_e1_quartic_reference_formula():
    for t in (-0.015, -0.005, 0.01, 0.03, 0.05):
        res = e1_value(PotentialSpec(1.0, {4: t}))
        assert res.value == pytest.approx(-math.log(2 - res.z) / 12, abs=1e-12)


def test_e1_quartic_spot_value():
    # z solves z + 0.12 z^2 = 1; e1 = -log(2 - z)/12 = -0.0077679300666...
    res = e1_value(PotentialSpec(1.0, {4: 0.01}))
    z = (-1 + math.sqrt(1.48)) / 0.24
    assert res.z == pytest.approx(z, abs=1e-13)
    assert res.value == pytest.approx(-math.log(2 - z) / 12, abs=1e-13)
    assert res.value == pytest.approx(-0.007767930066688, abs=1e-12)


def test_e1_sextic_reference_formula():
    for t in (0.001, 0.004, 0.008):
        res = e1_value(PotentialSpec(1.0, {6: t}))
        assert res.value == pytest.approx(-math.log(3 - 2 * res.z) / 12, abs=1e-12)


def test_e1_monomial_reduces_to_quartic_form():
    t = 0.02
    got = e1_monomial(4, t)
    z = solve_endpoints(PotentialSpec(1.0, {4: t})).z
    assert got == pytest.approx(-math.log(2 - z) / 12, abs=1e-13)


def test_e1_monomial_even_valence_closed_form():
    # j = 2*nu with u = 0 collapses to -(1/12) log(nu - (nu-1) z)
    t = 0.004
    got = e1_monomial(6, t)
    z = solve_endpoints(PotentialSpec(1.0, {6: t})).z
    assert got == pytest.approx(-math.log(3 - 2 * z) / 12, abs=1e-13)


def test_e1_monomial_odd_valence_matches_general_route():
    for t in (0.02, 0.05):
        assert e1_monomial(3, t) == pytest.approx(
            e1_value(PotentialSpec(1.0, {3: t})).value, abs=1e-12)


def test_e1_beyond_the_fold_raises():
    # past t4 = -1/48 the endpoint system has no real one-cut root at all,
    # so the failure surfaces from the continuation rather than the log
    from eqmap.errors import NoOneCutSolutionError

    with pytest.raises(NoOneCutSolutionError):
        e1_monomial(4, -0.0209)


def test_e1_series_quartic_low_orders():
    ser = e1_series(PotentialSpec(1.0, {4: 0.0}), order=3)
    assert ser.coeff({}) == 0.0
    assert ser.coeff({4: 1}) == pytest.approx(-1.0, rel=1e-10)
    assert ser.coeff({4: 2}) == pytest.approx(30.0, rel=1e-9)


def test_e1_series_requires_zero_base():
    with pytest.raises(ValueError):
        e1_series(PotentialSpec(1.0, {4: 0.01}), order=2)


def test_e1_series_against_finite_differences_of_e1_value():
    # independent route: central differences of e1_value over t4
    ser = e1_series(PotentialSpec(1.0, {4: 0.0}), order=2)
    h = 1e-4
    f = lambda t: e1_value(PotentialSpec(1.0, {4: t})).value
    d1 = (f(h) - f(-h)) / (2 * h)
    d2 = (f(h) - 2 * f(0.0) + f(-h)) / h**2
    # truncation error carries the large t^3, t^4 series coefficients
    assert ser.coeff({4: 1}) == pytest.approx(d1, abs=5e-5)
    assert ser.coeff({4: 2}) == pytest.approx(d2 / 2, rel=1e-3)


def test_e1_series_mixed_family_cross_terms():
    # two directions at once: d^2 e1/(dt3 dt4) via finite differences
    fam = PotentialSpec(1.0, {3: 0.0, 4: 0.0})
    ser = e1_series(fam, order=2)
    h = 2e-3

    def f(t3, t4):
        return e1_value(PotentialSpec(1.0, {3: t3, 4: t4})).value

    mixed = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h)
    assert ser.coeff({3: 1, 4: 1}) == pytest.approx(mixed, rel=2e-3, abs=1e-4)


def test_dx_of_e1_matches_derivative_display():
    # the x-derivative display in terms of (u, z) jets; the normalized value
    # adds 1/(12x) coming from the x**2 factor inside the log
    pot_of = lambda x: PotentialSpec(x, {3: 0.02, 4: 0.01})
    h = 1e-5
    fd = (e1_value(pot_of(1 + h)).value - e1_value(pot_of(1 - h)).value) / (2 * h)
    ep = uz_jets(pot_of(1.0), x_order=2)
    z, ux, zx = ep.z, ep.du(1), ep.dz(1)
    uxx, zxx = ep.du(2), ep.dz(2)
    display = (-zx / (12 * z)
               + (zx * ux**2 + 2 * z * ux * uxx - 2 * zx * zxx)
               / (24 * (z * ux**2 - zx**2)))
    assert fd == pytest.approx(display + 1 / 12, abs=1e-8)


def test_relations_gue_limit_scaling():
    ep = uz_jets(PotentialSpec(1.0, {}), x_order=1)
    assert 2 * ep.z == pytest.approx(2 * 1.0 * ep.dz(1))


@pytest.mark.parametrize("j,t", [(3, 0.05), (4, 0.01), (6, 0.002)])
def test_relation_suite(j, t):
    residuals = verify_relations(j, t)
    assert max(residuals.values()) < 1e-9


def test_relation_suite_odd_valence_has_nonzero_u():
    ep = solve_endpoints(PotentialSpec(1.0, {3: 0.05}))
    assert ep.u != 0.0
    residuals = verify_relations(3, 0.05)
    assert max(residuals.values()) < 1e-9
