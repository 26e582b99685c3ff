import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pulsegrav import curvature as cv
from pulsegrav import fd
from pulsegrav import geometry as geo
from pulsegrav import oracles
from pulsegrav.errors import AxisSingularityError, DomainError
from pulsegrav.field import P_VEC, field_arrays
from pulsegrav.geometry import Event, Region

from conftest import L_RED, reduced_circular, reduced_linear, si_config

CIRC = reduced_circular()
LIN = reduced_linear()


def region2_event(x, z, y=0.0, frac=0.5, cfg=CIRC):
    rho = math.hypot(x, y)
    return Event(math.hypot(rho, z) + frac * cfg.length, x, y, z)


def test_before_emission_exactly_zero():
    s = cv.riemann_fd(Event(-1.0, 0.5, 0.2, 3.0), CIRC)
    assert s.max_abs() == 0.0 and not s.flag


@pytest.mark.parametrize("cfg", [CIRC, LIN], ids=["circular", "linear"])
def test_region3_flat(cfg):
    rep = oracles.oracle_region3_flatness(cfg, np.random.default_rng(5), 100, 5)
    assert rep.max_rel_err <= 1e-10, rep


@pytest.mark.parametrize("cfg", [CIRC, LIN], ids=["circular", "linear"])
def test_region2_matches_closed_form(cfg):
    rep = oracles.oracle_riemann_region2(cfg, np.random.default_rng(6), 100, 6)
    assert rep.max_rel_err <= 1e-5, rep


def test_closed_form_wrong_region():
    with pytest.raises(DomainError):
        cv.riemann_analytic_region2(Event(40.0, 1.0, 0.0, 10.0), CIRC)
    with pytest.raises(DomainError):
        cv.riemann_near_axis(Event(-1.0, 1.0, 0.0, 10.0), CIRC)


def test_closed_form_near_axis_limit():
    z = 10.0
    x = 1e-3 * z
    s = cv.riemann_analytic_region2(region2_event(x, z), CIRC)
    k = CIRC.kappa
    assert s.R_0i0j[0, 0] == pytest.approx(-k / x**2, rel=5e-3)
    assert s.R_0i0j[1, 1] == pytest.approx(k / x**2, rel=5e-3)
    ratios = []
    for q in (1e-1, 1e-2, 1e-3):
        s = cv.riemann_analytic_region2(region2_event(q * z, z), CIRC)
        ratios.append(abs(s.R_0z0z / s.R_0i0j[0, 0]))
    assert ratios[0] > ratios[1] > ratios[2]


@given(q=st.floats(1e-5, 1e-2), z=st.floats(1.0, 60.0), frac=st.floats(0.05, 0.95))
def test_transversal_dominance(q, z, frac):
    s = cv.riemann_analytic_region2(region2_event(q * z, z, frac=frac), CIRC)
    rho_over_r = q / math.hypot(q, 1.0)
    assert abs(s.R_0z0z) / abs(s.R_0i0j[0, 0]) <= 10 * rho_over_r


def test_near_axis_sample():
    x = 0.02
    e = region2_event(x, 10.0)
    s = cv.riemann_near_axis(e, CIRC)
    k = CIRC.kappa
    assert s.R_0i0j[0, 0] == pytest.approx(-k / x**2, rel=1e-14)
    assert s.R_0i0j[1, 1] == pytest.approx(k / x**2, rel=1e-14)
    assert s.R_0z0z == 0.0 and np.all(s.R_0z0i == 0.0)
    e2 = region2_event(0.3 * x, 10.0, y=0.7 * x)
    assert np.trace(cv.riemann_near_axis(e2, CIRC).R_0i0j) == 0.0


@given(q=st.floats(1e-6, 1e-3), phi=st.floats(0, 6.3), frac=st.floats(0.05, 0.95))
def test_closed_form_approaches_near_axis(q, phi, frac):
    z = 10.0
    rho = q * z
    e = region2_event(rho * math.cos(phi), z, y=rho * math.sin(phi), frac=frac)
    a = cv.riemann_analytic_region2(e, CIRC).families()
    b = cv.riemann_near_axis(e, CIRC).families()
    assert np.max(np.abs(a - b)) <= 1e-3 * CIRC.kappa / rho**2


def test_inverse_square_scaling():
    z = 10.0
    rhos = z * np.logspace(-6, -3, 13)
    X = np.stack([np.hypot(rhos, z) + 2.5, rhos, 0 * rhos, 0 * rhos + z], axis=-1)
    fam, flag, reg = cv.riemann_fd_arrays(X, CIRC)
    assert np.all(reg == Region.II) and not flag.any()
    slope = np.polyfit(np.log(rhos), np.log(np.abs(fam[:, 3])), 1)[0]
    assert abs(slope + 2) <= 0.01


def metric_pp(cfg, reg):
    def metric(P):
        h = field_arrays(P, cfg, reg=reg, grad=False).h
        return h[..., None, None] * np.outer(P_VEC, P_VEC)
    return metric


@pytest.mark.parametrize("cfg", [CIRC, LIN], ids=["circular", "linear"])
def test_symmetries_of_general_fd_tensor(cfg, rng):
    events = oracles.sample_events(cfg, rng, 12)
    for e in events:
        X = e.coords(1.0)
        reg = geo.regions(X, cfg)
        R = cv.riemann_fd_metric(metric_pp(cfg, reg), X, fd.feature_steps(X, cfg, reg))
        res = cv.symmetry_residuals(R)
        assert max(res.values()) <= 1e-8, (e, res)


def test_families_round_trip(rng):
    row = rng.normal(size=6)
    s = cv.RiemannSample.from_families(row)
    np.testing.assert_array_equal(s.families(), row)
    np.testing.assert_allclose(cv.families_from_tensor(s.tensor()), row, rtol=1e-15)
    res = cv.symmetry_residuals(s.tensor())
    assert max(res.values()) <= 1e-15
    H = rng.normal(size=(4, 4))
    H = H + H.T
    np.testing.assert_allclose(cv.families_from_hessian(H),
                               cv.families_from_tensor(cv.riemann_from_hessian(H)), atol=1e-14)


def test_fd_axis_guard():
    with pytest.raises(AxisSingularityError):
        cv.riemann_fd(Event(20.0, 1e-12, 0.0, 10.0), CIRC)


def test_fd_flags_front_straddling_stencil():
    e = Event(5.0 + 1e-9, 3.0, 0.0, 4.0)  # just inside the emission front
    assert cv.riemann_fd(e, CIRC).flag
    assert not cv.riemann_fd(Event(7.5, 3.0, 0.0, 4.0), CIRC).flag


def test_tidal_co_null_zero():
    e = region2_event(0.01, 10.0)
    s = cv.riemann_fd(e, CIRC)
    a = cv.tidal_acceleration(e, [1.0, 0.0, 0.0, 1.0], [0.0, 1e-3, 2e-3, 0.0], CIRC, sample=s)
    assert np.max(np.abs(a)) <= 1e-12 * s.max_abs() * 1e-3


def test_tidal_zero_separation():
    e = region2_event(0.01, 10.0)
    assert np.all(cv.tidal_acceleration(e, [1.0, 0, 0, 0], np.zeros(4), CIRC) == 0.0)


def test_tidal_rest_along_x():
    # a^x = -R_0x0x (gdot^0)^2 s^x; near the axis R_0x0x = -kappa / x^2 < 0,
    # so separations along x grow and separations along y shrink
    e = region2_event(0.01, 10.0)
    s = cv.riemann_near_axis(e, CIRC)
    sx = 1e-4
    a = cv.tidal_acceleration(e, [1.0, 0, 0, 0], [0.0, sx, 0.0, 0.0], CIRC, sample=s)
    assert a[1] == pytest.approx(-s.R_0i0j[0, 0] * sx, rel=1e-14)
    assert a[1] > 0
    ay = cv.tidal_acceleration(e, [1.0, 0, 0, 0], [0.0, 0.0, sx, 0.0], CIRC, sample=s)
    assert ay[2] < 0
    assert a[0] - a[3] == pytest.approx(0.0, abs=1e-30)


def test_gw_comparison_petawatt():
    cfg = si_config()
    res = cv.compare_gw(cfg, 1e-2, 1e3)
    assert res.R_pulse == pytest.approx(1.10e-33, rel=3e-3)
    assert res.h_plus_equiv == pytest.approx(0.99e-22, rel=2e-3)
    assert 0.5e-22 <= res.h_plus_equiv <= 2e-22
    assert cv.compare_gw(cfg, 2e-2, 1e3).h_plus_equiv == pytest.approx(res.h_plus_equiv / 4, rel=1e-14)
    assert cv.compare_gw(cfg, 1e-2, 2e3).h_plus_equiv == pytest.approx(res.h_plus_equiv / 4, rel=1e-14)
    assert cv.compare_gw(si_config(0.0), 1e-2, 1e3).h_plus_equiv == 0.0
    assert cv.gw_equivalent_strain(0.0, 1.0) == 0.0
    assert res.to_dict()["h_plus_equiv"] == res.h_plus_equiv


@pytest.mark.parametrize("omega", [0.0, -1.0])
def test_gw_domain(omega):
    with pytest.raises(DomainError):
        cv.gw_equivalent_strain(1.0, omega)


def test_gw_axis_domain():
    with pytest.raises(DomainError):
        cv.compare_gw(si_config(), 0.0, 1e3)


def test_explicit_step():
    e = region2_event(0.5, 10.0)
    a = cv.riemann_fd(e, CIRC).families()
    b = cv.riemann_fd(e, CIRC, step=1e-3).families()
    np.testing.assert_allclose(a, b, rtol=1e-5, atol=1e-5 * np.max(np.abs(a)))
    with pytest.raises(DomainError):
        cv.riemann_fd(e, CIRC, step=-1.0)
