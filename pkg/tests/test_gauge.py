import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pulsegrav import curvature as cv
from pulsegrav import gauge as ga
from pulsegrav import geometry as geo
from pulsegrav import oracles
from pulsegrav.errors import UnsupportedFeatureError
from pulsegrav.field import P_VEC, h_closed
from pulsegrav.geometry import Event, Region

from conftest import D_RED, L_RED, reduced_circular, reduced_linear

CIRC = reduced_circular()
K = CIRC.kappa


def region_event(reg, rng, cfg=CIRC):
    return oracles.sample_events(cfg, rng, 1, regions=(reg,))[0]


def test_xi_zero_before_emission():
    e = Event(-1.0, 1.0, 0.0, 5.0)
    assert np.all(ga.xi_emission(e, CIRC).lower == 0.0)
    assert np.all(ga.xi_absorption(e, CIRC).lower == 0.0)


@pytest.mark.parametrize("reg", [Region.II, Region.III, Region.IV, Region.V])
def test_xi_components(reg, rng):
    e = region_event(reg, rng)
    v = ga.xi_emission(e, CIRC)
    assert v.lower[1] == 0.0 and v.lower[2] == 0.0
    assert v.lower[0] == -v.lower[3]
    assert v.upper[0] == v.upper[3]
    np.testing.assert_array_equal(v.xi, v.upper)


@pytest.mark.parametrize("reg", [Region.III, Region.I_PLUS])
def test_transformed_field_vanishes(reg, rng):
    events = oracles.sample_events(CIRC, rng, 50, regions=(reg,)) if reg == Region.III else [
        Event(400.0, 1.0, 0.0, 20.0), Event(300.0, 3.0, 1.0, 60.0)]
    for e in events:
        assert geo.classify(e, CIRC).tag == reg
        th = ga.transformed_h(e, CIRC)
        assert np.max(np.abs(th.components.values)) <= 1e-12 * K


def test_transformed_field_zero_before_emission():
    th = ga.transformed_h(Event(-1.0, 1.0, 0.0, 5.0), CIRC)
    assert np.all(th.components.values == 0.0)


@pytest.mark.parametrize("reg", [Region.II, Region.III, Region.IV, Region.V])
def test_combined_and_direct_forms_agree(reg, rng):
    events = oracles.sample_events(CIRC, rng, 20, regions=(reg,))
    X = np.array([e.coords(1.0) for e in events])
    a = ga.transformed_h_arrays(X, CIRC)
    b = ga.transformed_h_direct(X, CIRC)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-10 * K)


def test_region2_transformed_field_is_nonzero():
    e = Event(20.0 + 0.5 * L_RED, 1.0, 0.0, 20.0)
    th = ga.transformed_h(e, CIRC).components.values
    assert np.max(np.abs(th)) > 1e-3 * K


@pytest.mark.parametrize("reg", [Region.II, Region.III])
def test_gauge_invariance_of_curvature(reg, rng):
    events = oracles.sample_events(CIRC, rng, 40, regions=(reg,))
    X = np.array([e.coords(1.0) for e in events])
    R = ga.riemann_transformed(X, CIRC)
    fam_t = np.array([cv.families_from_tensor(r) for r in R])
    fam, _, _ = cv.riemann_fd_arrays(X, CIRC)
    rho = np.hypot(X[:, 1], X[:, 2])
    scale = K / rho**2
    err = np.max(np.abs(fam_t - fam), axis=-1) / scale
    assert np.max(err) <= 1e-6


def test_region5_time_dependence():
    # between the shells of a finite pulse the original field is static;
    # the emission-only transformation leaves a (ct - z) dependent remainder,
    # which the absorption partner removes
    rho, z = 1.0, 120.0
    r = math.hypot(rho, z)
    rd = math.hypot(rho, z - D_RED) + D_RED
    assert rd < r + L_RED
    ts = np.linspace(rd + 1e-3, r + L_RED - 1e-3, 9)
    X = np.stack([ts, np.full(9, rho), np.zeros(9), np.full(9, z)], axis=-1)
    assert np.all(geo.regions(X, CIRC) == Region.V)
    h = np.array([h_closed(Event(t, rho, 0.0, z), CIRC) for t in ts])
    assert np.ptp(h) <= 1e-13 * K
    emit = ga.transformed_h_arrays(X, CIRC, include_absorption=False)
    both = ga.transformed_h_arrays(X, CIRC)
    d_emit = emit[:, 0, 0] - h
    d_both = both[:, 0, 0] - h
    assert np.ptp(d_emit) > 1e-3 * K
    assert np.ptp(d_both) <= 1e-12 * K
    assert np.max(np.abs(both)) > 1e-3 * K


def test_linear_polarization_unsupported():
    lin = reduced_linear()
    e = Event(20.0, 1.0, 0.0, 10.0)
    with pytest.raises(UnsupportedFeatureError):
        ga.xi_emission(e, lin)
    with pytest.raises(UnsupportedFeatureError):
        ga.transformed_h(e, lin)


@given(lam=st.floats(0.01, 0.99), rho=st.floats(0.05, 10.0), z=st.floats(0.0, 80.0))
def test_gauge_vector_along_p(lam, rho, z):
    # xi is psi times p; derivatives of psi stay finite inside the emission shell
    e = Event(math.hypot(rho, z) + lam * L_RED, rho, 0.0, z)
    X = e.coords(1.0)
    _, dpsi = ga.psi_arrays(X, CIRC)
    xi = ga.xi_arrays(X, CIRC)
    assert np.all(xi[1:3] == 0.0)
    assert np.isfinite(dpsi).all()
    np.testing.assert_allclose(xi, 0.5 * K * ga.psi_arrays(X, CIRC)[0] * P_VEC, rtol=1e-15)
