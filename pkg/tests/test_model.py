import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from pulsegrav.errors import DomainError, IOFailure
from pulsegrav.model import (REDUCED, SI, Circular, Constants, Linear, PulseConfig,
                             config_from_mapping, energy_density, energy_density_derivative,
                             kappa_from_power, load_config)

KAPPA_1E15 = 1.1024583733454745e-37  # 4 G P / c^5 with CODATA 2018 G, c and P = 1e15 W


def test_kappa_of_petawatt_pulse():
    k = kappa_from_power(1e15)
    # independent hand arithmetic
    G, c = 6.67430e-11, 299792458.0
    assert k == pytest.approx(4 * G * 1e15 / c**5, rel=1e-14)
    assert k == pytest.approx(KAPPA_1E15, rel=1e-13)
    assert k == pytest.approx(1.102e-37, rel=1e-3)


def test_zero_power_gives_zero_kappa():
    assert kappa_from_power(0.0) == 0.0
    assert PulseConfig.from_power(0.0, 1.0, 10.0).kappa == 0.0


def test_negative_power_rejected():
    with pytest.raises(DomainError):
        kappa_from_power(-1.0)
    with pytest.raises(DomainError):
        PulseConfig.from_power(-1.0, 1.0, 10.0)


@given(power=st.floats(0, 1e20), area=st.floats(1e-12, 1e3))
def test_kappa_formulas_agree(power, area):
    cfg = PulseConfig.from_power(power, 1.0, 10.0, area=area)
    assert cfg.kappa == pytest.approx(kappa_from_power(cfg.u0 * cfg.area * SI.c), rel=1e-14, abs=0)
    assert cfg.power == pytest.approx(power, rel=1e-14, abs=1e-300)


def test_constants_are_frozen():
    with pytest.raises(Exception):
        SI.G = 1.0
    assert SI.G == 6.67430e-11 and SI.c == 299792458.0
    assert REDUCED == Constants(1.0, 1.0)


@pytest.mark.parametrize("bad", [dict(u0=-1.0), dict(omega=0.0), dict(omega=-2.0)])
def test_polarization_domain(bad):
    args = dict(u0=1.0, omega=1.0, phase=0.0)
    args.update(bad)
    with pytest.raises(DomainError):
        Linear(**args)


@pytest.mark.parametrize("field,value", [("length", 0.0), ("distance", -1.0), ("area", math.inf)])
def test_config_domain(field, value):
    args = dict(length=1.0, distance=10.0, area=1.0)
    args[field] = value
    with pytest.raises(DomainError):
        PulseConfig(polarization=Circular(1.0), **args)


def test_strong_field_warns():
    with pytest.warns(RuntimeWarning, match="linearized"):
        PulseConfig(1.0, 10.0, 1.0, Circular(1.0), REDUCED)


def test_circular_profile_constant():
    cfg = PulseConfig(1.0, 10.0, 1.0, Circular(2.5), REDUCED)
    s = np.linspace(-5, 5, 11)
    assert np.all(energy_density(cfg, s) == 2.5)
    assert np.all(energy_density_derivative(cfg, s) == 0.0)


def test_linear_profile_zero_at_origin():
    cfg = PulseConfig(1.0, 10.0, 1.0, Linear(1.0, 3.0, 0.0), REDUCED)
    assert energy_density(cfg, 0.0) == 0.0


def test_linear_mean_over_period(lin):
    lam = lin.wavelength
    mean = integrate.quad(lambda s: energy_density(lin, s), 0.0, lam, epsabs=0, epsrel=1e-12)[0] / lam
    assert mean == pytest.approx(lin.u0, rel=1e-10)


def test_linear_derivative_extremes():
    u0, omega = 2.0, 3.0
    cfg = PulseConfig(1.0, 10.0, 1.0, Linear(u0, omega, 0.0), REDUCED)
    k = omega / cfg.constants.c
    # sin(2(-k s)) = -1 at s = pi / (4 k)
    assert energy_density_derivative(cfg, math.pi / (4 * k)) == pytest.approx(2 * u0 * k, rel=1e-14)
    assert energy_density_derivative(cfg, -math.pi / (4 * k)) == pytest.approx(-2 * u0 * k, rel=1e-14)


def test_linear_derivative_matches_finite_differences(lin, rng):
    s = rng.uniform(-10, 10, 20)
    h = 1e-5
    fd = (energy_density(lin, s + h) - energy_density(lin, s - h)) / (2 * h)
    exact = energy_density_derivative(lin, s)
    scale = 2 * lin.u0 * lin.polarization.omega / lin.constants.c
    ok = np.abs(exact) > 1e-3 * scale  # skip the degenerate zeros
    assert np.all(np.abs(fd - exact)[ok] / np.abs(exact[ok]) <= 1e-6)


@given(s=st.floats(-1e3, 1e3), phase=st.floats(-3, 3), omega=st.floats(0.1, 10))
def test_profile_nonnegative_and_half_wavelength_periodic(s, phase, omega):
    cfg = PulseConfig(1.0, 10.0, 1.0, Linear(1.0, omega, phase), REDUCED)
    u = energy_density(cfg, s)
    assert u >= 0
    assert energy_density(cfg, s + math.pi * cfg.constants.c / omega) == pytest.approx(u, abs=1e-9)


def test_config_from_mapping_power_and_overrides():
    data = {"pulse": {"length_m": 0.1, "distance_m": 50.0, "power_W": 1e15}}
    cfg = config_from_mapping(data)
    assert cfg.kappa == pytest.approx(KAPPA_1E15, rel=1e-13)
    cfg2 = config_from_mapping(data, **{"pulse.power_W": 2e15, "pulse.length_m": 0.2})
    assert cfg2.kappa == pytest.approx(2 * KAPPA_1E15, rel=1e-13)
    assert cfg2.length == 0.2
    cfg3 = config_from_mapping(data, **{"pulse.u0_J_per_m3": 1.0})
    assert cfg3.u0 == 1.0


def test_config_linear_requires_omega():
    data = {"pulse": {"length_m": 1, "distance_m": 2, "u0_J_per_m3": 1, "polarization": "linear"}}
    with pytest.raises(DomainError):
        config_from_mapping(data)


def test_config_missing_keys():
    with pytest.raises(DomainError):
        config_from_mapping({"pulse": {"length_m": 1.0, "power_W": 1.0}})
    with pytest.raises(DomainError):
        config_from_mapping({"pulse": {"length_m": 1.0, "distance_m": 2.0}})


def test_load_config(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"pulse": {"length_m": 5, "distance_m": 100, "u0_J_per_m3": 1e-4},
                             "constants": {"G": 1, "c": 1}}))
    cfg = load_config(p)
    assert cfg.constants == REDUCED and cfg.kappa == pytest.approx(4e-4)
    with pytest.raises(IOFailure):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(DomainError):
        load_config(bad)


def test_to_dict_round_trip(lin):
    d = lin.to_dict()
    assert config_from_mapping(d) == lin
