import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from pulsegrav.estimators import Curvature, PulseField
from pulsegrav.field import h_closed
from pulsegrav.geometry import Event

from conftest import si_config

C = 299792458.0


def events():
    x, z = 2.5e-3, 1.0
    r = np.hypot(x, z)
    return np.array([
        [-1e-9, x, 0.0, z],
        [(r + 0.05) / C, x, 0.0, z],
        [(r + 0.05) / C, 0.0, x, z],
        [(r + 0.2) / C, x, 0.0, z],
    ])


def test_field_shapes_and_values():
    X = events()
    est = PulseField().fit(X)
    out = est.transform(X)
    assert out.shape == (4, 5)
    assert np.all(out[0] == 0.0)
    cfg = si_config()
    for row, vals in zip(X, out):
        assert vals[0] == pytest.approx(h_closed(Event(*row), cfg), rel=1e-14, abs=0)
    assert list(est.get_feature_names_out()) == ["h", "dh_dct", "dh_dx", "dh_dy", "dh_dz"]


def test_curvature_columns_and_axis():
    X = np.vstack([events(), [[(1.0 + 0.05) / C, 0.0, 0.0, 1.0]]])
    out = Curvature().fit_transform(X)
    assert out.shape == (5, 7)
    k = si_config().kappa
    assert out[1, 3] == pytest.approx(-k / 2.5e-3**2, rel=1e-2)
    assert np.all(np.isnan(out[4, :6]))
    assert set(np.unique(out[:, 6])) <= {0.0, 1.0}
    assert len(Curvature().get_feature_names_out()) == 7


def test_not_fitted():
    with pytest.raises(NotFittedError):
        PulseField().transform(events())


def test_params_and_clone():
    est = PulseField(power=2e15, polarization="linear", omega=1e15)
    assert est.get_params()["power"] == 2e15
    c = clone(est)
    assert c.get_params() == est.get_params() and not hasattr(c, "config_")
    est.set_params(power=3e15)
    assert est.fit(events()).config_.power == pytest.approx(3e15)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        PulseField().fit(np.zeros((3, 3)))
    est = PulseField().fit(events())
    with pytest.raises(ValueError):
        est.transform(np.zeros((2, 5)))
    with pytest.raises(ValueError):
        est.transform(np.array([[np.nan, 0, 0, 1.0]]))
