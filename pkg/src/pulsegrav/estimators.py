"""scikit-learn style wrappers: events in, field or curvature features out.

Rows of ``X`` are events ``(t, x, y, z)`` in seconds and meters. ``fit``
only validates the parameters and builds the pulse configuration; there is
nothing to learn from data.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .curvature import FAMILY_NAMES, riemann_fd_arrays
from .field import field_arrays
from .geometry import Region
from .model import Constants, PulseConfig, make_polarization


class _PulseParams(BaseEstimator):
    def __init__(self, power=1e15, length=0.1, distance=50.0, area=1.0,
                 polarization="circular", omega=None, phase=0.0,
                 G=6.67430e-11, c=299792458.0, rho_min=1e-9):
        self.power = power
        self.length = length
        self.distance = distance
        self.area = area
        self.polarization = polarization
        self.omega = omega
        self.phase = phase
        self.G = G
        self.c = c
        self.rho_min = rho_min

    def _build_config(self) -> PulseConfig:
        constants = Constants(float(self.G), float(self.c))
        u0 = float(self.power) / (float(self.area) * constants.c)
        pol = make_polarization(self.polarization, u0, self.omega, self.phase)
        return PulseConfig(float(self.length), float(self.distance), float(self.area), pol,
                           constants, rho_min=float(self.rho_min))

    def fit(self, X, y=None):
        X = check_array(X, dtype=float, ensure_all_finite=True)
        if X.shape[1] != 4:
            raise ValueError(f"expected 4 columns (t, x, y, z), got {X.shape[1]}")
        self.config_ = self._build_config()
        self.n_features_in_ = 4
        return self

    def _events(self, X):
        check_is_fitted(self, "config_")
        X = check_array(X, dtype=float, ensure_all_finite=True)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        E = X.copy()
        E[:, 0] *= self.config_.constants.c
        return E


class PulseField(TransformerMixin, _PulseParams):
    """Closed-form ``h`` and its gradient ``(dh/dct, dh/dx, dh/dy, dh/dz)``.

    ``transform`` returns five columns; axis-guarded rows are NaN.
    """

    def transform(self, X):
        fa = field_arrays(self._events(X), self.config_)
        return np.column_stack([fa.h, fa.grad])

    def get_feature_names_out(self, input_features=None):
        return np.array(["h", "dh_dct", "dh_dx", "dh_dy", "dh_dz"], dtype=object)


class Curvature(TransformerMixin, _PulseParams):
    """Finite-difference Riemann families ``R0z0z, R0z0x, R0z0y, R0x0x, R0x0y, R0y0y``
    (units m^-2) plus a seventh column that is 1 where the stencil crossed a front."""

    def transform(self, X):
        E = self._events(X)
        fam, flag, reg = riemann_fd_arrays(E, self.config_)
        rho = np.hypot(E[:, 1], E[:, 2])
        flat = np.isin(reg, (Region.I_MINUS, Region.I_PLUS))
        fam = np.where(((rho < self.config_.rho_min) & ~flat)[:, None], np.nan, fam)
        return np.column_stack([fam, flag.astype(float)])

    def get_feature_names_out(self, input_features=None):
        return np.array(list(FAMILY_NAMES) + ["flag"], dtype=object)
