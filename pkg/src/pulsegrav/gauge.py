"""Linearized gauge transformation that removes the field between the shells.

For circular polarization take ``xi_nu = (kappa/2) p_nu psi`` with

    psi_emit = T1 F(w) - T2 F(w - L) - (T1 - T2) F(r - z),   F(q) = q ln q - q

where ``w = ct - z`` and ``T1, T2`` are the Heaviside factors of the emission
start/end fronts. The absorption partner is the same expression about the
absorber point with the overall sign reversed. Then

    h~_{mu nu} = h p_mu p_nu - (kappa/2) (p_mu d_nu psi + d_mu psi p_nu)

vanishes identically between the emission and absorption shells and after
the absorption shell. Heaviside factors act as region selectors; their
derivatives are never materialized, which is exact off the fronts because
each bracket is continuous across its own front.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import geometry as geo
from .errors import UnsupportedFeatureError
from .field import ETA, P_VEC, MetricComponents, field_arrays
from .geometry import Event, Region
from .model import Circular, PulseConfig

# front indicators (emission start, emission end, absorption start, absorption end) per region
_FRONTS_PASSED = {
    Region.I_MINUS: (0, 0, 0, 0),
    Region.II: (1, 0, 0, 0),
    Region.III: (1, 1, 0, 0),
    Region.IV: (1, 1, 1, 0),
    Region.V: (1, 0, 1, 0),
    Region.I_PLUS: (1, 1, 1, 1),
}
_PASSED_TABLE = np.array([_FRONTS_PASSED[Region(i)] for i in range(6)], dtype=float)


@dataclass(frozen=True)
class GaugeVector:
    """``xi`` at an event; ``lower`` is ``xi_mu`` and ``upper`` is ``eta^{mu nu} xi_nu``."""

    lower: np.ndarray
    on_front: bool = False

    @property
    def upper(self) -> np.ndarray:
        return ETA @ self.lower

    @property
    def xi(self) -> np.ndarray:
        return self.upper


def _require_circular(cfg: PulseConfig):
    if not isinstance(cfg.polarization, Circular):
        raise UnsupportedFeatureError("the gauge vector is available for circular polarization only")


def _F(q):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(q > 0, q * np.log(q) - q, 0.0)


def _dF(q):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(q > 0, np.log(q), 0.0)


def _passed(X, cfg, reg):
    if reg is None:
        reg = geo.regions(X, cfg)
    reg = np.broadcast_to(np.asarray(reg, dtype=np.int64), np.asarray(X).shape[:-1])
    return _PASSED_TABLE[reg]


def psi_arrays(X, cfg: PulseConfig, reg=None, include_absorption: bool = True):
    """Scalar potential ``psi`` and its gradient ``d_mu psi`` (shape ``(..., 4)``)."""
    _require_circular(cfg)
    X = np.asarray(X, dtype=float)
    g = geo.geometry(X, cfg)
    T = _passed(X, cfg, reg)
    T1, T2, T3, T4 = (T[..., k] for k in range(4))
    w = g.x0 - g.z
    wl = w - cfg.length
    ze = geo.emit_zeta(g)
    grad_w = np.broadcast_to(P_VEC, X.shape)
    ge = geo.bound_gradient(geo.Bound.EMIT, g, cfg)
    psi = T1 * _F(w) - T2 * _F(wl) - (T1 - T2) * _F(ze)
    dpsi = ((T1 * _dF(w) - T2 * _dF(wl))[..., None] * grad_w
            - ((T1 - T2) * _dF(ze))[..., None] * ge)
    if include_absorption:
        za = geo.abs_zeta(g, cfg.distance)
        ga = geo.bound_gradient(geo.Bound.ABS, g, cfg)
        psi = psi - (T3 * _F(w) - T4 * _F(wl) - (T3 - T4) * _F(za))
        dpsi = dpsi - (((T3 * _dF(w) - T4 * _dF(wl))[..., None] * grad_w)
                       - ((T3 - T4) * _dF(za))[..., None] * ga)
    return psi, dpsi


def xi_arrays(X, cfg: PulseConfig, reg=None, include_absorption: bool = True):
    psi, _ = psi_arrays(X, cfg, reg, include_absorption)
    return 0.5 * cfg.kappa * psi[..., None] * P_VEC


def xi_emission(e: Event, cfg: PulseConfig) -> GaugeVector:
    X = e.coords(cfg.constants.c)
    lower = xi_arrays(X, cfg, include_absorption=False)
    return GaugeVector(np.asarray(lower, dtype=float), bool(geo.near_front(X, cfg)))


def xi_absorption(e: Event, cfg: PulseConfig) -> GaugeVector:
    X = e.coords(cfg.constants.c)
    lower = xi_arrays(X, cfg) - xi_arrays(X, cfg, include_absorption=False)
    return GaugeVector(np.asarray(lower, dtype=float), bool(geo.near_front(X, cfg)))


def _log_where(coef, q):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(coef != 0, coef * np.log(np.where(coef != 0, q, 1.0)), 0.0)


def transformed_h_arrays(X, cfg: PulseConfig, reg=None, include_absorption: bool = True):
    """``h~_{mu nu}`` with shape ``(..., 4, 4)``; ``reg`` forces the region selectors.

    The ``ln(ct - z)`` and ``ln(ct - z - L)`` pieces of ``h`` and of the gauge
    term are combined as integer coefficients before any logarithm is taken,
    so the cancellation is exact and no log of the pulse-edge bounds is
    evaluated where it drops out.
    """
    _require_circular(cfg)
    X = np.asarray(X, dtype=float)
    g = geo.geometry(X, cfg)
    if reg is None:
        reg = geo.regions(X, cfg)
    reg = np.broadcast_to(np.asarray(reg, dtype=np.int64), X.shape[:-1])
    T = _PASSED_TABLE[reg]
    T1, T2, T3, T4 = (T[..., k] for k in range(4))
    if not include_absorption:
        T3 = T4 = np.zeros_like(T1)
    # h = kappa (ln zeta_b - ln zeta_a) with the region's bound kinds
    c_w = np.zeros(reg.shape)
    c_wl = np.zeros(reg.shape)
    c_e = np.zeros(reg.shape)
    c_a = np.zeros(reg.shape)
    for region, (ka, kb) in geo.REGION_BOUNDS.items():
        m = reg == region
        for kind, sgn in ((kb, 1.0), (ka, -1.0)):
            target = {geo.Bound.W: c_w, geo.Bound.WL: c_wl,
                      geo.Bound.EMIT: c_e, geo.Bound.ABS: c_a}[kind]
            target[m] += sgn
    # minus the gauge term along p p
    c_w -= T1 - T3
    c_wl += T2 - T4
    w = g.x0 - g.z
    ze = geo.emit_zeta(g)
    za = geo.abs_zeta(g, cfg.distance)
    k = cfg.kappa
    coef_pp = k * (_log_where(c_w, w) + _log_where(c_wl, w - cfg.length)
                   + _log_where(c_e, ze) + _log_where(c_a, za))
    pp = np.outer(P_VEC, P_VEC)

    def sym(v):
        return P_VEC[:, None] * v[..., None, :] + v[..., :, None] * P_VEC[None, :]

    ge = geo.bound_gradient(geo.Bound.EMIT, g, cfg)
    ga_ = geo.bound_gradient(geo.Bound.ABS, g, cfg)
    le = _log_where(T1 - T2, ze)
    la = _log_where(T3 - T4, za)
    return (coef_pp[..., None, None] * pp
            + 0.5 * k * le[..., None, None] * sym(ge)
            - 0.5 * k * la[..., None, None] * sym(ga_))


def transformed_h_direct(X, cfg: PulseConfig, reg=None, include_absorption: bool = True):
    """``h pp - d xi - d xi`` evaluated term by term (reference for the above)."""
    X = np.asarray(X, dtype=float)
    _require_circular(cfg)
    h = field_arrays(X, cfg, reg=reg, grad=False).h
    _, dpsi = psi_arrays(X, cfg, reg, include_absorption)
    pp = np.outer(P_VEC, P_VEC)
    sym = P_VEC[:, None] * dpsi[..., None, :] + dpsi[..., :, None] * P_VEC[None, :]
    return h[..., None, None] * pp - 0.5 * cfg.kappa * sym


@dataclass(frozen=True)
class TransformedH:
    components: MetricComponents
    on_front: bool


def transformed_h(e: Event, cfg: PulseConfig, include_absorption: bool = True) -> TransformedH:
    X = e.coords(cfg.constants.c)
    vals = transformed_h_arrays(X, cfg, include_absorption=include_absorption)
    return TransformedH(MetricComponents(np.asarray(vals)), bool(geo.near_front(X, cfg)))


def riemann_transformed(X, cfg: PulseConfig, include_absorption: bool = True,
                        steps: Optional[np.ndarray] = None) -> np.ndarray:
    """Finite-difference Riemann tensor of ``h~`` (region forced to each centre)."""
    from . import fd
    from .curvature import riemann_fd_metric

    X = np.asarray(X, dtype=float)
    reg = geo.regions(X, cfg)
    if steps is None:
        # the ln(ct - z) pieces cancel between h and the gauge term
        steps = fd.feature_steps(X, cfg, reg, ignore=(geo.Bound.W, geo.Bound.WL))
    rr = np.asarray(reg)[..., None]

    def metric(P):
        return transformed_h_arrays(P, cfg, reg=rr, include_absorption=include_absorption)

    return riemann_fd_metric(metric, X, steps)
