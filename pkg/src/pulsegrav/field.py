"""Metric perturbation of the pulse and its first derivatives.

The only nonzero components are ``h00 = hzz = -h0z = h``, with

    h = (4GA/c^4) * int_{zeta_a}^{zeta_b} u(zeta - (ct - z)) / zeta  dzeta.

Circular polarization gives ``kappa * ln(zeta_b / zeta_a)``. Linear
polarization, with ``k = 2 omega / c`` and ``A = k (ct - z) + 2 phase``, gives

    kappa * [ln zeta - cos A Ci(k zeta) - sin A Si(k zeta)]  between the bounds.

Gradients come from differentiating these closed forms through the region's
bound functions; the quadrature route integrates the retarded potential
directly in z' and is kept as the independent check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np
from scipy import integrate

from . import geometry as geo
from .errors import AxisSingularityError, QuadratureError
from .geometry import REGION_BOUNDS, Event, Region, RegionTag
from .model import Circular, PulseConfig, energy_density
from .special import si_ci

P_VEC = np.array([1.0, 0.0, 0.0, -1.0])  # h_{mu nu} = h p_mu p_nu
ETA = np.diag([-1.0, 1.0, 1.0, 1.0])


class Method(Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    FINITE_DIFFERENCE = "finite_difference"


@dataclass(frozen=True)
class FieldSample:
    h: float
    grad: np.ndarray  # (d/dct, d/dx, d/dy, d/dz) h, 1/m
    region: RegionTag
    method: Method = Method.CLOSED_FORM
    on_front: bool = False


@dataclass(frozen=True)
class MetricComponents:
    """Symmetric 4x4 ``h_{mu nu}`` in (ct, x, y, z) order."""

    values: np.ndarray

    @classmethod
    def from_scalar(cls, h: float) -> "MetricComponents":
        return cls(h * np.outer(P_VEC, P_VEC))

    @property
    def h00(self):
        return self.values[0, 0]

    @property
    def hzz(self):
        return self.values[3, 3]

    @property
    def h0z(self):
        return self.values[0, 3]

    def line_element(self, dX) -> float:
        """ds^2 = (eta + h)_{mu nu} dX^mu dX^nu for dX = (c dt, dx, dy, dz)."""
        dX = np.asarray(dX, dtype=float)
        return float(dX @ (ETA + self.values) @ dX)


class GradH(NamedTuple):
    value: np.ndarray
    on_front: bool


class FieldArrays(NamedTuple):
    region: np.ndarray
    h: np.ndarray
    grad: np.ndarray
    on_front: np.ndarray
    axis: np.ndarray  # True where the axis guard blanked the sample


def profile_shape(cfg: PulseConfig, s):
    """u(s) / u0."""
    pol = cfg.polarization
    if isinstance(pol, Circular):
        return np.ones_like(np.asarray(s, dtype=float))
    return 2.0 * np.sin(-pol.omega * np.asarray(s) / cfg.constants.c + pol.phase) ** 2


def profile_integral(cfg: PulseConfig, za, zb, w):
    """Return ``(I, dI/dw)`` for ``I = int_za^zb (u(zeta - w)/u0) / zeta dzeta``."""
    za = np.asarray(za, dtype=float)
    zb = np.asarray(zb, dtype=float)
    log_ratio = np.log(zb / za)
    pol = cfg.polarization
    if isinstance(pol, Circular):
        return log_ratio, np.zeros_like(log_ratio)
    k = 2.0 * pol.omega / cfg.constants.c
    A = k * np.asarray(w, dtype=float) + 2.0 * pol.phase
    si_a, ci_a = si_ci(k * za)
    si_b, ci_b = si_ci(k * zb)
    dci = ci_b - ci_a
    dsi = si_b - si_a
    cA, sA = np.cos(A), np.sin(A)
    return log_ratio - cA * dci - sA * dsi, k * (sA * dci - cA * dsi)


def field_arrays(X, cfg: PulseConfig, reg=None, grad: bool = True) -> FieldArrays:
    """Vectorized closed-form field over events ``X[..., 4] = (ct, x, y, z)``.

    ``reg`` forces the region formulas (used by finite-difference stencils
    and the geodesic integrator to get one-sided values at fronts). Samples
    inside II-V closer than ``cfg.rho_min`` to the axis come back as NaN with
    ``axis=True``.
    """
    X = np.asarray(X, dtype=float)
    shape = X.shape[:-1]
    Xf = X.reshape(-1, 4)
    g = geo.geometry(Xf, cfg)
    f = geo.fronts(g, cfg)
    if reg is None:
        regs = geo.region_from_fronts(f)
    else:
        regs = np.broadcast_to(np.asarray(reg, dtype=np.int8), shape).reshape(-1).copy()
    n = Xf.shape[0]
    h = np.zeros(n)
    dh = np.zeros((n, 4))
    kappa = cfg.kappa
    w_all = g.x0 - g.z
    for region, (ka, kb) in REGION_BOUNDS.items():
        m = regs == region
        if not m.any():
            continue
        gm = geo.Geometry(*(a[m] for a in g))
        wm = w_all[m]
        za = geo.bound_value(ka, gm, cfg)
        zb = geo.bound_value(kb, gm, cfg)
        with np.errstate(divide="ignore", invalid="ignore"):
            I, J = profile_integral(cfg, za, zb, wm)
        h[m] = kappa * I
        if grad:
            ga = geo.bound_gradient(ka, gm, cfg)
            gb = geo.bound_gradient(kb, gm, cfg)
            with np.errstate(divide="ignore", invalid="ignore"):
                fa = profile_shape(cfg, za - wm) / za
                fb = profile_shape(cfg, zb - wm) / zb
                dh[m] = kappa * (fb[:, None] * gb - fa[:, None] * ga + J[:, None] * P_VEC)
    contact = (regs != Region.I_MINUS) & (regs != Region.I_PLUS)
    axis = contact & (g.rho < cfg.rho_min)
    h[axis] = np.nan
    dh[axis] = np.nan
    scale = np.maximum(np.abs(g.x0), cfg.length)[:, None]
    on_front = np.any(np.abs(f) <= 1e-12 * scale, axis=-1)
    return FieldArrays(regs.reshape(shape), h.reshape(shape), dh.reshape(shape + (4,)),
                       on_front.reshape(shape), axis.reshape(shape))


def gradient_scale(X, cfg: PulseConfig, reg=None) -> np.ndarray:
    """Largest single contribution to the closed-form gradient, per event.

    The gradient is a sum of bound terms that can cancel (near the axis in
    region V the two source-end terms nearly do); differences against it are
    only meaningful relative to this scale.
    """
    X = np.asarray(X, dtype=float)
    shape = X.shape[:-1]
    Xf = X.reshape(-1, 4)
    g = geo.geometry(Xf, cfg)
    regs = geo.regions(Xf, cfg) if reg is None else np.broadcast_to(
        np.asarray(reg, dtype=np.int8), shape).reshape(-1)
    out = np.zeros(Xf.shape[0])
    w_all = g.x0 - g.z
    for region, (ka, kb) in REGION_BOUNDS.items():
        m = regs == region
        if not m.any():
            continue
        gm = geo.Geometry(*(a[m] for a in g))
        wm = w_all[m]
        za = geo.bound_value(ka, gm, cfg)
        zb = geo.bound_value(kb, gm, cfg)
        with np.errstate(divide="ignore", invalid="ignore"):
            _, J = profile_integral(cfg, za, zb, wm)
            ta = np.abs(profile_shape(cfg, za - wm) / za)[:, None] * np.abs(geo.bound_gradient(ka, gm, cfg))
            tb = np.abs(profile_shape(cfg, zb - wm) / zb)[:, None] * np.abs(geo.bound_gradient(kb, gm, cfg))
        out[m] = cfg.kappa * np.max(np.maximum(np.maximum(ta, tb), np.abs(J)[:, None]), axis=-1)
    return out.reshape(shape)


def _guard(e: Event, cfg: PulseConfig, tag: RegionTag):
    if tag.tag.in_contact and e.rho < cfg.rho_min:
        raise AxisSingularityError(
            f"event at rho={e.rho:.3g} m is inside the axis guard rho_min={cfg.rho_min:.3g} m "
            f"in region {tag.tag.label}"
        )


def h_closed(e: Event, cfg: PulseConfig) -> float:
    tag = geo.classify(e, cfg)
    _guard(e, cfg, tag)
    if not tag.tag.in_contact:
        return 0.0
    fa = field_arrays(e.coords(cfg.constants.c), cfg, reg=tag.tag, grad=False)
    return float(fa.h)


def grad_h(e: Event, cfg: PulseConfig) -> GradH:
    """Analytic 4-gradient ``(d/dct, d/dx, d/dy, d/dz) h`` in 1/m.

    On a shell front the value from the later (interior) region is returned
    and ``on_front`` is set.
    """
    tag = geo.classify(e, cfg)
    _guard(e, cfg, tag)
    fa = field_arrays(e.coords(cfg.constants.c), cfg, reg=tag.tag)
    return GradH(np.array(fa.grad, dtype=float), bool(fa.on_front))


def field_sample(e: Event, cfg: PulseConfig) -> FieldSample:
    tag = geo.classify(e, cfg)
    _guard(e, cfg, tag)
    fa = field_arrays(e.coords(cfg.constants.c), cfg, reg=tag.tag)
    return FieldSample(float(fa.h), np.array(fa.grad), tag, Method.CLOSED_FORM, bool(fa.on_front))


def h_quadrature(e: Event, cfg: PulseConfig, tol: float = 1e-9, limit: int = 10000) -> float:
    """Adaptive quadrature of the retarded integral over the source segment ``[a, b]``.

    Integrates ``(4GA/c^4) u(z' - ct_ret(z')) / sqrt(rho^2 + (z'-z)^2)`` in z',
    with the bounds taken from the light-cone/world-sheet intersections.
    """
    tag = geo.classify(e, cfg)
    _guard(e, cfg, tag)
    bounds = geo.integration_bounds(e, cfg)
    if bounds is None:
        return 0.0
    a, b = bounds
    if not b > a:
        return 0.0
    ct = cfg.constants.c * e.t
    rho2 = e.rho**2
    z = e.z

    def integrand(zp):
        dist = math.sqrt(rho2 + (zp - z) ** 2)
        return energy_density(cfg, zp - ct + dist) / dist

    points = [z] if a < z < b else None
    res = integrate.quad(integrand, a, b, points=points, epsabs=0.0, epsrel=tol,
                         limit=limit, full_output=1)
    val, abserr = res[0], res[1]
    if len(res) > 3 and abserr > 10 * tol * abs(val):
        raise QuadratureError(f"quadrature did not converge: {res[3]}", abserr=abserr)
    return cfg.coupling * val


def metric_components(e: Event, cfg: PulseConfig) -> MetricComponents:
    return MetricComponents.from_scalar(h_closed(e, cfg))


def field_sample_quadrature(e: Event, cfg: PulseConfig, tol: float = 1e-9) -> FieldSample:
    tag = geo.classify(e, cfg)
    return FieldSample(h_quadrature(e, cfg, tol), np.full(4, np.nan), tag, Method.QUADRATURE)
