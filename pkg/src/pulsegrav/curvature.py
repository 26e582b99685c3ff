"""Linearized Riemann tensor of the pulse field.

For ``h_{mu nu} = h p_mu p_nu`` every component follows from the Hessian
``H = dd h``; only three families are independent:

    R_0z0z = -1/2 (d0 + dz)^2 h
    R_0z0i = -1/2 d_i (d0 + dz) h
    R_0i0j = -1/2 d_i d_j h

The finite-difference route works for any metric perturbation (it is reused
on the gauge-transformed field). The region-II closed forms and the near-axis
pp-wave limit are kept separate as oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import fd
from . import geometry as geo
from .errors import AxisSingularityError, DomainError
from .field import ETA, P_VEC, field_arrays
from .geometry import Event, Region
from .model import SI, PulseConfig, energy_density, energy_density_derivative

FAMILY_NAMES = ("R0z0z", "R0z0x", "R0z0y", "R0x0x", "R0x0y", "R0y0y")


@dataclass(frozen=True)
class RiemannSample:
    """Independent families in 1/m^2; the rest follow from the pp structure."""

    R_0z0z: float
    R_0z0i: np.ndarray  # (x, y)
    R_0i0j: np.ndarray  # 2x2 symmetric
    flag: bool = False
    method: str = "finite_difference"

    @classmethod
    def from_families(cls, row, flag=False, method="finite_difference") -> "RiemannSample":
        row = np.asarray(row, dtype=float)
        return cls(float(row[0]), row[1:3].copy(),
                   np.array([[row[3], row[4]], [row[4], row[5]]]), bool(flag), method)

    @classmethod
    def from_tensor(cls, R, flag=False, method="finite_difference") -> "RiemannSample":
        return cls.from_families(families_from_tensor(R), flag, method)

    def families(self) -> np.ndarray:
        return np.array([self.R_0z0z, self.R_0z0i[0], self.R_0z0i[1],
                         self.R_0i0j[0, 0], self.R_0i0j[0, 1], self.R_0i0j[1, 1]])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.families())))

    def tensor(self) -> np.ndarray:
        """Full ``R_{nu rho sigma alpha}`` (covariant, 4^4)."""
        H = np.zeros((4, 4))
        H[0, 0] = -2.0 * self.R_0z0z
        H[0, 1:3] = H[1:3, 0] = -2.0 * self.R_0z0i
        H[1:3, 1:3] = -2.0 * self.R_0i0j
        return riemann_from_hessian(H)


@dataclass(frozen=True)
class GwComparison:
    R_pulse: float
    omega_gw: float
    h_plus_equiv: float

    def to_dict(self) -> dict:
        return {"R_pulse": self.R_pulse, "omega_gw": self.omega_gw,
                "h_plus_equiv": self.h_plus_equiv}


# ----------------------------------------------------------------------------
# tensor assembly


def riemann_from_second_derivatives(D) -> np.ndarray:
    """``D[..., a, b, m, n] = d_a d_b h_mn`` -> ``R[..., n, r, s, a]``."""
    D = np.asarray(D, dtype=float)
    t1 = np.einsum("...rsna->...nrsa", D)
    t2 = np.einsum("...nsra->...nrsa", D)
    t3 = np.einsum("...rans->...nrsa", D)
    t4 = np.einsum("...anrs->...nrsa", D)
    return 0.5 * (t1 - t2 - t3 + t4)


def riemann_from_hessian(H) -> np.ndarray:
    """Riemann tensor of ``h p p`` given the scalar Hessian ``H[..., a, b]``."""
    H = np.asarray(H, dtype=float)
    pp = np.outer(P_VEC, P_VEC)
    return riemann_from_second_derivatives(H[..., :, :, None, None] * pp)


def families_from_tensor(R) -> np.ndarray:
    R = np.asarray(R)
    return np.stack([R[..., 0, 3, 0, 3], R[..., 0, 3, 0, 1], R[..., 0, 3, 0, 2],
                     R[..., 0, 1, 0, 1], R[..., 0, 1, 0, 2], R[..., 0, 2, 0, 2]], axis=-1)


def families_from_hessian(H) -> np.ndarray:
    H = np.asarray(H)
    s = H[..., 0, :] + H[..., 3, :]  # (d0 + dz) d_b
    return np.stack([
        -0.5 * (s[..., 0] + s[..., 3]),
        -0.5 * s[..., 1],
        -0.5 * s[..., 2],
        -0.5 * H[..., 1, 1],
        -0.5 * H[..., 1, 2],
        -0.5 * H[..., 2, 2],
    ], axis=-1)


def symmetry_residuals(R) -> dict:
    """Relative residuals of the algebraic Riemann symmetries."""
    R = np.asarray(R, dtype=float)
    scale = np.max(np.abs(R))
    if scale == 0:
        scale = 1.0
    bianchi = R + np.einsum("nrsa->nsar", R) + np.einsum("nrsa->nars", R)
    return {
        "antisym_first": float(np.max(np.abs(R + np.swapaxes(R, 0, 1))) / scale),
        "antisym_last": float(np.max(np.abs(R + np.swapaxes(R, 2, 3))) / scale),
        "pair_exchange": float(np.max(np.abs(R - np.einsum("nrsa->sanr", R))) / scale),
        "bianchi": float(np.max(np.abs(bianchi)) / scale),
    }


# ----------------------------------------------------------------------------
# finite differences


def _steps(X, cfg, reg, step):
    if step is None:
        return fd.null_steps(X, cfg, reg)
    step = np.asarray(step, dtype=float)
    if np.any(step <= 0):
        raise DomainError("finite-difference step must be positive")
    if step.shape[-1:] == (4,):
        step = step[..., :3]
    return np.broadcast_to(step, np.asarray(X).shape[:-1] + (3,)).astype(float)


# (d0 + dz, dx, dy): every independent family is a second derivative in this span
NULL_BASIS = np.array([[1.0, 0.0, 0.0, 1.0],
                       [0.0, 1.0, 0.0, 0.0],
                       [0.0, 0.0, 1.0, 0.0]])


def stencil_flags(X, cfg: PulseConfig, reg, steps3) -> np.ndarray:
    """True where any stencil point lies outside the centre's region."""
    X = np.asarray(X, dtype=float)
    offs = fd.hessian_stencil_points(np.zeros(X.shape[:-1] + (3,)), steps3)
    pts = X[..., None, :] + offs @ NULL_BASIS
    return np.any(geo.regions(pts, cfg) != np.asarray(reg)[..., None], axis=-1)


def riemann_fd_arrays(X, cfg: PulseConfig, step=None, reg=None):
    """Vectorized finite-difference families.

    Returns ``(families (..., 6), flag (...), region (...))``. Second
    differences are taken along ``d0 + dz`` and the two transverse axes.
    Stencils use the centre's region formulas throughout, so a stencil that
    reaches past a front sees the interior field analytically continued; such
    samples are flagged. Axis-guarded samples come back as NaN. ``reg``
    forces the region (the geodesic-deviation integrator uses this on
    segments between front crossings).
    """
    X = np.asarray(X, dtype=float)
    if reg is None:
        reg = geo.regions(X, cfg)
    else:
        reg = np.broadcast_to(np.asarray(reg, dtype=np.int8), X.shape[:-1])
    steps = _steps(X, cfg, reg, step).copy()
    X, steps[..., 0] = fd.snap_null(X, steps[..., 0])
    rr = reg[..., None]

    def hfun(Y):
        return field_arrays(X[..., None, :] + Y @ NULL_BASIS, cfg, reg=rr, grad=False).h

    H = fd.hessian(hfun, np.zeros(X.shape[:-1] + (3,)), steps)
    fam = -0.5 * np.stack([H[..., 0, 0], H[..., 0, 1], H[..., 0, 2],
                           H[..., 1, 1], H[..., 1, 2], H[..., 2, 2]], axis=-1)
    flat = ~np.isin(reg, (Region.II, Region.III, Region.IV, Region.V))
    fam = np.where(flat[..., None], 0.0, fam)
    flag = stencil_flags(X, cfg, reg, steps) & ~flat
    return fam, flag, reg


def _check_axis(e: Event, cfg: PulseConfig, reg: Region):
    if reg.in_contact and e.rho < cfg.rho_min:
        raise AxisSingularityError(
            f"curvature requested at rho={e.rho:.3g} m inside the axis guard {cfg.rho_min:.3g} m")


def riemann_fd(e: Event, cfg: PulseConfig, step: Optional[float] = None) -> RiemannSample:
    X = e.coords(cfg.constants.c)
    reg = Region(int(geo.regions(X, cfg)))
    _check_axis(e, cfg, reg)
    fam, flag, _ = riemann_fd_arrays(X, cfg, step)
    return RiemannSample.from_families(fam, bool(flag))


def riemann_fd_metric(metric: Callable, X, steps) -> np.ndarray:
    """Full Riemann tensor by finite differences of a general ``h_{mu nu}``.

    ``metric`` maps ``(..., 4)`` events to ``(..., 4, 4)`` components.
    """
    D = fd.hessian(metric, X, steps)
    return riemann_from_second_derivatives(D)


# ----------------------------------------------------------------------------
# closed forms


def riemann_analytic_region2(e: Event, cfg: PulseConfig) -> RiemannSample:
    """Closed-form region-II components, including the profile-derivative terms.

    The profile and its derivative are evaluated at the emission corner of
    the past light cone, ``s = r - ct``.
    """
    reg = geo.classify(e, cfg).tag
    if reg != Region.II:
        raise DomainError(f"closed-form curvature is only available in region II, not {reg.label}")
    _check_axis(e, cfg, reg)
    G, c = cfg.constants.G, cfg.constants.c
    pref = 2.0 * G * cfg.area / c**4
    r = e.r
    X = e.coords(c)
    rmz = float(geo.emit_zeta(geo.geometry(X, cfg)))
    s = r - c * e.t
    u = float(energy_density(cfg, s))
    du = float(energy_density_derivative(cfg, s))
    xi = np.array([e.x, e.y])
    R0z0z = pref / r**2 * (u * e.z / r + du * rmz)
    R0z0i = pref * xi / r**2 * (u / r - du)
    outer = np.outer(xi, xi)
    R0i0j = pref / (r * rmz) * (u * (np.eye(2) - outer / r**2 * (2 * r - e.z) / rmz) + du * outer / r)
    return RiemannSample(float(R0z0z), R0z0i, R0i0j, False, "closed_form")


def riemann_near_axis(e: Event, cfg: PulseConfig) -> RiemannSample:
    """pp-wave limit: transverse block only, ``(4GA/c^4) u (delta - 2 x x / rho^2) / rho^2``."""
    reg = geo.classify(e, cfg).tag
    if reg != Region.II:
        raise DomainError(f"near-axis curvature is defined in region II, not {reg.label}")
    rho = e.rho
    if not rho > 0:
        raise AxisSingularityError("near-axis curvature needs rho > 0")
    c = cfg.constants.c
    u = float(energy_density(cfg, e.z - c * e.t))
    xi = np.array([e.x, e.y])
    R0i0j = cfg.coupling * u / rho**2 * (np.eye(2) - 2.0 * np.outer(xi, xi) / rho**2)
    return RiemannSample(0.0, np.zeros(2), R0i0j, False, "near_axis")


# ----------------------------------------------------------------------------
# tidal and GW comparison


def tidal_from_tensor(R, gammadot, s) -> np.ndarray:
    """``a^mu = eta^{mu nu} R_{nu rho sigma alpha} gdot^rho gdot^sigma s^alpha``."""
    gd = np.asarray(gammadot, dtype=float)
    s = np.asarray(s, dtype=float)
    low = np.einsum("...nrsa,...r,...s,...a->...n", R, gd, gd, s)
    return np.einsum("mn,...n->...m", ETA, low)


def tidal_acceleration(e: Event, gammadot, s, cfg: PulseConfig,
                       sample: Optional[RiemannSample] = None) -> np.ndarray:
    """Relative acceleration of a neighbouring geodesic at separation ``s``.

    Units follow the inputs: with ``gammadot`` in m per unit parameter and
    ``s`` in m the result is m per unit parameter squared.
    """
    if sample is None:
        sample = riemann_fd(e, cfg)
    return tidal_from_tensor(sample.tensor(), gammadot, s)


def gw_equivalent_strain(R0x0x: float, omega_gw: float, c: float = SI.c) -> float:
    if not omega_gw > 0:
        raise DomainError(f"omega_gw must be > 0, got {omega_gw}")
    return R0x0x * c**2 / omega_gw**2


def compare_gw(cfg: PulseConfig, rho: float, omega_gw: float) -> GwComparison:
    """Pulse curvature magnitude ``kappa / rho^2`` against a plane GW of frequency ``omega_gw``."""
    if not rho >= cfg.rho_min or not rho > 0:
        raise DomainError(f"rho={rho} below the axis guard {cfg.rho_min}")
    R = cfg.kappa / rho**2
    return GwComparison(R, omega_gw, gw_equivalent_strain(R, omega_gw, cfg.constants.c))
