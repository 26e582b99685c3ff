"""Light-cone bookkeeping for the pulse world sheet.

Coordinates are handled internally as arrays ``X[..., 4] = (ct, x, y, z)`` in
metres. An observation event lies in one of six causal regions defined by the
arrival of the four corner signals of the world sheet (start/end of emission
at z=0, start/end of absorption at z=D). Inside regions II-V the retarded
integral runs over an interval whose image under

    zeta(z') = (z' - z) + sqrt(rho^2 + (z' - z)^2)

is ``[zeta_a, zeta_b]``, each bound being one of four elementary functions:

    EMIT  r - z          (start of the world sheet, z'=0)
    W     ct - z         (pulse front)
    WL    ct - z - L     (pulse back)
    ABS   r_D - z        (end of the world sheet, z'=D)
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple, Optional

import numpy as np

from .model import PulseConfig


class Region(IntEnum):
    I_MINUS = 0
    II = 1
    III = 2
    IV = 3
    V = 4
    I_PLUS = 5

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> "Region":
        for reg, lab in _LABELS.items():
            if lab == label or reg.name == label:
                return reg
        raise KeyError(label)

    @property
    def in_contact(self) -> bool:
        return self not in (Region.I_MINUS, Region.I_PLUS)


_LABELS = {
    Region.I_MINUS: "I-",
    Region.II: "II",
    Region.III: "III",
    Region.IV: "IV",
    Region.V: "V",
    Region.I_PLUS: "I+",
}


class Bound(IntEnum):
    EMIT = 0
    W = 1
    WL = 2
    ABS = 3


# (lower, upper) bound kinds per region
REGION_BOUNDS = {
    Region.II: (Bound.EMIT, Bound.W),
    Region.III: (Bound.WL, Bound.W),
    Region.IV: (Bound.WL, Bound.ABS),
    Region.V: (Bound.EMIT, Bound.ABS),
}


@dataclass(frozen=True)
class Event:
    """Observation event; ``t`` in seconds, positions in metres."""

    t: float
    x: float
    y: float
    z: float

    @property
    def rho(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def r(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def r_d(self, cfg: PulseConfig) -> float:
        D = cfg.distance
        return math.sqrt(self.rho**2 + (self.z - D) ** 2) + D

    def lightcone(self, c: float) -> tuple[float, float]:
        """(u, v) = (ct - z, ct + z)."""
        ct = c * self.t
        return ct - self.z, ct + self.z

    def coords(self, c: float) -> np.ndarray:
        return np.array([c * self.t, self.x, self.y, self.z])

    @classmethod
    def from_coords(cls, X, c: float) -> "Event":
        x0, x, y, z = (float(v) for v in X)
        return cls(x0 / c, x, y, z)


@dataclass(frozen=True)
class RegionTag:
    tag: Region
    zeta_a: Optional[float] = None
    zeta_b: Optional[float] = None


class ShellBoundaries(NamedTuple):
    a_bar: float
    b_bar: float
    a_valid: bool
    b_valid: bool


# ----------------------------------------------------------------------------
# vectorized kernels


class Geometry(NamedTuple):
    x0: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    rho: np.ndarray
    r: np.ndarray
    d: np.ndarray  # distance to the absorber point (0, 0, D)


def geometry(X, cfg: PulseConfig) -> Geometry:
    X = np.asarray(X, dtype=float)
    x0, x, y, z = X[..., 0], X[..., 1], X[..., 2], X[..., 3]
    rho = np.hypot(x, y)
    r = np.hypot(rho, z)
    d = np.hypot(rho, z - cfg.distance)
    return Geometry(x0, x, y, z, rho, r, d)


def emit_zeta(g: Geometry) -> np.ndarray:
    """r - z without cancellation for z > 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        fwd = g.rho**2 / (g.r + g.z)
    return np.where(g.z > 0, fwd, g.r - g.z)


def abs_zeta(g: Geometry, D: float) -> np.ndarray:
    """r_D - z = d + D - z without cancellation for z > D."""
    dz = g.z - D
    with np.errstate(divide="ignore", invalid="ignore"):
        fwd = g.rho**2 / (g.d + dz)
    return np.where(dz > 0, fwd, g.d - dz)


def fronts(g: Geometry, cfg: PulseConfig) -> np.ndarray:
    """Signed front functions ct - (arrival), shape (..., 4).

    Columns: emission start (r), emission end (r+L), absorption start (r_D),
    absorption end (r_D+L). The event is past a front when the value is >= 0.

    Evaluated as ``(ct - z) - zeta_bound`` with the cancellation-free bound
    forms, so the classification agrees with the bounds used by the field.
    """
    L = cfg.length
    w = g.x0 - g.z
    ze = emit_zeta(g)
    za = abs_zeta(g, cfg.distance)
    return np.stack([w - ze, w - L - ze, w - za, w - L - za], axis=-1)


def region_from_fronts(f) -> np.ndarray:
    f = np.asarray(f)
    s1, s2, s3, s4 = (f[..., k] >= 0 for k in range(4))
    reg = np.full(s1.shape, int(Region.II), dtype=np.int8)
    reg = np.where(s2 & ~s3, int(Region.III), reg)
    reg = np.where(s2 & s3, int(Region.IV), reg)
    reg = np.where(~s2 & s3, int(Region.V), reg)
    reg = np.where(s4, int(Region.I_PLUS), reg)
    reg = np.where(~s1, int(Region.I_MINUS), reg)
    return reg.astype(np.int8)


def regions(X, cfg: PulseConfig) -> np.ndarray:
    return region_from_fronts(fronts(geometry(X, cfg), cfg))


def near_front(X, cfg: PulseConfig, rtol: float = 1e-12) -> np.ndarray:
    """True where the event sits on a shell front (to ``rtol`` of ct)."""
    g = geometry(X, cfg)
    f = fronts(g, cfg)
    scale = np.maximum(np.abs(g.x0), cfg.length)[..., None]
    return np.any(np.abs(f) <= rtol * scale, axis=-1)


def bound_value(kind: Bound, g: Geometry, cfg: PulseConfig) -> np.ndarray:
    if kind == Bound.EMIT:
        return emit_zeta(g)
    if kind == Bound.W:
        return g.x0 - g.z
    if kind == Bound.WL:
        return g.x0 - g.z - cfg.length
    return abs_zeta(g, cfg.distance)


def bound_gradient(kind: Bound, g: Geometry, cfg: PulseConfig) -> np.ndarray:
    """d zeta / d(ct, x, y, z), shape (..., 4)."""
    one = np.ones_like(g.x0)
    zero = np.zeros_like(g.x0)
    if kind in (Bound.W, Bound.WL):
        return np.stack([one, zero, zero, -one], axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        if kind == Bound.EMIT:
            zeta, dist = emit_zeta(g), g.r
        else:
            zeta, dist = abs_zeta(g, cfg.distance), g.d
        return np.stack([zero, g.x / dist, g.y / dist, -zeta / dist], axis=-1)


def zeta_bounds(X, cfg: PulseConfig, reg=None):
    """Per-event (zeta_a, zeta_b); NaN outside regions II-V.

    ``reg`` forces the region formulas (analytic continuation across fronts);
    by default the region is classified from ``X``.
    """
    g = geometry(X, cfg)
    if reg is None:
        reg = region_from_fronts(fronts(g, cfg))
    reg = np.broadcast_to(np.asarray(reg), g.x0.shape)
    za = np.full(g.x0.shape, np.nan)
    zb = np.full(g.x0.shape, np.nan)
    for region, (ka, kb) in REGION_BOUNDS.items():
        m = reg == region
        if np.any(m):
            za = np.where(m, bound_value(ka, g, cfg), za)
            zb = np.where(m, bound_value(kb, g, cfg), zb)
    return za, zb


# ----------------------------------------------------------------------------
# scalar API


def shell_boundaries(e: Event, cfg: PulseConfig) -> ShellBoundaries:
    """Positions where the observer's past light cone meets the back and front of the pulse world sheet."""
    ct = cfg.constants.c * e.t
    rho2 = e.rho**2

    def solve(den):
        # intersection exists only for a future-pointing cone, i.e. den > 0
        if den > 0:
            return e.z + (den * den - rho2) / (2.0 * den), True
        if den == 0:
            return math.nan, False
        return e.z + (den * den - rho2) / (2.0 * den), False

    a_bar, a_ok = solve(ct - cfg.length - e.z)
    b_bar, b_ok = solve(ct - e.z)
    return ShellBoundaries(a_bar, b_bar, a_ok, b_ok)


def integration_bounds(e: Event, cfg: PulseConfig) -> Optional[tuple[float, float]]:
    """The z' interval [a, b] of the retarded integral, or None when empty."""
    tag = classify(e, cfg).tag
    if not tag.in_contact:
        return None
    sb = shell_boundaries(e, cfg)
    a = sb.a_bar if tag in (Region.III, Region.IV) else 0.0
    b = sb.b_bar if tag in (Region.II, Region.III) else cfg.distance
    return a, b


def classify(e: Event, cfg: PulseConfig) -> RegionTag:
    X = e.coords(cfg.constants.c)
    reg = Region(int(regions(X, cfg)))
    if not reg.in_contact:
        return RegionTag(reg)
    za, zb = zeta_bounds(X, cfg, reg)
    return RegionTag(reg, float(za), float(zb))


def arrival_times(e: Event, cfg: PulseConfig) -> tuple[float, float, float, float]:
    """(t1, t2, t3, t4): arrival of emission start/end and absorption start/end."""
    c, L = cfg.constants.c, cfg.length
    t1 = e.r / c
    t3 = e.r_d(cfg) / c
    return t1, t1 + L / c, t3, t3 + L / c


def zeta(zprime, e: Event):
    dz = np.asarray(zprime, dtype=float) - e.z
    root = np.sqrt(e.rho**2 + dz * dz)
    with np.errstate(divide="ignore", invalid="ignore"):
        behind = e.rho**2 / (root - dz)
    out = np.where(dz < 0, behind, dz + root)
    return out[()] if out.ndim == 0 else out
