"""Central finite differences with one Richardson extrapolation.

Stencils are anisotropic: the time/longitudinal step and the transverse step
are chosen separately from the local feature scales of the region formulas,
since near the axis the field varies on the scale rho transversally but on
the scale r (or the shell thickness) along ct and z.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np

from . import geometry as geo
from .geometry import REGION_BOUNDS, Bound
from .model import PulseConfig

STEP_FRACTION = 1.0 / 50.0


def feature_steps(X, cfg: PulseConfig, reg=None, fraction: float = STEP_FRACTION,
                  ignore=()) -> np.ndarray:
    """Per-axis steps ``(..., 4)`` for the stencil around each event.

    Bounds listed in ``ignore`` do not limit the steps (for fields that do
    not depend on them).
    """
    X = np.asarray(X, dtype=float)
    g = geo.geometry(X, cfg)
    if reg is None:
        reg = geo.region_from_fronts(geo.fronts(g, cfg))
    reg = np.broadcast_to(reg, g.x0.shape)
    base = cfg.length
    lam = cfg.wavelength
    if lam is not None:
        base = min(base, lam / 8.0)
    long = np.full(g.x0.shape, base)
    trans = np.full(g.x0.shape, base)
    w = g.x0 - g.z
    long_scale = {
        Bound.EMIT: g.r,
        Bound.W: np.abs(w),
        Bound.WL: np.abs(w - cfg.length),
        Bound.ABS: g.d,
    }
    # r - z is a function of rho on the scale rho only ahead of the source point
    trans_scale = {
        Bound.EMIT: np.maximum(g.rho, geo.emit_zeta(g)),
        Bound.ABS: np.maximum(g.rho, geo.abs_zeta(g, cfg.distance)),
    }
    for region, kinds in REGION_BOUNDS.items():
        m = reg == region
        for k in kinds:
            if k in ignore:
                continue
            long = np.where(m, np.minimum(long, long_scale[k]), long)
            if k in trans_scale:
                trans = np.where(m, np.minimum(trans, trans_scale[k]), trans)
    trans = np.where(trans > 0, trans, long)
    steps = np.stack([long, trans, trans, long], axis=-1) * fraction
    return steps


def null_steps(X, cfg: PulseConfig, reg=None, fraction: float = STEP_FRACTION) -> np.ndarray:
    """Steps ``(..., 3)`` along ``(d0 + dz, dx, dy)``.

    ``ct - z`` is constant along ``d0 + dz``, so the pulse-edge bounds do not
    limit that step; the source-end bounds vary there on the scales r and d.
    """
    X = np.asarray(X, dtype=float)
    g = geo.geometry(X, cfg)
    if reg is None:
        reg = geo.region_from_fronts(geo.fronts(g, cfg))
    reg = np.broadcast_to(reg, g.x0.shape)
    four = feature_steps(X, cfg, reg, fraction)
    base = cfg.length
    if cfg.wavelength is not None:
        base = min(base, cfg.wavelength / 8.0)
    k = np.full(g.x0.shape, base)
    k_scale = {Bound.EMIT: g.r, Bound.ABS: g.d}
    for region, kinds in REGION_BOUNDS.items():
        m = reg == region
        for kind in kinds:
            if kind in k_scale:
                k = np.where(m, np.minimum(k, k_scale[kind]), k)
    return np.stack([k * fraction, four[..., 1], four[..., 2]], axis=-1)


@lru_cache(maxsize=None)
def _offsets_gradient(n: int = 4):
    offs = []
    for i in range(n):
        for sgn in (1.0, -1.0):
            o = np.zeros(n)
            o[i] = sgn
            offs.append(o)
    return np.array(offs)


@lru_cache(maxsize=None)
def _offsets_hessian(n: int = 4):
    offs = [np.zeros(n)]
    offs.extend(_offsets_gradient(n))
    for i, j in combinations(range(n), 2):
        for si in (1.0, -1.0):
            for sj in (1.0, -1.0):
                o = np.zeros(n)
                o[i], o[j] = si, sj
                offs.append(o)
    return np.array(offs)


def stencil(X, steps, offsets):
    X = np.asarray(X, dtype=float)
    return X[..., None, :] + offsets * steps[..., None, :]


def gradient(func, X, steps):
    """Richardson-extrapolated central-difference gradient of a scalar ``func``.

    ``func`` maps ``(..., n)`` coordinates to ``(...)`` values; the result has
    shape ``(..., n)``.
    """
    steps = np.asarray(steps, dtype=float)
    n = steps.shape[-1]
    d = []
    for s in (steps, steps / 2):
        vals = func(stencil(X, s, _offsets_gradient(n)))
        d.append(np.stack([(vals[..., 2 * i] - vals[..., 2 * i + 1]) / (2 * s[..., i])
                           for i in range(n)], axis=-1))
    return (4 * d[1] - d[0]) / 3


def _hessian_once(func, X, s):
    n = s.shape[-1]
    vals = func(stencil(X, s, _offsets_hessian(n)))  # (..., K, *tail)
    nb = s.ndim - 1
    tail = vals.ndim - nb - 1
    expand = (slice(None),) * nb

    def pick(k):
        return vals[expand + (k,)]

    def step(i):
        return s[..., i].reshape(s.shape[:-1] + (1,) * tail)

    f0 = pick(0)
    H = np.empty(vals.shape[:nb] + (n, n) + vals.shape[nb + 1:])
    for i in range(n):
        hi = step(i)
        H[expand + (i, i)] = (pick(1 + 2 * i) - 2 * f0 + pick(2 + 2 * i)) / (hi * hi)
    for p, (i, j) in enumerate(combinations(range(n), 2)):
        k = 1 + 2 * n + 4 * p
        mixed = (pick(k) - pick(k + 1) - pick(k + 2) + pick(k + 3)) / (4 * step(i) * step(j))
        H[expand + (i, j)] = mixed
        H[expand + (j, i)] = mixed
    return H


def hessian(func, X, steps):
    """Richardson-extrapolated central-difference Hessian.

    ``func`` maps ``(..., n)`` to ``(..., *tail)``; the result is
    ``(..., n, n, *tail)``.
    """
    steps = np.asarray(steps, dtype=float)
    H1 = _hessian_once(func, X, steps)
    H2 = _hessian_once(func, X, steps / 2)
    return (4 * H2 - H1) / 3


def snap_null(X, k_steps, bits: int = 40):
    """Round ``ct`` and ``z`` to a binary grid ``2^-bits`` relative, and the
    steps along ``d0 + dz`` to multiples of four grid units.

    Shifting both coordinates by such a step is then exact, so ``ct - z`` is
    reproduced bit for bit across the stencil and a field that depends on
    ``ct - z`` alone differences to exactly zero. The event moves by at most
    one grid unit.
    """
    X = np.array(X, dtype=float, copy=True)
    m = np.maximum(np.abs(X[..., 0]), np.abs(X[..., 3]))
    m = np.where(m > 0, m, 1.0)
    _, ex = np.frexp(m)
    q = np.ldexp(1.0, ex - bits)
    X[..., 0] = np.round(X[..., 0] / q) * q
    X[..., 3] = np.round(X[..., 3] / q) * q
    k = np.maximum(np.round(np.asarray(k_steps) / (4 * q)), 1.0) * 4 * q
    return X, k


def hessian_stencil_points(X, steps):
    """All coordinates touched by :func:`hessian` (both step sizes)."""
    steps = np.asarray(steps, dtype=float)
    offs = _offsets_hessian(steps.shape[-1])
    return np.concatenate([stencil(X, steps, offs), stencil(X, steps / 2, offs)], axis=-2)
