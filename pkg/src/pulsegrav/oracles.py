"""Brute-force cross-checks of the production paths.

Each oracle samples its own events from a seeded generator, compares the
production result with an independent route and reports the worst relative
error. Tolerances are at least ten times looser than the internal tolerance
of the method being checked.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import mpmath
import numpy as np

from . import curvature as cv
from . import fd
from . import geometry as geo
from .errors import DomainError, NumericalError, PulsegravError
from .field import field_arrays, gradient_scale, h_closed, h_quadrature
from .geometry import Event, Region
from .model import PulseConfig
from .special import si_ci

TOLERANCES: Dict[str, float] = {
    "h_quadrature": 1e-6,       # quad runs at epsrel 1e-9
    "grad_fd": 1e-5,            # closed-form gradient is exact to rounding
    "riemann_region2": 1e-5,    # closed forms exact, FD truncation ~1e-8
    "si_ci_series": 1e-11,      # Cephes is good to a few ulp
    "region3_flatness": 1e-10,  # relative to kappa / rho^2
}

FRONT_MARGIN = 1e-6

CONTACT = (Region.II, Region.III, Region.IV, Region.V)


@dataclass(frozen=True)
class OracleReport:
    name: str
    samples: int
    max_rel_err: float
    passed: bool
    seed: int
    tolerance: float
    worst_event: Optional[tuple] = None

    def to_dict(self) -> dict:
        return {"name": self.name, "samples": self.samples, "max_rel_err": self.max_rel_err,
                "pass": self.passed, "seed": self.seed, "tolerance": self.tolerance,
                "worst_event": None if self.worst_event is None else list(self.worst_event)}


# ----------------------------------------------------------------------------
# sampling


def _time_window(reg: Region, r: float, rd: float, L: float):
    if reg == Region.II:
        return r, min(r + L, rd)
    if reg == Region.III:
        return r + L, rd
    if reg == Region.IV:
        return max(r + L, rd), rd + L
    if reg == Region.V:
        return rd, r + L
    raise DomainError(f"no time window for region {reg.label}")


def sample_events(cfg: PulseConfig, rng: np.random.Generator, n: int, regions=CONTACT) -> List[Event]:
    """Events log-uniform in rho, uniform in z over [-D/2, 3D/2], with the region
    chosen uniformly from ``regions`` and the time uniform inside its window."""
    c, L, D = cfg.constants.c, cfg.length, cfg.distance
    lo, hi = math.log(10 * max(cfg.rho_min, 1e-300)), math.log(D)
    out: List[Event] = []
    while len(out) < n:
        reg = regions[int(rng.integers(len(regions)))]
        while True:
            rho = math.exp(rng.uniform(lo, hi))
            z = rng.uniform(-D / 2, 3 * D / 2)
            phi = rng.uniform(0, 2 * math.pi)
            r = math.hypot(rho, z)
            rd = math.hypot(rho, z - D) + D
            a, b = _time_window(reg, r, rd, L)
            # finite-difference stencils cannot resolve events closer to a
            # front than this; they are excluded rather than reported
            margin = FRONT_MARGIN * max(b, abs(z), L)
            if b - a > 2 * margin:
                break
        ct = rng.uniform(a + margin, b - margin)
        e = Event(ct / c, rho * math.cos(phi), rho * math.sin(phi), z)
        if geo.classify(e, cfg).tag != reg:  # rounding at a window edge
            continue
        out.append(e)
    return out


def _coords(e: Event):
    return (e.t, e.x, e.y, e.z)


# ----------------------------------------------------------------------------
# Si / Ci by direct summation


def si_ci_series(x: float, dps: int = 40):
    """Si and Ci from the power series (x <= 50) or the asymptotic expansion.

    Summed in multiple precision; the working precision grows with x to
    absorb the cancellation of the alternating terms.
    """
    # the alternating power series loses about x / ln(10) digits to cancellation
    with mpmath.workdps(dps + (int(x / 2.3) if x <= 50 else 0)):
        X = mpmath.mpf(x)
        if x <= 50:
            si = mpmath.mpf(0)
            ci = mpmath.mpf(0)
            term = X  # x^(2n+1)/(2n+1)!
            n = 0
            eps = mpmath.mpf(10) ** (-(dps + 5))
            while True:
                si += term / (2 * n + 1)
                nxt = -term * X / (2 * n + 2)  # x^(2n+2)/(2n+2)! with sign
                ci += nxt / (2 * n + 2)
                term = nxt * X / (2 * n + 3)
                n += 1
                if abs(term) < eps * (abs(si) + 1) and abs(nxt) < eps * (abs(ci) + 1):
                    break
            ci += mpmath.euler + mpmath.log(X)
        else:
            f = mpmath.mpf(0)
            g = mpmath.mpf(0)
            tf = 1 / X
            tg = 1 / (X * X)
            n = 0
            while True:
                f += tf
                g += tg
                nf = -tf * (2 * n + 1) * (2 * n + 2) / (X * X)
                ng = -tg * (2 * n + 2) * (2 * n + 3) / (X * X)
                if abs(nf) >= abs(tf) or abs(nf) < mpmath.mpf(10) ** (-(dps + 5)):
                    break
                tf, tg = nf, ng
                n += 1
            si = mpmath.pi / 2 - f * mpmath.cos(X) - g * mpmath.sin(X)
            ci = f * mpmath.sin(X) - g * mpmath.cos(X)
        return float(si), float(ci)


# ----------------------------------------------------------------------------
# sub-oracles


def _report(name, errs, events, seed):
    errs = np.asarray(errs, dtype=float)
    tol = TOLERANCES[name]
    if errs.size == 0:
        return OracleReport(name, 0, 0.0, True, seed, tol)
    i = int(np.nanargmax(errs)) if np.all(np.isfinite(errs)) else int(np.argmax(~np.isfinite(errs)))
    worst = float(errs[i]) if np.isfinite(errs[i]) else math.inf
    ev = events[i] if events is not None else None
    return OracleReport(name, int(errs.size), worst, bool(worst <= tol), seed, tol,
                        None if ev is None else (_coords(ev) if isinstance(ev, Event) else (ev,)))


def _guarded(name, e, fn):
    try:
        return fn()
    except PulsegravError as exc:
        raise NumericalError(f"oracle {name} failed at event (t, x, y, z)={_coords(e)}: {exc}") from exc


def oracle_h_quadrature(cfg, rng, n, seed):
    events = sample_events(cfg, rng, n)
    errs = []
    for e in events:
        hc = _guarded("h_quadrature", e, lambda: h_closed(e, cfg))
        hq = _guarded("h_quadrature", e, lambda: h_quadrature(e, cfg))
        errs.append(abs(hc - hq) / max(abs(hq), 1e-300))
    return _report("h_quadrature", errs, events, seed)


def oracle_grad_fd(cfg, rng, n, seed):
    events = sample_events(cfg, rng, n)
    c = cfg.constants.c
    X = np.array([e.coords(c) for e in events])
    reg = geo.regions(X, cfg)
    fa = field_arrays(X, cfg, reg=reg)
    steps = fd.feature_steps(X, cfg, reg)

    def hfun(P):
        return field_arrays(P, cfg, reg=reg[:, None], grad=False).h

    g_fd = fd.gradient(hfun, X, steps)
    scale = gradient_scale(X, cfg, reg)
    errs = np.max(np.abs(fa.grad - g_fd), axis=-1) / scale
    return _report("grad_fd", errs, events, seed)


def oracle_riemann_region2(cfg, rng, n, seed):
    events = sample_events(cfg, rng, n, regions=(Region.II,))
    c = cfg.constants.c
    X = np.array([e.coords(c) for e in events])
    fam, _, _ = cv.riemann_fd_arrays(X, cfg)
    errs = []
    for e, row in zip(events, fam):
        ref = _guarded("riemann_region2", e, lambda: cv.riemann_analytic_region2(e, cfg)).families()
        errs.append(np.max(np.abs(row - ref)) / np.max(np.abs(ref)))
    return _report("riemann_region2", errs, events, seed)


def oracle_si_ci(cfg, rng, n, seed):
    xs = np.exp(rng.uniform(math.log(1e-3), math.log(1e3), size=n))
    errs = []
    for x in xs:
        s, c_ = si_ci(float(x))
        s_ref, c_ref = si_ci_series(float(x))
        errs.append(max(abs(s - s_ref) / max(abs(s_ref), 1e-3), abs(c_ - c_ref) / max(abs(c_ref), 1e-3)))
    return _report("si_ci_series", errs, list(xs), seed)


def oracle_region3_flatness(cfg, rng, n, seed):
    events = sample_events(cfg, rng, n, regions=(Region.III,))
    c = cfg.constants.c
    X = np.array([e.coords(c) for e in events])
    fam, _, _ = cv.riemann_fd_arrays(X, cfg)
    rho = np.hypot(X[:, 1], X[:, 2])
    errs = np.max(np.abs(fam), axis=-1) / (cfg.kappa / rho**2)
    return _report("region3_flatness", errs, events, seed)


ORACLES: Dict[str, Callable] = {
    "h_quadrature": oracle_h_quadrature,
    "grad_fd": oracle_grad_fd,
    "riemann_region2": oracle_riemann_region2,
    "si_ci_series": oracle_si_ci,
    "region3_flatness": oracle_region3_flatness,
}


def run_oracle_suite(cfg: PulseConfig, seed: int = 0, n_samples: int = 1000,
                     threads: Optional[int] = None, names=None) -> List[OracleReport]:
    """Run the oracles (all by default) and return their reports sorted by name."""
    if not n_samples >= 1:
        raise DomainError("n_samples must be >= 1")
    if not cfg.kappa > 0:
        raise DomainError("the oracle suite needs a nonzero field (kappa > 0)")
    names = sorted(ORACLES) if names is None else sorted(names)
    seeds = np.random.SeedSequence(seed).spawn(len(ORACLES))
    by_name = dict(zip(sorted(ORACLES), seeds))

    def run(name):
        rng = np.random.default_rng(by_name[name])
        return ORACLES[name](cfg, rng, n_samples, seed)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        reports = list(pool.map(run, names))
    return sorted(reports, key=lambda r: r.name)
