"""Geodesics and geodesic deviation in the pulse metric.

With ``g = eta + h p p`` and ``p = (1, 0, 0, -1)`` the geodesic equations
close exactly in light-cone form. Writing ``udot = v0 - vz``:

    d udot / dlam = -1/2 (d0 + dz) h udot^2
    a_x = 1/2 dx h udot^2,   a_y = 1/2 dy h udot^2
    a_0 = D - 1/2 d0 h udot^2,   a_z = D + 1/2 dz h udot^2
    D   = (dh . v) udot + h d udot / dlam

so no implicit coupling needs to be iterated. Timelike curves use proper time,
null curves coordinate time (``v0 = c`` throughout).

The integrator carries a straight flat-space reference plus the perturbation
``delta`` accumulated by the field. Transverse kicks are of order ``kappa c``
and would otherwise be lost against the absolute coordinates in SI units.
Integration is split at every shell-front crossing (terminal root-finding
events); inside a segment the field formulas of that segment's region are
used throughout, so the right-hand side is smooth.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from . import curvature as cv
from . import geometry as geo
from .errors import AxisSingularityError, DomainError, NumericalError
from .field import ETA, field_arrays
from .geometry import Event, Region
from .model import Circular, PulseConfig


class Kind(Enum):
    TIMELIKE = "timelike"
    NULL = "null"


class ScenarioKind(Enum):
    REST = "rest"
    CO_NULL = "co-null"
    COUNTER_NULL = "counter-null"


@dataclass(frozen=True)
class GeodesicState:
    lam: float
    pos: Event
    vel: np.ndarray  # (v0, vx, vy, vz), m per unit parameter
    kind: Kind
    constraint_residual: float = 0.0


@dataclass(frozen=True)
class DeviationState:
    s: np.ndarray
    sdot: np.ndarray


@dataclass(frozen=True)
class Episode:
    t_start: float
    t_end: float
    region: str
    sign: str  # "attraction", "repulsion" or "none"
    delta_v_radial: float

    def to_dict(self) -> dict:
        return {"t_start": self.t_start, "t_end": self.t_end, "region": self.region,
                "sign": self.sign, "delta_v_radial": self.delta_v_radial}


@dataclass(frozen=True)
class KickSummary:
    delta_vx: float
    phases: List[Episode]
    max_accel: float
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        return {"delta_vx": self.delta_vx, "max_accel": self.max_accel,
                "phases": [p.to_dict() for p in self.phases], "reason": self.reason}


# ----------------------------------------------------------------------------
# right-hand side


def _affine_accel(h, dh, V):
    udot = V[..., 0] - V[..., 3]
    u2 = udot * udot
    k = dh[..., 0] + dh[..., 3]
    uddot = -0.5 * k * u2
    D = np.einsum("...i,...i->...", dh, V) * udot + h * uddot
    return np.stack([D - 0.5 * dh[..., 0] * u2,
                     0.5 * dh[..., 1] * u2,
                     0.5 * dh[..., 2] * u2,
                     D + 0.5 * dh[..., 3] * u2], axis=-1)


def contract_arrays(X, V, cfg: PulseConfig, reg=None) -> np.ndarray:
    """``-Gamma^mu_{ab} V^a V^b`` for arrays of events and velocities."""
    fa = field_arrays(X, cfg, reg=reg)
    return _affine_accel(fa.h, fa.grad, np.asarray(V, dtype=float))


def christoffel_contract(e: Event, vel, cfg: PulseConfig) -> np.ndarray:
    """Affine acceleration ``d^2 X / dlam^2`` at ``e`` for 4-velocity ``vel``."""
    tag = geo.classify(e, cfg).tag
    if tag.in_contact and e.rho < cfg.rho_min:
        raise AxisSingularityError(f"rho={e.rho:.3g} m inside the axis guard")
    return contract_arrays(e.coords(cfg.constants.c), vel, cfg, reg=tag)


def coordinate_acceleration(A, V, c: float) -> np.ndarray:
    """Spatial ``d^2 x / dt^2`` from the affine acceleration and velocity."""
    A = np.asarray(A)
    V = np.asarray(V)
    v0 = V[..., :1]
    return c * c * (A[..., 1:] - V[..., 1:] * A[..., :1] / v0) / (v0 * v0)


def _h(X, cfg, reg=None):
    return field_arrays(X, cfg, reg=reg, grad=False).h


def residual_arrays(X, V, kind: Kind, cfg: PulseConfig, reg=None):
    """``g(v, v)/c^2 - target``; timelike target is -1, null 0."""
    V = np.asarray(V, dtype=float)
    c = cfg.constants.c
    h = _h(X, cfg, reg)
    udot = V[..., 0] - V[..., 3]
    # eta(V, V) split so that the rest-frame -c^2 cancels before rounding
    norm = -(V[..., 0] - c) * (V[..., 0] + c) + np.sum(V[..., 1:] ** 2, axis=-1) + h * udot**2
    res = norm / c**2
    if kind == Kind.NULL:
        res = res - 1.0
    return res


def timelike_velocity(pos: Event, spatial, cfg: PulseConfig) -> np.ndarray:
    """4-velocity ``dX/dtau`` with the given spatial part, normalized to -c^2."""
    c = cfg.constants.c
    h = float(_h(pos.coords(c), cfg))
    vx, vy, vz = (float(v) for v in spatial)
    K = (1 + h) * vz * vz + vx * vx + vy * vy + c * c
    disc = 4 * h * h * vz * vz + 4 * (1 - h) * K
    v0 = (math.sqrt(disc) - 2 * h * vz) / (2 * (1 - h))
    return np.array([v0, vx, vy, vz])


def null_velocity(pos: Event, direction, cfg: PulseConfig) -> np.ndarray:
    """``dX/dt`` of a light ray along ``direction`` (only its orientation is used)."""
    c = cfg.constants.c
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    h = float(_h(pos.coords(c), cfg))
    nz = n[2]
    a = 1 + h * nz * nz
    b = -2 * h * c * nz
    c0 = -(1 - h) * c * c
    s = (-b + math.sqrt(b * b - 4 * a * c0)) / (2 * a)
    return np.concatenate([[c], s * n])


def make_state(pos: Event, vel, kind: Kind, cfg: PulseConfig, lam: float = 0.0) -> GeodesicState:
    vel = np.asarray(vel, dtype=float)
    res = float(residual_arrays(pos.coords(cfg.constants.c), vel, kind, cfg))
    return GeodesicState(lam, pos, vel, kind, res)


# ----------------------------------------------------------------------------
# trajectories


@dataclass
class _Segment:
    lam_a: float
    lam_b: float
    region: Region
    sol: object


@dataclass(frozen=True)
class _ScaledDense:
    """Dense output of a run in ``sigma = (lam - lam0) / T`` evaluated at ``lam``."""

    sol: object
    lam0: float
    T: float

    def __call__(self, lam):
        return self.sol((lam - self.lam0) / self.T)


@dataclass
class Trajectory:
    kind: Kind
    cfg: PulseConfig
    lam: np.ndarray
    X: np.ndarray
    V: np.ndarray
    delta: np.ndarray  # (N, 8) perturbation about the flat reference
    region: np.ndarray
    residual: np.ndarray
    crossings: list
    reason: Optional[str] = None
    segments: list = field(default_factory=list, repr=False)
    reference: tuple = field(default=(), repr=False)

    CSV_HEADER = ("lambda", "t", "x", "y", "z", "vt", "vx", "vy", "vz", "region", "residual")

    @property
    def truncated(self) -> bool:
        return self.reason is not None

    def at(self, lam: float):
        """(X, V) from the dense output at parameter ``lam``."""
        lam0, X0, V0 = self.reference
        for seg in self.segments:
            if seg.lam_a <= lam <= seg.lam_b:
                d = seg.sol(lam)
                return X0 + V0 * (lam - lam0) + d[:4], V0 + d[4:]
        raise DomainError(f"lambda={lam} outside the integrated range")

    def region_at(self, lam: float) -> Region:
        for seg in self.segments:
            if seg.lam_a <= lam <= seg.lam_b:
                return seg.region
        raise DomainError(f"lambda={lam} outside the integrated range")

    def states(self) -> List[GeodesicState]:
        c = self.cfg.constants.c
        return [GeodesicState(float(l), Event.from_coords(x, c), v.copy(), self.kind, float(r))
                for l, x, v, r in zip(self.lam, self.X, self.V, self.residual)]

    def coordinate_velocity(self) -> np.ndarray:
        c = self.cfg.constants.c
        return c * self.V[:, 1:] / self.V[:, :1]

    def coordinate_acceleration(self) -> np.ndarray:
        A = contract_arrays(self.X, self.V, self.cfg, reg=self.region)
        return coordinate_acceleration(A, self.V, self.cfg.constants.c)

    def rows(self):
        c = self.cfg.constants.c
        for l, x, v, reg, res in zip(self.lam, self.X, self.V, self.region, self.residual):
            yield (float(l), float(x[0] / c), float(x[1]), float(x[2]), float(x[3]),
                   float(v[0]), float(v[1]), float(v[2]), float(v[3]), Region(int(reg)).label, float(res))


AXIS_STALL = 1e-3  # rho drop, relative to the segment start, accepted as an axis approach


def _atol(cfg: PulseConfig, tol: float, scale_len: float, noise: float = 0.0) -> np.ndarray:
    """Absolute tolerances for ``(dX, dV)``; ``noise`` floors the dV^0, dV^z entries."""
    c = cfg.constants.c
    k = max(cfg.kappa, 1e-300)
    vel = [max(tol, noise), tol, tol, max(tol, noise)]
    return k * np.array([tol * scale_len] * 4 + [v * c for v in vel])


def _lightcone_noise(X0: np.ndarray, span: float, cfg: PulseConfig) -> float:
    """Relative rounding noise of d_w h, sampled through ``w = ct - z``.

    The time-like force components scale as ``1/zeta`` with ``zeta`` the
    shell bound near ``w``; ``w`` carries an absolute error of an ulp of the
    absolute coordinates, which close to the axis far downstream is a sizable
    fraction of ``zeta``.
    """
    g = geo.geometry(X0, cfg)
    zetas = [float(geo.emit_zeta(g)), float(geo.abs_zeta(g, cfg.distance))]
    zmin = min([zz for zz in zetas if zz > 0] + [cfg.length])
    scale = abs(X0[0]) + abs(X0[3]) + span
    return 16 * np.finfo(float).eps * scale / zmin


def integrate_geodesic(initial: GeodesicState, lam_end: float, cfg: PulseConfig,
                       tol: float = 1e-10, max_step: float = np.inf) -> Trajectory:
    """Integrate from ``initial`` to parameter ``lam_end`` (DOP853).

    The run stops early, with ``reason`` set, if the curve enters the axis
    guard inside a contact region. A constraint drift above ``100 tol``
    raises :class:`NumericalError`.
    """
    c = cfg.constants.c
    kind = initial.kind
    if abs(initial.constraint_residual) > tol:
        raise DomainError(f"initial constraint residual {initial.constraint_residual:.3g} exceeds tol={tol:g}")
    if not lam_end > initial.lam:
        raise DomainError("lam_end must exceed the initial parameter")
    if kind == Kind.NULL and initial.vel[0] != c:
        raise DomainError("null states are parameterized by coordinate time: vel[0] must equal c")
    lam0 = float(initial.lam)
    X0 = initial.pos.coords(c)
    V0 = np.asarray(initial.vel, dtype=float).copy()
    noise = _lightcone_noise(X0, abs(V0[0]) * (lam_end - lam0), cfg)
    atol = _atol(cfg, tol, max(cfg.length, initial.pos.rho), noise)

    crossed = geo.fronts(geo.geometry(X0, cfg), cfg) >= 0

    def region_now():
        return Region(int(geo.region_from_fronts(np.where(crossed, 1.0, -1.0))))

    # the solver runs in sigma = (lam - lam0) / T with T = L / c: its event
    # root finder has an absolute tolerance of a few ulp of sigma, and fronts
    # can be far closer together than a few ulp of lam measured in seconds
    T = cfg.length / c

    def lam_of(sigma):
        return lam0 + T * sigma

    def full(lam, y):
        return X0 + V0 * (lam - lam0) + y[:4], V0 + y[4:]

    def make_rhs(reg):
        def rhs(sigma, y):
            X, V = full(lam_of(sigma), y)
            A = contract_arrays(X, V, cfg, reg=reg)
            if kind == Kind.NULL:
                A = A - V * (A[0] / c)
                A[0] = 0.0
            return T * np.concatenate([y[4:], A])
        return rhs

    def front_event(k):
        def ev(sigma, y):
            X, _ = full(lam_of(sigma), y)
            return float(geo.fronts(geo.geometry(X, cfg), cfg)[k])
        ev.terminal = True
        ev.direction = 1
        return ev

    def axis_event(sigma, y):
        X, _ = full(lam_of(sigma), y)
        return math.hypot(X[1], X[2]) - cfg.rho_min
    axis_event.terminal = True
    axis_event.direction = -1

    # rho - rho_min never changes sign when a step jumps across the axis, so
    # the segment is also cut at the closest approach, where x vx + y vy
    # turns positive, and rho is checked there
    def closest_event(sigma, y):
        X, V = full(lam_of(sigma), y)
        return X[1] * V[1] + X[2] * V[2]
    closest_event.terminal = True
    closest_event.direction = 1

    def approaching(sigma, y):
        X, V = full(lam_of(sigma), y)
        scale = math.hypot(X[1], X[2]) * math.hypot(V[1], V[2])
        return closest_event(sigma, y) < -1e-9 * scale

    lam_list, y_list, reg_list = [np.array([lam0])], [np.zeros((1, 8))], [np.array([int(region_now())])]
    segments, crossings = [], []
    reason = None
    sig, y = 0.0, np.zeros(8)
    sig_end = (lam_end - lam0) / T
    while sig < sig_end:
        lam = lam_of(sig)
        reg = region_now()
        if reg.in_contact and math.hypot(*full(lam, y)[0][1:3]) < cfg.rho_min:
            reason = "axis approach within rho_min"
            break
        pending = [k for k in range(4) if not crossed[k]]
        events = [front_event(k) for k in pending]
        if reg.in_contact:
            events.append(axis_event)
            if approaching(sig, y):
                events.append(closest_event)
        sol = solve_ivp(make_rhs(reg), (sig, sig_end), y, method="DOP853", rtol=tol, atol=atol,
                        events=events or None, dense_output=True, max_step=max_step / T)
        stalled = False
        if sol.status == -1:
            # the 1/rho force near the axis collapses the step size before
            # the curve gets inside rho_min; treat that as reaching the axis
            rho_end = math.hypot(*full(lam_of(sol.t[-1]), sol.y[:, -1])[0][1:3])
            rho_start = math.hypot(*full(lam, y)[0][1:3])
            if not (reg.in_contact and rho_end < AXIS_STALL * rho_start and len(sol.t) > 1):
                raise NumericalError(f"integration failed at lambda={lam:.6g}: {sol.message}")
            stalled = True
        lam_b = lam_of(float(sol.t[-1]))
        segments.append(_Segment(lam, lam_b, reg, _ScaledDense(sol.sol, lam0, T)))
        lam_list.append(lam_of(sol.t[1:]))
        y_list.append(sol.y[:, 1:].T)
        reg_list.append(np.full(len(sol.t) - 1, int(reg)))
        sig, y = float(sol.t[-1]), sol.y[:, -1].copy()
        lam = lam_b
        if stalled:
            reason = f"axis approach within rho_min (step size collapsed at rho={rho_end:.3g} m)"
            break
        if sol.status == 1:
            hits = [(te[0], i) for i, te in enumerate(sol.t_events) if len(te)]
            _, i = min(hits)
            if i < len(pending):
                crossed[pending[i]] = True
                crossings.append((lam, pending[i]))
            elif i == len(pending):
                reason = "axis approach within rho_min"
                break
            # closest approach: the loop head checks rho against the guard
        if sig >= sig_end:
            break

    lam_arr = np.concatenate(lam_list)
    delta = np.concatenate(y_list)
    X = X0 + V0 * (lam_arr - lam0)[:, None] + delta[:, :4]
    V = V0 + delta[:, 4:]
    region = np.concatenate(reg_list).astype(np.int8)
    residual = residual_arrays(X, V, kind, cfg, reg=region)
    traj = Trajectory(kind, cfg, lam_arr, X, V, delta, region, residual, crossings, reason,
                      segments, (lam0, X0, V0))
    # the truncation point of an axis approach may sit inside the guard (NaN)
    worst = float(np.nanmax(np.abs(residual))) if np.any(np.isfinite(residual)) else 0.0
    if worst > 100 * tol:
        raise NumericalError(f"constraint residual {worst:.3g} exceeded 100*tol")
    return traj


# ----------------------------------------------------------------------------
# deviation


@dataclass
class DeviationHistory:
    lam: np.ndarray
    s: np.ndarray
    sdot: np.ndarray
    flag: np.ndarray


def integrate_deviation(base: Trajectory, initial: DeviationState, cfg: PulseConfig,
                        tol: float = 1e-10) -> DeviationHistory:
    """Evolve a separation vector along ``base`` with the tidal contraction.

    Curvature comes from finite differences with the base segment's region
    forced; samples whose stencil straddles a front carry ``flag``.
    """
    lam_out, s_out, sd_out, fl_out = [], [], [], []
    y = np.concatenate([np.asarray(initial.s, float), np.asarray(initial.sdot, float)])
    scale = max(float(np.max(np.abs(y))), 1e-300)
    flagged = []

    def rhs_for(reg):
        def rhs(lam, yy):
            X, V = base.at(lam)
            fam, flag, _ = cv.riemann_fd_arrays(X, cfg, reg=reg)
            flagged.append(bool(flag))
            R = cv.RiemannSample.from_families(fam).tensor()
            return np.concatenate([yy[4:], cv.tidal_from_tensor(R, V, yy[:4])])
        return rhs

    for seg in base.segments:
        if seg.lam_b <= seg.lam_a:
            continue
        flagged.clear()
        sol = solve_ivp(rhs_for(seg.region), (seg.lam_a, seg.lam_b), y, method="DOP853",
                        rtol=tol, atol=tol * scale * 1e-3)
        if sol.status == -1:
            raise NumericalError(f"deviation integration failed: {sol.message}")
        seg_flag = any(flagged)
        start = 0 if not lam_out else 1
        lam_out.append(sol.t[start:])
        s_out.append(sol.y[:4, start:].T)
        sd_out.append(sol.y[4:, start:].T)
        fl_out.append(np.full(len(sol.t) - start, seg_flag))
        y = sol.y[:, -1].copy()
    if not lam_out:
        lam0 = base.lam[0]
        return DeviationHistory(np.array([lam0]), y[None, :4], y[None, 4:], np.array([False]))
    return DeviationHistory(np.concatenate(lam_out), np.concatenate(s_out),
                            np.concatenate(sd_out), np.concatenate(fl_out))


# ----------------------------------------------------------------------------
# scenarios


def _counter_exit_time(start: Event, cfg: PulseConfig) -> float:
    """Flat-space time at which a -z ray from ``start`` leaves the emission shell."""
    c = cfg.constants.c
    a = start.z
    b = c * start.t - cfg.length
    rho2 = start.rho**2
    if a + b <= 0:
        return start.t + (abs(a) + 2 * cfg.length) / c
    T = (rho2 + a * a - b * b) / (2 * (a + b))
    return start.t + max(T, 0.0) / c


def default_end(kind: ScenarioKind, start: Event, cfg: PulseConfig) -> float:
    c, L = cfg.constants.c, cfg.length
    if kind == ScenarioKind.REST:
        return geo.arrival_times(start, cfg)[3] + L / c
    if kind == ScenarioKind.CO_NULL:
        return start.t + (cfg.distance + 2 * L) / c
    return _counter_exit_time(start, cfg) + L / c


def initial_state(kind: ScenarioKind, start: Event, cfg: PulseConfig) -> GeodesicState:
    if kind == ScenarioKind.REST:
        vel = timelike_velocity(start, (0.0, 0.0, 0.0), cfg)
        return make_state(start, vel, Kind.TIMELIKE, cfg, lam=start.t)
    direction = (0.0, 0.0, 1.0) if kind == ScenarioKind.CO_NULL else (0.0, 0.0, -1.0)
    vel = null_velocity(start, direction, cfg)
    if kind == ScenarioKind.CO_NULL:
        vel = np.array([cfg.constants.c, 0.0, 0.0, cfg.constants.c])
    return make_state(start, vel, Kind.NULL, cfg, lam=start.t)


def summarize(traj: Trajectory) -> KickSummary:
    cfg = traj.cfg
    c = cfg.constants.c
    cv_ = traj.coordinate_velocity()
    delta_vx = float(cv_[-1, 0] - cv_[0, 0])
    acc = traj.coordinate_acceleration()
    max_accel = float(np.max(np.hypot(acc[:, 0], acc[:, 1]))) if len(acc) else 0.0
    phases = []
    lam0, X0, V0 = traj.reference
    rho = math.hypot(X0[1], X0[2])
    rhat = np.array([X0[1], X0[2]]) / rho if rho > 0 else np.array([1.0, 0.0])
    for seg in traj.segments:
        if not seg.region.in_contact or seg.lam_b <= seg.lam_a:
            continue
        Xa, Va = traj.at(seg.lam_a)
        Xb, Vb = traj.at(seg.lam_b)
        # impulse of the transverse force; the coordinate velocity also picks
        # up a second-order piece from V^0 where the transverse force is zero
        dv = c * (Vb[1:3] - Va[1:3]) / V0[0]
        dvr = float(dv @ rhat)
        sign = "none" if dvr == 0 else ("attraction" if dvr < 0 else "repulsion")
        phases.append(Episode(float(Xa[0] / c), float(Xb[0] / c), seg.region.label, sign, dvr))
    return KickSummary(delta_vx, phases, max_accel, traj.reason)


def scenario(kind, start: Event, cfg: PulseConfig, tol: float = 1e-10,
             t_end: Optional[float] = None, max_step: float = np.inf):
    """Run one of the canned deflection scenarios; returns ``(trajectory, summary)``."""
    kind = ScenarioKind(kind)
    if not start.rho >= cfg.rho_min or start.rho == 0:
        raise DomainError("scenario start must be off-axis")
    if t_end is None:
        t_end = default_end(kind, start, cfg)
    st = initial_state(kind, start, cfg)
    traj = integrate_geodesic(st, t_end, cfg, tol=tol, max_step=max_step)
    return traj, summarize(traj)


# ----------------------------------------------------------------------------
# rest-particle profile and closed-form references


@dataclass(frozen=True)
class KickProfile:
    t: np.ndarray
    z: np.ndarray
    rho: float
    accel: np.ndarray  # (nz, nt) x-acceleration of a rest particle on y=0, m/s^2
    region: np.ndarray

    def episodes(self, iz: int):
        """Contiguous (t_start, t_end, sign) runs of nonzero acceleration at ``z[iz]``."""
        a = self.accel[iz]
        sgn = np.sign(np.nan_to_num(a))
        out = []
        start = None
        for i, s in enumerate(sgn):
            if start is not None and s != sgn[start]:
                out.append((self.t[start], self.t[i - 1], "attraction" if sgn[start] < 0 else "repulsion"))
                start = None
            if start is None and s != 0:
                start = i
        if start is not None:
            out.append((self.t[start], self.t[-1], "attraction" if sgn[start] < 0 else "repulsion"))
        return out


def kick_profile(z_positions, rho: float, cfg: PulseConfig, t_grid) -> KickProfile:
    """``(c^2/2) dx h`` for a particle at rest at ``(rho, 0, z)`` over ``t_grid``."""
    if not rho >= cfg.rho_min or rho <= 0:
        raise DomainError("kick_profile requires rho >= rho_min")
    c = cfg.constants.c
    z = np.asarray(z_positions, dtype=float)
    t = np.asarray(t_grid, dtype=float)
    T, Z = np.meshgrid(t, z)
    X = np.stack([c * T, np.full_like(T, rho), np.zeros_like(T), Z], axis=-1)
    fa = field_arrays(X, cfg)
    return KickProfile(t, z, rho, 0.5 * c * c * fa.grad[..., 1], fa.region)


def net_kick_rest(cfg: PulseConfig, x: float, z: float) -> float:
    """First-order net ``Delta v_x`` of a rest particle at ``(x, 0, z)``, circular polarization.

    Emission contributes ``-(1 + z/r)``, absorption ``+(1 + (z - D)/d)``, both
    in units of ``c L kappa / (2 x)``.
    """
    if not isinstance(cfg.polarization, Circular):
        raise DomainError("closed-form net kick is derived for circular polarization")
    D = cfg.distance
    r = math.hypot(x, z)
    d = math.hypot(x, z - D)
    return cfg.constants.c * cfg.length * cfg.kappa / (2 * x) * ((z - D) / d - z / r)


def rest_acceleration_near_axis(cfg: PulseConfig, x: float) -> float:
    """``4 G P / (c^3 x)``, the transverse acceleration magnitude close to the axis."""
    return cfg.kappa * cfg.constants.c**2 / x


def newtonian_equivalent_mass(accel: float, r: float, cfg: PulseConfig) -> float:
    """Point mass (kg) whose Newtonian pull ``G M / r^2`` equals ``accel`` at distance ``r``."""
    return accel * r * r / cfg.constants.G
