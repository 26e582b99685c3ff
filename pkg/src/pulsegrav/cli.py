"""``pulsegrav`` command line: grid sweeps, deflection scenarios, GW comparison, oracles.

Exit codes: 0 success, 2 usage, 3 domain, 4 I/O, 5 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .curvature import FAMILY_NAMES, compare_gw, riemann_fd_arrays
from .errors import DomainError, IOFailure, NumericalError, PulsegravError
from .field import field_arrays
from .geodesics import ScenarioKind, Trajectory, scenario
from .geometry import Event, Region
from .model import PulseConfig, config_from_mapping, load_config
from .oracles import run_oracle_suite

log = logging.getLogger("pulsegrav")

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO, EXIT_NUMERICAL = 0, 2, 3, 4, 5

FIELD_HEADER = ("t", "x", "y", "z", "region", "h", "dh_dx", "dh_dz")
CURVATURE_HEADER = ("t", "x", "y", "z", "region") + FAMILY_NAMES + ("flag",)

# used when neither --config nor a flag supplies the geometry
DEFAULTS = {"pulse.length_m": 0.1, "pulse.distance_m": 50.0, "pulse.power_W": 1e15}

AXES = ("t", "x", "y", "z")


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------------
# formatting and files


def fmt(v) -> str:
    """Shortest round-trip decimal of a binary64 value; NaN as ``nan``."""
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def write_csv(path: Path, header, rows) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(fmt(v) for v in row) + "\n")
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from exc


def write_json(path: Path, obj) -> None:
    try:
        Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from exc


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = int(epoch) if epoch is not None else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


@dataclass
class RunManifest:
    command: str
    config: dict
    grid: dict = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    timestamp: str = field(default_factory=_timestamp)
    version: str = __version__

    def to_dict(self) -> dict:
        return {"command": self.command, "config": self.config, "grid": self.grid,
                "outputs": self.outputs, "timestamp": self.timestamp, "tool_version": self.version}

    def write(self, path: Path) -> None:
        write_json(path, self.to_dict())


def manifest_path(out: Path) -> Path:
    return out.with_name(out.name + ".manifest.json")


# ----------------------------------------------------------------------------
# argument handling


def parse_axis(spec: str):
    """``NAME=MIN:MAX:COUNT`` -> (name, min, max, count)."""
    try:
        name, rng = spec.split("=", 1)
        lo, hi, n = rng.split(":")
        name = name.strip()
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise UsageError(f"invalid axis spec {spec!r}; expected NAME=MIN:MAX:COUNT") from None
    if name not in AXES:
        raise UsageError(f"axis must be one of {', '.join(AXES)}, got {name!r}")
    if n < 1 or not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError(f"invalid axis spec {spec!r}")
    if n > 1 and not hi > lo:
        raise UsageError(f"axis {name}: max must exceed min")
    return name, lo, hi, n


def threads_from(args) -> Optional[int]:
    n = getattr(args, "threads", None)
    if n is None:
        env = os.environ.get("PULSEGRAV_THREADS")
        if env:
            try:
                n = int(env)
            except ValueError:
                raise UsageError(f"PULSEGRAV_THREADS must be an integer, got {env!r}") from None
    if n is not None and n < 1:
        raise UsageError("--threads must be >= 1")
    return n or os.cpu_count() or 1


def config_from_args(args) -> PulseConfig:
    overrides = {
        "pulse.length_m": args.length,
        "pulse.distance_m": args.distance,
        "pulse.area_m2": args.area,
        "pulse.polarization": args.polarization,
        "pulse.power_W": args.power,
        "pulse.u0_J_per_m3": args.u0,
        "pulse.omega_rad_s": args.omega,
        "pulse.phase_rad": args.phase,
        "constants.G": args.G,
        "constants.c": args.c,
        "rho_min_m": args.rho_min,
    }
    if args.config is not None:
        return load_config(args.config, **overrides)
    data: Dict = {}
    for key, val in DEFAULTS.items():
        a, b = key.split(".")
        data.setdefault(a, {})[b] = val
    if args.u0 is not None:
        data["pulse"].pop("power_W")
    return config_from_mapping(data, **overrides)


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("pulse configuration (overrides --config)")
    g.add_argument("--config", type=Path, help="JSON config file")
    g.add_argument("--power", type=float, help="pulse power P (W)")
    g.add_argument("--u0", type=float, help="energy density u0 (J/m^3)")
    g.add_argument("--length", type=float, help="pulse length L (m)")
    g.add_argument("--distance", type=float, help="emitter-absorber distance D (m)")
    g.add_argument("--area", type=float, help="effective transverse area A (m^2)")
    g.add_argument("--polarization", choices=("circular", "linear"))
    g.add_argument("--omega", type=float, help="laser angular frequency (rad/s), linear only")
    g.add_argument("--phase", type=float, help="laser phase (rad), linear only")
    g.add_argument("--G", type=float, help="gravitational constant")
    g.add_argument("--c", type=float, help="speed of light")
    g.add_argument("--rho-min", type=float, dest="rho_min", help="axis guard radius (m)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pulsegrav", description="Gravitational field of a laser pulse in linearized gravity.")
    p.add_argument("--version", action="version", version=f"pulsegrav {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("grid", help="field or curvature on a 1D/2D coordinate grid")
    g.add_argument("kind", choices=("field", "curvature"))
    g.add_argument("--axis", action="append", default=[], metavar="NAME=MIN:MAX:COUNT",
                   help="swept coordinate among t, x, y, z (one or two)")
    for ax in AXES:
        g.add_argument(f"--{ax}", type=float, default=0.0, help=f"fixed {ax} when not swept")
    g.add_argument("--out", type=Path, required=True)
    g.add_argument("--threads", type=int)
    _add_config_flags(g)

    s = sub.add_parser("scenario", help="integrate a test-particle or light-ray geodesic")
    s.add_argument("kind", choices=[k.value for k in ScenarioKind])
    s.add_argument("--t", type=float, default=0.0, dest="t0", help="start time (s)")
    s.add_argument("--x", type=float, default=2.5e-3, dest="x0", help="start x (m)")
    s.add_argument("--y", type=float, default=0.0, dest="y0", help="start y (m)")
    s.add_argument("--z", type=float, default=1.0, dest="z0", help="start z (m)")
    s.add_argument("--t-end", type=float, dest="t_end", help="end time (s)")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--out", type=Path, help="trajectory CSV; the summary goes next to it")
    _add_config_flags(s)

    c = sub.add_parser("compare-gw", help="pulse curvature versus a gravitational wave")
    c.add_argument("--rho", type=float, required=True, help="distance from the axis (m)")
    c.add_argument("--omega-gw", type=float, dest="omega_gw", required=True,
                   help="gravitational-wave angular frequency (rad/s)")
    c.add_argument("--out", type=Path)
    _add_config_flags(c)

    o = sub.add_parser("oracle", help="run the brute-force cross-checks")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--samples", type=int, default=1000)
    o.add_argument("--only", action="append", help="run only this oracle (repeatable)")
    o.add_argument("--threads", type=int)
    o.add_argument("--out", type=Path)
    _add_config_flags(o)
    return p


# ----------------------------------------------------------------------------
# grid


def grid_events(axes, fixed: Dict[str, float], c: float):
    """Events ``(ny, nx, 4)`` in ``(ct, x, y, z)``; the last axis spec varies fastest."""
    names = [a[0] for a in axes]
    if len(set(names)) != len(names):
        raise UsageError("an axis may be swept only once")
    if not 1 <= len(axes) <= 2:
        raise UsageError("give one or two --axis specs")
    vals = {n: np.linspace(lo, hi, k) for n, lo, hi, k in axes}
    if len(axes) == 1:
        axes = [("_", 0.0, 0.0, 1)] + list(axes)
    shape = (axes[0][3], axes[1][3])
    coords = []
    for ax in AXES:
        if ax == axes[0][0]:
            v = np.broadcast_to(vals[ax][:, None], shape)
        elif ax == axes[1][0]:
            v = np.broadcast_to(vals[ax][None, :], shape)
        else:
            v = np.full(shape, fixed[ax])
        coords.append(v)
    X = np.stack(coords, axis=-1).astype(float)
    X[..., 0] *= c
    return X


def _grid_rows(kind: str, X: np.ndarray, cfg: PulseConfig):
    c = cfg.constants.c
    rho = np.hypot(X[:, 1], X[:, 2])
    if kind == "field":
        fa = field_arrays(X, cfg)
        cols = [fa.h, fa.grad[:, 1], fa.grad[:, 3]]
        reg = fa.region
    else:
        fam, flag, reg = riemann_fd_arrays(X, cfg)
        contact = np.isin(reg, (Region.II, Region.III, Region.IV, Region.V))
        axis = contact & (rho < cfg.rho_min)
        fam = np.where(axis[:, None], np.nan, fam)
        cols = [fam[:, k] for k in range(6)] + [flag & ~axis]
    rows = []
    for i in range(X.shape[0]):
        rows.append((X[i, 0] / c, X[i, 1], X[i, 2], X[i, 3], Region(int(reg[i])).label)
                    + tuple(col[i] for col in cols))
    return rows


def cmd_grid(args) -> int:
    cfg = config_from_args(args)
    axes = [parse_axis(s) for s in args.axis]
    fixed = {ax: getattr(args, ax) for ax in AXES}
    X = grid_events(axes, fixed, cfg.constants.c)
    nthreads = threads_from(args)
    with ThreadPoolExecutor(max_workers=nthreads) as pool:
        chunks = list(pool.map(lambda row: _grid_rows(args.kind, row, cfg), list(X)))
    header = FIELD_HEADER if args.kind == "field" else CURVATURE_HEADER
    out = Path(args.out)
    write_csv(out, header, (r for chunk in chunks for r in chunk))
    grid = {name: {"min": lo, "max": hi, "count": n} for name, lo, hi, n in axes}
    grid["fixed"] = {ax: fixed[ax] for ax in AXES if ax not in grid}
    mpath = manifest_path(out)
    RunManifest(f"grid {args.kind}", cfg.to_dict(), grid, [str(out)]).write(mpath)
    log.info("wrote %s (%d rows)", out, X.shape[0] * X.shape[1])
    return EXIT_OK


# ----------------------------------------------------------------------------
# scenario


def cmd_scenario(args) -> int:
    cfg = config_from_args(args)
    start = Event(args.t0, args.x0, args.y0, args.z0)
    try:
        traj, summary = scenario(args.kind, start, cfg, tol=args.tol, t_end=args.t_end)
    except NumericalError as exc:
        print(json.dumps({"reason": str(exc)}, indent=2, sort_keys=True))
        return EXIT_NUMERICAL
    info = summary.to_dict()
    info["kind"] = args.kind
    info["max_residual"] = float(np.max(np.abs(traj.residual)))
    if args.out is not None:
        out = Path(args.out)
        spath = out.with_name(out.stem + ".summary.json")
        write_csv(out, Trajectory.CSV_HEADER, traj.rows())
        write_json(spath, info)
        RunManifest(f"scenario {args.kind}", cfg.to_dict(),
                    {"start": {"t": args.t0, "x": args.x0, "y": args.y0, "z": args.z0},
                     "tol": args.tol, "t_end": args.t_end},
                    [str(out), str(spath)]).write(manifest_path(out))
    print(json.dumps(info, indent=2, sort_keys=True))
    return EXIT_NUMERICAL if summary.reason is not None else EXIT_OK


# ----------------------------------------------------------------------------
# compare-gw and oracle


def cmd_compare_gw(args) -> int:
    cfg = config_from_args(args)
    if not args.rho >= cfg.rho_min or args.rho <= 0:
        raise DomainError(f"rho must be >= rho_min={cfg.rho_min:g} m")
    res = compare_gw(cfg, args.rho, args.omega_gw).to_dict()
    text = json.dumps(res, indent=2, sort_keys=True)
    if args.out is not None:
        write_json(Path(args.out), res)
        RunManifest("compare-gw", cfg.to_dict(), {"rho": args.rho, "omega_gw": args.omega_gw},
                    [str(args.out)]).write(manifest_path(Path(args.out)))
    print(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    cfg = config_from_args(args)
    reports = run_oracle_suite(cfg, seed=args.seed, n_samples=args.samples,
                               threads=threads_from(args), names=args.only)
    arr = [r.to_dict() for r in reports]
    if args.out is not None:
        write_json(Path(args.out), arr)
        RunManifest("oracle", cfg.to_dict(), {"seed": args.seed, "samples": args.samples},
                    [str(args.out)]).write(manifest_path(Path(args.out)))
    print(json.dumps(arr, indent=2, sort_keys=True))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_NUMERICAL


COMMANDS = {"grid": cmd_grid, "scenario": cmd_scenario, "compare-gw": cmd_compare_gw,
            "oracle": cmd_oracle}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        if args.command is None:
            raise UsageError("a subcommand is required (grid, scenario, compare-gw, oracle)")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"pulsegrav: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IOFailure as exc:
        print(f"pulsegrav: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"pulsegrav: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"pulsegrav: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except PulsegravError as exc:
        print(f"pulsegrav: error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
