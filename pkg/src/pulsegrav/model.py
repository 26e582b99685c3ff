"""Physical constants, pulse configuration and the longitudinal energy-density profile.

All quantities are SI. The pulse travels along +z from an emitter at z=0 to an
absorber at z=D; the profile is a function of the longitudinal phase
``s = z - c t`` (metres), and the source occupies ``-L <= s <= 0``.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Union

import numpy as np

from .errors import DomainError, IOFailure

# CODATA 2018
G_CODATA = 6.67430e-11
C_CODATA = 299792458.0


@dataclass(frozen=True)
class Constants:
    G: float = G_CODATA
    c: float = C_CODATA

    def __post_init__(self):
        if not (self.G > 0 and self.c > 0):
            raise DomainError("G and c must be positive")


SI = Constants()
REDUCED = Constants(G=1.0, c=1.0)


@dataclass(frozen=True)
class Circular:
    """Constant energy density ``u0`` (J/m^3)."""

    u0: float

    def __post_init__(self):
        if not self.u0 >= 0:
            raise DomainError(f"u0 must be >= 0, got {self.u0}")

    name = "circular"


@dataclass(frozen=True)
class Linear:
    """Energy density ``2 u0 sin^2(omega (t - z/c) + phase)``; ``u0`` is the mean."""

    u0: float
    omega: float
    phase: float = 0.0

    def __post_init__(self):
        if not self.u0 >= 0:
            raise DomainError(f"u0 must be >= 0, got {self.u0}")
        if not self.omega > 0:
            raise DomainError(f"omega must be > 0, got {self.omega}")

    name = "linear"


Polarization = Union[Circular, Linear]


@dataclass(frozen=True)
class PulseConfig:
    """Line-source pulse of length ``length`` between emitter (z=0) and absorber (z=distance).

    ``area`` is the effective transverse area that converts the energy density
    into a line density. ``rho_min`` is the axis guard used by field evaluation.
    """

    length: float
    distance: float
    area: float
    polarization: Polarization
    constants: Constants = field(default=SI)
    rho_min: float = 1e-9
    kappa_warn: float = 1e-3

    def __post_init__(self):
        for name in ("length", "distance", "area"):
            val = getattr(self, name)
            if not (val > 0 and math.isfinite(val)):
                raise DomainError(f"{name} must be positive and finite, got {val}")
        if not self.rho_min >= 0:
            raise DomainError("rho_min must be >= 0")
        if self.kappa > self.kappa_warn:
            warnings.warn(
                f"kappa={self.kappa:.3g} exceeds {self.kappa_warn:g}; "
                "linearized gravity may be inaccurate",
                RuntimeWarning,
                stacklevel=3,
            )

    @property
    def u0(self) -> float:
        return self.polarization.u0

    @property
    def kappa(self) -> float:
        G, c = self.constants.G, self.constants.c
        return 4.0 * G * self.area * self.polarization.u0 / c**4

    @property
    def coupling(self) -> float:
        """4GA/c^4, the factor multiplying the energy density in the retarded integral."""
        return 4.0 * self.constants.G * self.area / self.constants.c**4

    @property
    def power(self) -> float:
        return self.polarization.u0 * self.area * self.constants.c

    @property
    def wavelength(self) -> float | None:
        if isinstance(self.polarization, Linear):
            return 2.0 * math.pi * self.constants.c / self.polarization.omega
        return None

    @classmethod
    def from_power(cls, power, length, distance, area=1.0, polarization="circular",
                   omega=None, phase=0.0, constants=SI, **kwargs) -> "PulseConfig":
        if power < 0:
            raise DomainError(f"power must be >= 0, got {power}")
        u0 = power / (area * constants.c)
        return cls(length, distance, area, make_polarization(polarization, u0, omega, phase),
                   constants=constants, **kwargs)

    def with_polarization(self, polarization: Polarization) -> "PulseConfig":
        return PulseConfig(self.length, self.distance, self.area, polarization,
                           self.constants, self.rho_min, self.kappa_warn)

    def scaled(self, factor: float) -> "PulseConfig":
        """Same geometry with the energy density multiplied by ``factor``."""
        pol = self.polarization
        if isinstance(pol, Linear):
            new = Linear(pol.u0 * factor, pol.omega, pol.phase)
        else:
            new = Circular(pol.u0 * factor)
        return self.with_polarization(new)

    def to_dict(self) -> dict:
        pol = self.polarization
        pulse = {
            "length_m": self.length,
            "distance_m": self.distance,
            "area_m2": self.area,
            "polarization": pol.name,
            "u0_J_per_m3": pol.u0,
        }
        if isinstance(pol, Linear):
            pulse["omega_rad_s"] = pol.omega
            pulse["phase_rad"] = pol.phase
        return {
            "pulse": pulse,
            "constants": {"G": self.constants.G, "c": self.constants.c},
            "rho_min_m": self.rho_min,
            "kappa": self.kappa,
        }


def make_polarization(kind: str, u0: float, omega=None, phase=0.0) -> Polarization:
    kind = kind.lower()
    if kind == "circular":
        return Circular(u0)
    if kind == "linear":
        if omega is None:
            raise DomainError("linear polarization requires omega")
        return Linear(u0, omega, phase)
    raise DomainError(f"unknown polarization {kind!r}")


def kappa_from_power(P: float, constants: Constants = SI) -> float:
    """Dimensionless field strength ``4 G P / c^5`` for a pulse of power ``P`` (W)."""
    if not P >= 0:
        raise DomainError(f"power must be >= 0, got {P}")
    return 4.0 * constants.G * P / constants.c**5


def energy_density(cfg: PulseConfig, s):
    """Energy density (J/m^3) at longitudinal phase ``s = z - c t``. No windowing."""
    pol = cfg.polarization
    s = np.asarray(s, dtype=float)
    if isinstance(pol, Circular):
        out = np.full_like(s, pol.u0)
    else:
        out = 2.0 * pol.u0 * np.sin(-pol.omega * s / cfg.constants.c + pol.phase) ** 2
    return out[()] if out.ndim == 0 else out


def energy_density_derivative(cfg: PulseConfig, s):
    """d u / d s (J/m^4), exact."""
    pol = cfg.polarization
    s = np.asarray(s, dtype=float)
    if isinstance(pol, Circular):
        out = np.zeros_like(s)
    else:
        k = pol.omega / cfg.constants.c
        # d/ds 2u0 sin^2(-k s + phi) = -2 u0 k sin(2(-k s + phi))
        out = -2.0 * pol.u0 * k * np.sin(2.0 * (-k * s + pol.phase))
    return out[()] if out.ndim == 0 else out


def _get(mapping: Mapping[str, Any], dotted: str, default=None):
    cur: Any = mapping
    for part in dotted.split("."):
        if not isinstance(cur, Mapping) or part not in cur:
            return default
        cur = cur[part]
    return cur


def config_from_mapping(data: Mapping[str, Any], **overrides) -> PulseConfig:
    """Build a config from the JSON layout (``pulse.length_m`` ...).

    ``overrides`` use the same dotted keys and win over ``data``; ``None``
    values are ignored so argparse namespaces can be passed straight through.
    """
    def pick(key, default=None):
        if overrides.get(key) is not None:
            return overrides[key]
        return _get(data, key, default)

    G = float(pick("constants.G", G_CODATA))
    c = float(pick("constants.c", C_CODATA))
    constants = Constants(G, c)

    length = pick("pulse.length_m")
    distance = pick("pulse.distance_m")
    area = pick("pulse.area_m2", 1.0)
    if length is None or distance is None:
        raise DomainError("config requires pulse.length_m and pulse.distance_m")
    kind = str(pick("pulse.polarization", "circular"))
    u0 = pick("pulse.u0_J_per_m3")
    power = pick("pulse.power_W")
    if overrides.get("pulse.power_W") is not None:
        u0 = None
    elif overrides.get("pulse.u0_J_per_m3") is not None:
        power = None
    if u0 is None and power is None:
        raise DomainError("config requires pulse.u0_J_per_m3 or pulse.power_W")
    if u0 is None:
        if float(power) < 0:
            raise DomainError(f"power must be >= 0, got {power}")
        u0 = float(power) / (float(area) * c)
    omega = pick("pulse.omega_rad_s")
    phase = float(pick("pulse.phase_rad", 0.0))
    pol = make_polarization(kind, float(u0), None if omega is None else float(omega), phase)
    return PulseConfig(float(length), float(distance), float(area), pol, constants,
                       rho_min=float(pick("rho_min_m", 1e-9)))


def load_config(path, **overrides) -> PulseConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IOFailure(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_mapping(data, **overrides)
