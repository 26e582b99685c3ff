"""Linearized gravitational field of a laser pulse between an emitter and an absorber."""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .errors import (AxisSingularityError, DomainError, IOFailure, NumericalError,
                     PulsegravError, QuadratureError, TrajectoryTruncated, UnsupportedFeatureError)
from .model import (REDUCED, SI, Circular, Constants, Linear, PulseConfig, config_from_mapping,
                    energy_density, kappa_from_power, load_config)
from .geometry import Event, Region, arrival_times, classify, shell_boundaries
from .field import FieldSample, MetricComponents, field_sample, grad_h, h_closed, h_quadrature
from .curvature import (GwComparison, RiemannSample, compare_gw, riemann_analytic_region2,
                        riemann_fd, riemann_near_axis, tidal_acceleration)
from .geodesics import (GeodesicState, Kind, KickSummary, ScenarioKind, Trajectory,
                        integrate_deviation, integrate_geodesic, scenario)
from .gauge import riemann_transformed, transformed_h, xi_absorption, xi_emission
from .oracles import OracleReport, run_oracle_suite

__all__ = [name for name in dir() if not name.startswith("_")]
