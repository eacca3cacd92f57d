"""Lipschitz numbers and Lipschitz extensions on finite metric spaces."""

from .errors import DomainError, LipextError, MetricError, PreconditionError
from .extension import (
    ExtensionReport,
    Feasibility,
    Rule,
    average_extension,
    chained_feasible,
    check_average_hypothesis,
    closed_form_extension,
    equality_criterion,
    helly_extension,
    helly_feasible,
    optimal_one_point_extension,
    polygon_extension,
    tetragon_extension,
    triangle_extension,
)
from .kernels import BACKEND, available_backends
from .lipschitz import LipschitzReport, MetricFunction, extend_with, lipschitz_number, p_alpha
from .metric_space import (
    FiniteMetricSpace,
    PointSubset,
    diameter,
    discrete_apex,
    power_metric,
    four_point_space,
    set_distance,
    validate,
)
from .minimax import OneCenterSolution, disc_intersection, one_center
from .oracle import GridSpec, grid_extension_check, grid_minimax
from .plane_geometry import apollonius_locus, normalize, regular_polygon
from .separation import SeparationCertificate, separate, truncated_counterexample, urysohn_function

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
