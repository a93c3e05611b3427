"""Positivity-preserving and data-bounded grid-to-grid interpolation."""

from ppinterp.adaptive import InterpConfig, Method, build, build_interval
from ppinterp.classic import linear_build, pchip_build, spline_build, std_build
from ppinterp.convergence import ErrorReport, convergence_table, error_ratios, l2_error_1d
from ppinterp.divdiff import certified_min, dd_table, newton_eval, to_bernstein
from ppinterp.exceptions import (
    DomainError,
    InterpError,
    InvalidArgumentError,
    PreconditionError,
    UnsupportedDegreeError,
)
from ppinterp.functions import TestFunction, eval_test_function
from ppinterp.interp import build_interpolant
from ppinterp.mesh import GridFunction, Mesh1D, NodeFamily, element_mesh, lgl_nodes, uniform_mesh
from ppinterp.piecewise import ExtrapolationPolicy
from ppinterp.remap import remap_cycle
from ppinterp.tensor import GridFunction2D, interpolate_2d

__version__ = "0.1.0"
