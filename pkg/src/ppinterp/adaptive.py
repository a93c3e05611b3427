"""Adaptive data-bounded (DBI) and positivity-preserving (PPI) interpolation.

Each mesh interval gets its own Newton-form polynomial. Starting from the
linear interpolant on ``[x_i, x_{i+1}]`` the stencil grows one point at a
time, ENO style: of the two possible extensions the one with the smaller new
divided difference is tried first. An extension is kept only if the enlarged
polynomial passes the acceptance test on ``[x_i, x_{i+1}]``:

* DBI: stays within the two bounding data values,
* PPI: stays at or above ``floor``.

Acceptance is decided by a Bernstein subdivision certificate, so a committed
polynomial provably satisfies its bound (up to a tolerance of 1e-13 relative
to its coefficient size). Growth stops at the target degree or when neither
extension is accepted.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ppinterp.divdiff import (
    CERT_RTOL,
    DEFAULT_MAX_DEPTH,
    MAX_DEGREE,
    NewtonPoly,
    certified_min,
    dd_columns,
    monomial_to_bernstein,
)
from ppinterp.exceptions import InvalidArgumentError, PreconditionError, UnsupportedDegreeError
from ppinterp.mesh import GridFunction
from ppinterp.piecewise import PiecewisePolynomial, StencilInterpolant


# Acceptance slack relative to the certificate default, so that committed
# polynomials stay within 1e-12 * max|u| of their bound after evaluation.
PREDICATE_TOL_FACTOR = 0.1


class Method(str, Enum):
    STD = "std"
    LINEAR = "linear"
    PCHIP = "pchip"
    SPLINE = "spline"
    DBI = "dbi"
    PPI = "ppi"

    @property
    def adaptive(self) -> bool:
        return self in (Method.DBI, Method.PPI)


@dataclass(frozen=True)
class InterpConfig:
    """Method selection and parameters.

    ``degree`` is the target degree for DBI/PPI and is ignored by the fixed
    methods (STD takes its degree from the element size). ``floor`` is the
    PPI lower bound. With ``element_confined`` the adaptive stencils never
    leave the element that owns the interval.
    """

    method: Method = Method.PPI
    degree: int = 1
    floor: float = 0.0
    element_confined: bool = False
    max_depth: int = DEFAULT_MAX_DEPTH

    def __post_init__(self) -> None:
        object.__setattr__(self, "method", Method(self.method))
        if int(self.degree) != self.degree or self.degree < 1:
            raise InvalidArgumentError(f"target degree must be >= 1, got {self.degree}")
        if self.degree > MAX_DEGREE:
            raise UnsupportedDegreeError(
                f"target degree {self.degree} exceeds the supported maximum {MAX_DEGREE}")
        if not np.isfinite(self.floor):
            raise InvalidArgumentError("floor must be finite")
        if self.max_depth < 0:
            raise InvalidArgumentError("max_depth must be >= 0")


class AdaptiveInterpolant(PiecewisePolynomial):
    """Piecewise DBI/PPI interpolant; ``avg_degree`` is the mean achieved degree."""

    def __init__(self, data: GridFunction, pieces: list[StencilInterpolant], config: InterpConfig):
        super().__init__(data, pieces)
        self.config = config


def _accepts(a: np.ndarray, lower: float, upper: float | None, max_depth: int) -> bool:
    """Certified range check of the local power-basis polynomial ``a`` on ``t in [0, 1]``."""
    b = monomial_to_bernstein(a)
    bmin, bmax = b.min(), b.max()
    tol = PREDICATE_TOL_FACTOR * CERT_RTOL * (1.0 + max(-bmin, bmax))
    if bmin >= lower - tol and (upper is None or bmax <= upper + tol):
        return True
    if not certified_min(b - lower, max_depth, tol).nonnegative:
        return False
    if upper is None:
        return True
    return certified_min(upper - b, max_depth, tol).nonnegative


def _check_floor(data: GridFunction, config: InterpConfig) -> None:
    # Inputs produced by an earlier PPI pass may sit a rounding error below the floor.
    slack = CERT_RTOL * (1.0 + float(np.abs(data.values).max()))
    if config.method is Method.PPI and data.values.min() < config.floor - slack:
        raise PreconditionError(
            f"PPI floor {config.floor} exceeds data minimum {data.values.min()}")


def _build_interval(x: list[float], u: list[float], cols: list[list[float]], i: int,
                    config: InterpConfig, bounds: tuple[int, int]) -> StencilInterpolant:
    """Grow one stencil. ``x``, ``u`` and ``cols`` are plain lists for speed."""
    left, right = x[i], x[i + 1]
    if config.method is Method.DBI:
        lower, upper = min(u[i], u[i + 1]), max(u[i], u[i + 1])
    else:
        lower, upper = config.floor, None
    lo, hi = i, i + 1
    z = [left, right]
    c = [u[i], cols[1][i]]
    # Power-basis coefficients in t = (x - left) / w of the committed
    # polynomial and of the Newton basis product prod_m (x - z_m),
    # zero-padded to the target degree.
    w = right - left
    size = max(config.degree, 2) + 1
    a = np.zeros(size)
    a[:2] = u[i], cols[1][i] * w
    omega = np.zeros(size)
    omega[1:3] = -w * w, w * w
    first, last = bounds
    while hi - lo < config.degree:
        k = hi - lo + 1
        candidates = []
        if lo - 1 >= first:
            candidates.append((abs(cols[k][lo - 1]), 0, lo - 1, cols[k][lo - 1]))
        if hi + 1 <= last:
            candidates.append((abs(cols[k][lo]), 1, hi + 1, cols[k][lo]))
        # smaller |divided difference| first; ties go left
        candidates.sort(key=lambda cand: (cand[0], cand[1]))
        for _, side, j, dd in candidates:
            trial = a + dd * omega
            if _accepts(trial[:k + 1], lower, upper, config.max_depth):
                a = trial
                if k < config.degree:
                    # multiply by (x - x_j) = w t + (left - x_j)
                    grown = omega * (left - x[j])
                    grown[1:] += omega[:-1] * w
                    omega = grown
                z.append(x[j])
                c.append(dd)
                if side == 0:
                    lo -= 1
                else:
                    hi += 1
                break
        else:
            break
    return StencilInterpolant(i, lo, hi, NewtonPoly(np.array(z), np.array(c)))


def _stencil_bounds(data: GridFunction, i: int, confined: bool) -> tuple[int, int]:
    if confined:
        return data.mesh.element_range(data.mesh.element_of_interval(i))
    return 0, data.mesh.n - 1


def _require_adaptive(config: InterpConfig) -> None:
    if not config.method.adaptive:
        raise InvalidArgumentError(f"method {config.method.value!r} is not DBI or PPI")


def _lists(data: GridFunction, config: InterpConfig):
    x, u = data.mesh.nodes, data.values
    return x.tolist(), u.tolist(), [col.tolist() for col in dd_columns(x, u, config.degree)]


def build_interval(data: GridFunction, i: int, config: InterpConfig) -> StencilInterpolant:
    """Grow the stencil for interval ``[x_i, x_{i+1}]`` and return its polynomial."""
    _require_adaptive(config)
    if int(i) != i or not 0 <= i < data.mesh.n - 1:
        raise InvalidArgumentError(f"interval index {i} out of range [0, {data.mesh.n - 2}]")
    _check_floor(data, config)
    x, u, cols = _lists(data, config)
    return _build_interval(x, u, cols, int(i), config,
                           _stencil_bounds(data, int(i), config.element_confined))


def build(data: GridFunction, config: InterpConfig, workers: int | None = None) -> AdaptiveInterpolant:
    """Build the DBI/PPI interpolant on every interval of ``data``.

    Intervals are independent; ``workers > 1`` spreads them over a thread
    pool and yields the same result as the serial build.
    """
    _require_adaptive(config)
    _check_floor(data, config)
    x, u, cols = _lists(data, config)

    def one(i: int) -> StencilInterpolant:
        return _build_interval(x, u, cols, i, config,
                               _stencil_bounds(data, i, config.element_confined))

    n_int = data.mesh.n - 1
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pieces = list(pool.map(one, range(n_int)))
    else:
        pieces = [one(i) for i in range(n_int)]
    return AdaptiveInterpolant(data, pieces, config)
