"""Newton divided differences, Newton-form polynomials and Bernstein bounds.

The Bernstein part turns a Newton-form polynomial restricted to an interval
into Bernstein coefficients. By the convex-hull property the coefficients
bound the polynomial on that interval, and de Casteljau subdivision tightens
the bound until the sign question is settled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from ppinterp.exceptions import InvalidArgumentError, UnsupportedDegreeError

MAX_DEGREE = 32
DEFAULT_MAX_DEPTH = 10
CERT_RTOL = 1e-12


def _as_finite(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} must be finite")
    return arr


class DDTable:
    """Triangular table of divided differences, extensible one point at a time.

    ``table[k][i]`` holds ``f[x_i, ..., x_{i+k}]`` in insertion order, so the
    top row ``coefficients`` is the Newton form through all inserted points.
    """

    def __init__(self, xs, ys):
        xs = _as_finite(xs, "abscissae")
        ys = _as_finite(ys, "values")
        if len(xs) != len(ys) or len(xs) < 1:
            raise InvalidArgumentError(
                f"need matching, non-empty abscissae/values, got {len(xs)} and {len(ys)}")
        self.xs: list[float] = []
        self.table: list[list[float]] = []
        for x, y in zip(xs, ys):
            self.extend(x, y)

    def extend(self, x: float, y: float) -> None:
        """Append one point, adding one diagonal to the table."""
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InvalidArgumentError("abscissa and value must be finite")
        if x in self.xs:
            raise InvalidArgumentError(f"duplicate abscissa {x!r}")
        self.xs.append(x)
        n = len(self.xs)
        if not self.table:
            self.table.append([y])
            return
        self.table[0].append(y)
        self.table.append([])
        for k in range(1, n):
            i = n - 1 - k
            num = self.table[k - 1][i + 1] - self.table[k - 1][i]
            self.table[k].append(num / (self.xs[i + k] - self.xs[i]))

    def __len__(self) -> int:
        return len(self.xs)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([col[0] for col in self.table])

    def newton(self) -> "NewtonPoly":
        return NewtonPoly(np.array(self.xs), self.coefficients)


def dd_table(xs, ys) -> DDTable:
    return DDTable(xs, ys)


def dd_columns(x: np.ndarray, y: np.ndarray, kmax: int) -> list[np.ndarray]:
    """Divided differences of contiguous runs of a sorted grid.

    ``cols[k][j] = f[x_j, ..., x_{j+k}]`` for ``k <= kmax``.
    """
    cols = [np.asarray(y, dtype=float)]
    for k in range(1, min(kmax, len(x) - 1) + 1):
        prev = cols[-1]
        cols.append((prev[1:] - prev[:-1]) / (x[k:] - x[:-k]))
    return cols


@dataclass(frozen=True, eq=False)
class NewtonPoly:
    """``p(x) = sum_k c_k prod_{m<k} (x - z_m)`` with abscissae in insertion order."""

    abscissae: np.ndarray
    coefficients: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        return newton_eval(self, x)


def newton_eval(poly: NewtonPoly, x):
    """Nested evaluation of a Newton-form polynomial (scalar or array ``x``)."""
    z, c = poly.abscissae, poly.coefficients
    x = np.asarray(x, dtype=float)
    result = np.full_like(x, c[-1])
    for k in range(len(c) - 2, -1, -1):
        result = result * (x - z[k]) + c[k]
    if result.ndim == 0:
        return float(result)
    return result


@dataclass(frozen=True, eq=False)
class BernsteinForm:
    interval: tuple[float, float]
    coefficients: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        l, r = self.interval
        t = (np.asarray(x, dtype=float) - l) / (r - l)
        return _decasteljau_eval(self.coefficients, t)


def _decasteljau_eval(b: np.ndarray, t):
    t = np.asarray(t, dtype=float)
    work = np.broadcast_to(b, t.shape + b.shape).astype(float)
    tt = t[..., None]
    for _ in range(len(b) - 1):
        work = (1.0 - tt) * work[..., :-1] + tt * work[..., 1:]
    out = work[..., 0]
    return float(out) if out.ndim == 0 else out


def to_bernstein(poly: NewtonPoly, interval: tuple[float, float]) -> BernsteinForm:
    """Exact change of basis from Newton form to Bernstein form on ``[l, r]``.

    The Newton form is first expanded in the local variable
    ``t = (x - l) / (r - l)`` by nested synthetic multiplication, then the
    monomial coefficients are mapped to Bernstein coefficients with the usual
    binomial ratios.
    """
    l, r = float(interval[0]), float(interval[1])
    if not l < r:
        raise InvalidArgumentError(f"interval requires l < r, got [{l}, {r}]")
    d = poly.degree
    if d > MAX_DEGREE:
        raise UnsupportedDegreeError(f"degree {d} exceeds the supported maximum {MAX_DEGREE}")
    w = r - l
    z, c = poly.abscissae, poly.coefficients
    a = np.zeros(d + 1)
    a[0] = c[d]
    for k in range(d - 1, -1, -1):
        # a <- a * (w t + (l - z_k)) + c_k
        shift = l - z[k]
        new = a * shift
        new[1:] += a[:-1] * w
        new[0] += c[k]
        a = new
    return BernsteinForm((l, r), monomial_to_bernstein(a))


def monomial_to_bernstein(a: np.ndarray) -> np.ndarray:
    """Bernstein coefficients of ``sum_k a_k t^k`` on ``[0, 1]``."""
    d = len(a) - 1
    if d > MAX_DEGREE:
        raise UnsupportedDegreeError(f"degree {d} exceeds the supported maximum {MAX_DEGREE}")
    return _monomial_to_bernstein(d) @ a


@lru_cache(maxsize=None)
def _monomial_to_bernstein(d: int) -> np.ndarray:
    """Matrix with entries C(k, j) / C(d, j) for j <= k."""
    m = np.zeros((d + 1, d + 1))
    for k in range(d + 1):
        for j in range(k + 1):
            m[k, j] = math.comb(k, j) / math.comb(d, j)
    m.setflags(write=False)
    return m


class CertStatus(str, Enum):
    NONNEGATIVE = "CertifiedNonNegative"
    NEGATIVE = "CertifiedNegative"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Certificate:
    lower_bound: float
    status: CertStatus
    depth: int = field(default=0, compare=False)

    @property
    def nonnegative(self) -> bool:
        return self.status is CertStatus.NONNEGATIVE


def cert_tolerance(coefficients: np.ndarray) -> float:
    return CERT_RTOL * (1.0 + float(np.max(np.abs(coefficients))))


def _split(boxes: np.ndarray) -> np.ndarray:
    """de Casteljau split of every row at t = 1/2; returns left and right halves."""
    n, m = boxes.shape
    left = np.empty_like(boxes)
    right = np.empty_like(boxes)
    work = boxes.copy()
    left[:, 0] = work[:, 0]
    right[:, m - 1] = work[:, m - 1]
    for j in range(1, m):
        work = 0.5 * (work[:, :-1] + work[:, 1:])
        left[:, j] = work[:, 0]
        right[:, m - 1 - j] = work[:, -1]
    return np.concatenate([left, right])


def certified_min(bf: BernsteinForm | np.ndarray, max_depth: int = DEFAULT_MAX_DEPTH,
                  tol: float | None = None) -> Certificate:
    """Decide the sign of a Bernstein-form polynomial by recursive bisection.

    Returns ``NONNEGATIVE`` once every sub-box has all coefficients
    ``>= -tol``, ``NEGATIVE`` as soon as a sub-box endpoint value (which is a
    true polynomial value) drops below ``-tol``, and ``INCONCLUSIVE`` if
    neither happens within ``max_depth`` bisection levels. ``lower_bound`` is
    the best lower bound proven at the final level.
    """
    b = np.asarray(getattr(bf, "coefficients", bf), dtype=float)
    if tol is None:
        tol = cert_tolerance(b)
    boxes = b[None, :]
    settled_min = math.inf
    for depth in range(max_depth + 1):
        mins = boxes.min(axis=1)
        if min(boxes[:, 0].min(), boxes[:, -1].min()) < -tol:
            bound = min(settled_min, float(mins.min()))
            return Certificate(bound, CertStatus.NEGATIVE, depth)
        ok = mins >= -tol
        if ok.any():
            settled_min = min(settled_min, float(mins[ok].min()))
        if ok.all():
            return Certificate(settled_min, CertStatus.NONNEGATIVE, depth)
        if depth == max_depth:
            bound = min(settled_min, float(mins.min()))
            return Certificate(bound, CertStatus.INCONCLUSIVE, depth)
        boxes = _split(boxes[~ok])
    raise AssertionError("unreachable")


def lagrange_eval(xs, ys, x):
    """Direct Lagrange-form evaluation; an independent check on ``newton_eval``."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for j in range(len(xs)):
        term = np.full_like(x, ys[j])
        for m in range(len(xs)):
            if m != j:
                term = term * (x - xs[m]) / (xs[j] - xs[m])
        total = total + term
    return total
