"""Baseline interpolants: per-element Lagrange, linear, PCHIP, natural cubic spline."""

from __future__ import annotations

import numpy as np

from ppinterp.divdiff import NewtonPoly, dd_table
from ppinterp.exceptions import InvalidArgumentError
from ppinterp.mesh import GridFunction
from ppinterp.piecewise import Interpolant, PiecewisePolynomial, StencilInterpolant


def std_build(data: GridFunction) -> PiecewisePolynomial:
    """Standard Lagrange interpolant of each element's nodes (C0 across elements).

    Every interval of an element shares that element's polynomial.
    """
    mesh = data.mesh
    if mesh.ne < 1 or mesh.element_offsets[0] != 0 or mesh.element_offsets[-1] != mesh.n - 1:
        raise InvalidArgumentError("standard interpolation needs an element mesh")
    x, u = mesh.nodes, data.values
    pieces = []
    for e in range(mesh.ne):
        lo, hi = mesh.element_range(e)
        poly = dd_table(x[lo:hi + 1], u[lo:hi + 1]).newton()
        pieces.extend(StencilInterpolant(i, lo, hi, poly) for i in range(lo, hi))
    return PiecewisePolynomial(data, pieces)


def linear_build(data: GridFunction) -> PiecewisePolynomial:
    x, u = data.mesh.nodes, data.values
    slopes = np.diff(u) / np.diff(x)
    pieces = [
        StencilInterpolant(i, i, i + 1, NewtonPoly(x[i:i + 2].copy(), np.array([u[i], slopes[i]])))
        for i in range(len(x) - 1)
    ]
    return PiecewisePolynomial(data, pieces)


class HermiteSpline(Interpolant):
    """Piecewise cubic Hermite interpolant from nodal values and slopes."""

    def __init__(self, data: GridFunction, slopes: np.ndarray):
        self.data = data
        self.slopes = np.asarray(slopes, dtype=float)

    @property
    def degrees(self) -> np.ndarray:
        return np.full(self.n_intervals, 3)

    def _eval_pieces(self, idx, t):
        x, y, m = self.nodes, self.data.values, self.slopes
        h = x[idx + 1] - x[idx]
        s = (t - x[idx]) / h
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        return h00 * y[idx] + h10 * h * m[idx] + h01 * y[idx + 1] + h11 * h * m[idx + 1]


def _edge_slope(h0: float, h1: float, d0: float, d1: float) -> float:
    """Three-point one-sided slope, clamped to keep the end interval shape-preserving."""
    m = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1)
    if np.sign(m) != np.sign(d0):
        return 0.0
    if np.sign(d0) != np.sign(d1) and abs(m) > abs(3 * d0):
        return 3 * d0
    return m


def pchip_slopes(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Fritsch-Carlson monotone slopes on a possibly nonuniform grid."""
    h = np.diff(x)
    delta = np.diff(y) / h
    n = len(x)
    m = np.zeros(n)
    if n == 2:
        m[:] = delta[0]
        return m
    w1 = 2 * h[1:] + h[:-1]
    w2 = h[1:] + 2 * h[:-1]
    same = (np.sign(delta[:-1]) * np.sign(delta[1:])) > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = (w1 / delta[:-1] + w2 / delta[1:]) / (w1 + w2)
        m[1:-1] = np.where(same, 1.0 / inv, 0.0)
    m[0] = _edge_slope(h[0], h[1], delta[0], delta[1])
    m[-1] = _edge_slope(h[-1], h[-2], delta[-1], delta[-2])
    return m


def pchip_build(data: GridFunction) -> HermiteSpline:
    if data.mesh.n < 2:
        raise InvalidArgumentError("PCHIP needs at least 2 nodes")
    return HermiteSpline(data, pchip_slopes(data.mesh.nodes, data.values))


class CubicSpline(Interpolant):
    """C2 cubic spline stored via its nodal second derivatives."""

    def __init__(self, data: GridFunction, second: np.ndarray):
        self.data = data
        self.second = second

    @property
    def degrees(self) -> np.ndarray:
        return np.full(self.n_intervals, 3)

    def _eval_pieces(self, idx, t):
        x, y, M = self.nodes, self.data.values, self.second
        h = x[idx + 1] - x[idx]
        a = x[idx + 1] - t
        b = t - x[idx]
        return ((M[idx] * a ** 3 + M[idx + 1] * b ** 3) / (6 * h)
                + (y[idx] / h - M[idx] * h / 6) * a
                + (y[idx + 1] / h - M[idx + 1] * h / 6) * b)


def _solve_tridiagonal(lower, diag, upper, rhs):
    """Thomas algorithm; the systems here are diagonally dominant."""
    n = len(diag)
    c = np.zeros(n)
    d = np.zeros(n)
    c[0] = upper[0] / diag[0] if n > 1 else 0.0
    d[0] = rhs[0] / diag[0]
    for i in range(1, n):
        denom = diag[i] - lower[i - 1] * c[i - 1]
        if i < n - 1:
            c[i] = upper[i] / denom
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / denom
    out = np.empty(n)
    out[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        out[i] = d[i] - c[i] * out[i + 1]
    return out


def spline_build(data: GridFunction) -> CubicSpline:
    """Natural cubic spline (zero second derivative at both ends)."""
    x, y = data.mesh.nodes, data.values
    n = len(x)
    if n < 3:
        raise InvalidArgumentError("cubic spline needs at least 3 nodes")
    h = np.diff(x)
    delta = np.diff(y) / h
    diag = 2.0 * (h[:-1] + h[1:])
    off = h[1:-1]
    rhs = 6.0 * (delta[1:] - delta[:-1])
    second = np.zeros(n)
    second[1:-1] = _solve_tridiagonal(off, diag, off, rhs)
    return CubicSpline(data, second)
