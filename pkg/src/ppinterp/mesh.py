"""One-dimensional meshes: uniform node sets and spectral-element meshes.

An element mesh partitions ``[a, b]`` into ``ne`` elements of equal width,
each carrying ``p + 1`` nodes (uniformly spaced or Legendre-Gauss-Lobatto).
Neighbouring elements share their boundary node, so the mesh has
``ne * p + 1`` distinct nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ppinterp.exceptions import InvalidArgumentError


class NodeFamily(str, Enum):
    UNIFORM = "uniform"
    LGL = "lgl"


@dataclass(frozen=True, eq=False)
class Mesh1D:
    """Ordered nodes on ``[a, b]`` with element structure.

    Attributes
    ----------
    nodes : ndarray
        Strictly increasing coordinates, ``nodes[0] == a`` and ``nodes[-1] == b``.
    element_offsets : tuple of int
        Index of the first node of each element, followed by the index of the
        last node; ``len(element_offsets) == ne + 1``.
    domain : tuple of float
        ``(a, b)``.
    node_family : NodeFamily
    """

    nodes: np.ndarray
    element_offsets: tuple[int, ...]
    domain: tuple[float, float]
    node_family: NodeFamily

    def __post_init__(self) -> None:
        self.nodes.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def ne(self) -> int:
        return len(self.element_offsets) - 1

    @property
    def h(self) -> float:
        """Element width ``(b - a) / ne``."""
        a, b = self.domain
        return (b - a) / self.ne

    @property
    def degree(self) -> int | None:
        """Nodes per element minus one, or None if elements are ragged."""
        sizes = np.diff(self.element_offsets)
        if np.all(sizes == sizes[0]):
            return int(sizes[0])
        return None

    def element_of_interval(self, i: int) -> int:
        """Element owning interval ``[nodes[i], nodes[i+1]]``."""
        return int(np.searchsorted(self.element_offsets, i, side="right")) - 1

    def element_range(self, e: int) -> tuple[int, int]:
        return self.element_offsets[e], self.element_offsets[e + 1]

    def __repr__(self) -> str:
        return (f"Mesh1D(n={self.n}, ne={self.ne}, domain={self.domain}, "
                f"family={self.node_family.value})")


def _check_domain(a: float, b: float) -> None:
    if not (math.isfinite(a) and math.isfinite(b)):
        raise InvalidArgumentError(f"domain endpoints must be finite, got ({a}, {b})")
    if not a < b:
        raise InvalidArgumentError(f"domain requires a < b, got ({a}, {b})")


def uniform_mesh(a: float, b: float, n: int) -> Mesh1D:
    """``n`` equally spaced nodes on ``[a, b]`` forming a single element."""
    _check_domain(a, b)
    if int(n) != n or n < 2:
        raise InvalidArgumentError(f"uniform mesh needs n >= 2 nodes, got {n}")
    n = int(n)
    step = (b - a) / (n - 1)
    nodes = a + step * np.arange(n, dtype=float)
    nodes[-1] = b
    return Mesh1D(nodes, (0, n - 1), (float(a), float(b)), NodeFamily.UNIFORM)


def _legendre_and_derivs(p: int, x: float) -> tuple[float, float, float]:
    """Return P_p(x), P_p'(x), P_p''(x) from the three-term recurrence."""
    p0, p1 = 1.0, x
    d0, d1 = 0.0, 1.0
    for k in range(1, p):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
        d0, d1 = d1, d0 + (2 * k + 1) * p0
    if p == 0:
        return 1.0, 0.0, 0.0
    # Legendre ODE gives P'' away from the endpoints.
    dd = (2.0 * x * d1 - p * (p + 1) * p1) / (1.0 - x * x)
    return p1, d1, dd


def _bisect_root(p: int, lo: float, hi: float) -> float:
    flo = _legendre_and_derivs(p, lo)[1]
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = _legendre_and_derivs(p, mid)[1]
        if fm == 0.0 or hi - lo < 1e-16:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _bracketed_root(p: int, after: float) -> float:
    """Smallest root of P_p' greater than ``after``, by scan then bisection."""
    grid = np.linspace(after, 1.0, 64 * p + 2)[1:-1]
    vals = [_legendre_and_derivs(p, t)[1] for t in grid]
    for k in range(len(grid) - 1):
        if vals[k] == 0.0:
            return float(grid[k])
        if (vals[k] > 0) != (vals[k + 1] > 0):
            return _bisect_root(p, grid[k], grid[k + 1])
    raise ArithmeticError(f"no LGL root bracket found for p={p}")


def lgl_nodes(p: int) -> np.ndarray:
    """Legendre-Gauss-Lobatto nodes of degree ``p`` on ``[-1, 1]``.

    Returns the ``p + 1`` points ``-1``, the roots of ``P_p'``, and ``1``,
    sorted ascending. Interior roots are found by Newton iteration seeded with
    Chebyshev-Gauss-Lobatto points; a root whose Newton iterate stalls or
    lands out of order is recomputed by bisection on a sign bracket.
    """
    if int(p) != p or p < 1:
        raise InvalidArgumentError(f"LGL degree must be >= 1, got {p}")
    p = int(p)
    x = -np.cos(np.pi * np.arange(p + 1) / p)
    x[0], x[-1] = -1.0, 1.0
    for j in range(1, p):
        xj = x[j]
        converged = False
        for _ in range(100):
            _, d1, dd = _legendre_and_derivs(p, xj)
            if dd == 0.0 or not -1.0 < xj < 1.0:
                break
            step = d1 / dd
            xj -= step
            if abs(step) <= 1e-16 * max(1.0, abs(xj)):
                converged = True
                break
        if not converged or not x[j - 1] < xj < 1.0:
            xj = _bracketed_root(p, x[j - 1])
        x[j] = xj
    # Enforce exact antisymmetry.
    x = 0.5 * (x - x[::-1])
    if p % 2 == 0:
        x[p // 2] = 0.0
    return x


def element_mesh(a: float, b: float, ne: int, p: int,
                 family: NodeFamily | str = NodeFamily.LGL) -> Mesh1D:
    """``ne`` equal-width elements with ``p + 1`` nodes each.

    Element boundaries are computed directly as ``a + k * (b - a) / ne`` so
    shared nodes are bit-identical regardless of ``ne``.
    """
    _check_domain(a, b)
    if int(ne) != ne or ne < 1:
        raise InvalidArgumentError(f"number of elements must be >= 1, got {ne}")
    if int(p) != p or p < 1:
        raise InvalidArgumentError(f"element degree must be >= 1, got {p}")
    ne, p = int(ne), int(p)
    family = NodeFamily(family)
    if family is NodeFamily.LGL:
        ref = lgl_nodes(p)
    else:
        ref = np.linspace(-1.0, 1.0, p + 1)
    bounds = [a + k * (b - a) / ne for k in range(ne + 1)]
    bounds[-1] = b
    nodes = np.empty(ne * p + 1)
    for e in range(ne):
        left, right = bounds[e], bounds[e + 1]
        mid, half = 0.5 * (left + right), 0.5 * (right - left)
        local = mid + half * ref[1:p]
        nodes[e * p] = left
        nodes[e * p + 1:(e + 1) * p] = local
    nodes[-1] = b
    offsets = tuple(range(0, ne * p + 1, p))
    return Mesh1D(nodes, offsets, (float(a), float(b)), family)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Sample values on a mesh; the input to every interpolation method."""

    mesh: Mesh1D
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.mesh.n,):
            raise InvalidArgumentError(
                f"expected {self.mesh.n} values, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentError("grid values must be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def nodes(self) -> np.ndarray:
        return self.mesh.nodes

    @classmethod
    def sample(cls, mesh: Mesh1D, func) -> "GridFunction":
        return cls(mesh, np.asarray(func(mesh.nodes), dtype=float))


def mesh_from_nodes(nodes, domain: tuple[float, float] | None = None) -> Mesh1D:
    """Wrap arbitrary strictly increasing nodes as a single-element mesh."""
    nodes = np.array(nodes, dtype=float)
    if nodes.ndim != 1 or len(nodes) < 2:
        raise InvalidArgumentError("need at least two nodes")
    if not np.all(np.isfinite(nodes)):
        raise InvalidArgumentError("nodes must be finite")
    if not np.all(np.diff(nodes) > 0):
        raise InvalidArgumentError("nodes must be strictly increasing")
    if domain is None:
        domain = (float(nodes[0]), float(nodes[-1]))
    return Mesh1D(nodes, (0, len(nodes) - 1), domain, NodeFamily.UNIFORM)
