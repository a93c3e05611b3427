"""Tensor-product 2D interpolation built from any 1D method."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ppinterp.adaptive import InterpConfig
from ppinterp.exceptions import InvalidArgumentError
from ppinterp.interp import build_interpolant
from ppinterp.mesh import GridFunction, Mesh1D
from ppinterp.piecewise import ExtrapolationPolicy


@dataclass(frozen=True, eq=False)
class GridFunction2D:
    """Samples ``values[i, j] = f(mesh_x.nodes[i], mesh_y.nodes[j])``."""

    mesh_x: Mesh1D
    mesh_y: Mesh1D
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        expected = (self.mesh_x.n, self.mesh_y.n)
        if values.shape != expected:
            raise InvalidArgumentError(f"value matrix has shape {values.shape}, expected {expected}")
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentError("grid values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(cls, mesh_x: Mesh1D, mesh_y: Mesh1D, func) -> "GridFunction2D":
        return cls(mesh_x, mesh_y, func(mesh_x.nodes[:, None], mesh_y.nodes[None, :]))


@dataclass(frozen=True)
class Result2D:
    values: np.ndarray  # shape (len(targets_x), len(targets_y))
    avg_degree: float


def _sweep(mesh: Mesh1D, lines: np.ndarray, targets: np.ndarray, config: InterpConfig,
           policy, workers: int | None):
    """Interpolate every row of ``lines`` (sampled on ``mesh``) onto ``targets``."""

    def one(row):
        interp = build_interpolant(GridFunction(mesh, row), config)
        return interp.evaluate(targets, policy), interp.degrees.sum(), interp.n_intervals

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, lines))
    else:
        results = [one(row) for row in lines]
    out = np.array([r[0] for r in results])
    return out, sum(int(r[1]) for r in results), sum(r[2] for r in results)


def interpolate_2d(data: GridFunction2D, targets_x, targets_y, config: InterpConfig,
                   order: str = "xy", policy=ExtrapolationPolicy.ERROR,
                   workers: int | None = None) -> Result2D:
    """Two-stage tensor-product interpolation onto ``targets_x x targets_y``.

    With ``order="xy"`` each source row ``values[:, j]`` is first
    interpolated in x, then each resulting column is interpolated in y;
    ``order="yx"`` swaps the stages. Adaptive predicates apply in both
    stages. ``avg_degree`` averages over every interval of every 1D build.
    """
    tx = np.asarray(targets_x, dtype=float).reshape(-1)
    ty = np.asarray(targets_y, dtype=float).reshape(-1)
    if order == "xy":
        stage1, deg1, n1 = _sweep(data.mesh_x, data.values.T, tx, config, policy, workers)
        # stage1[j, a] = value at (tx[a], y_j)
        out, deg2, n2 = _sweep(data.mesh_y, stage1.T, ty, config, policy, workers)
    elif order == "yx":
        stage1, deg1, n1 = _sweep(data.mesh_y, data.values, ty, config, policy, workers)
        # stage1[i, b] = value at (x_i, ty[b])
        out_t, deg2, n2 = _sweep(data.mesh_x, stage1.T, tx, config, policy, workers)
        out = out_t.T
    else:
        raise InvalidArgumentError(f"order must be 'xy' or 'yx', got {order!r}")
    return Result2D(out, (deg1 + deg2) / (n1 + n2))
