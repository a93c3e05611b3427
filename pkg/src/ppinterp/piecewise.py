"""Common evaluation machinery for piecewise interpolants on a 1D mesh."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ppinterp.divdiff import NewtonPoly
from ppinterp.exceptions import DomainError, InvalidArgumentError
from ppinterp.mesh import GridFunction


class ExtrapolationPolicy(str, Enum):
    ERROR = "error"
    CLAMP = "clamp"  # evaluate the edge interval's polynomial outside the domain


class Interpolant:
    """Base class: one polynomial piece per mesh interval.

    Subclasses implement ``_eval_pieces(idx, t)``, evaluating piece ``idx[k]``
    at ``t[k]``.
    """

    data: GridFunction

    @property
    def nodes(self) -> np.ndarray:
        return self.data.mesh.nodes

    @property
    def n_intervals(self) -> int:
        return len(self.nodes) - 1

    @property
    def degrees(self) -> np.ndarray:
        raise NotImplementedError

    @property
    def avg_degree(self) -> float:
        return float(np.mean(self.degrees))

    def _eval_pieces(self, idx: np.ndarray, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def locate(self, targets: np.ndarray) -> np.ndarray:
        """Index of the interval containing each target (edge intervals for outliers)."""
        idx = np.searchsorted(self.nodes, targets, side="right") - 1
        return np.clip(idx, 0, self.n_intervals - 1)

    def evaluate(self, targets, policy: ExtrapolationPolicy | str = ExtrapolationPolicy.ERROR):
        """Evaluate at ``targets``; nodal targets return the nodal data exactly."""
        policy = ExtrapolationPolicy(policy)
        t = np.asarray(targets, dtype=float)
        scalar = t.ndim == 0
        t = t.reshape(-1)
        if not np.all(np.isfinite(t)):
            raise InvalidArgumentError("evaluation targets must be finite")
        a, b = self.nodes[0], self.nodes[-1]
        outside = (t < a) | (t > b)
        if policy is ExtrapolationPolicy.ERROR and outside.any():
            bad = t[outside][0]
            raise DomainError(f"target {bad!r} lies outside the interpolation domain [{a}, {b}]")
        idx = self.locate(t)
        out = self._eval_pieces(idx, t)
        pos = np.clip(np.searchsorted(self.nodes, t), 0, len(self.nodes) - 1)
        hit = self.nodes[pos] == t
        out[hit] = self.data.values[pos[hit]]
        return float(out[0]) if scalar else out

    def __call__(self, targets, policy: ExtrapolationPolicy | str = ExtrapolationPolicy.ERROR):
        return self.evaluate(targets, policy)


@dataclass(frozen=True, eq=False)
class StencilInterpolant:
    """Newton-form polynomial for interval ``[x_i, x_{i+1}]`` on stencil ``lo..hi``."""

    interval: int
    lo: int
    hi: int
    poly: NewtonPoly

    @property
    def achieved_degree(self) -> int:
        return self.hi - self.lo


class PiecewisePolynomial(Interpolant):
    """Per-interval Newton-form polynomials, evaluated in one vectorized pass."""

    def __init__(self, data: GridFunction, pieces: list[StencilInterpolant]):
        if len(pieces) != data.mesh.n - 1:
            raise InvalidArgumentError(
                f"expected {data.mesh.n - 1} pieces, got {len(pieces)}")
        self.data = data
        self.pieces = pieces
        dmax = max(p.poly.degree for p in pieces)
        n = len(pieces)
        self._coef = np.zeros((n, dmax + 1))
        self._absc = np.zeros((n, max(dmax, 1)))
        for k, piece in enumerate(pieces):
            d = piece.poly.degree
            self._coef[k, :d + 1] = piece.poly.coefficients
            self._absc[k, :d] = piece.poly.abscissae[:d]
        self._degrees = np.array([p.achieved_degree for p in pieces])

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def _eval_pieces(self, idx: np.ndarray, t: np.ndarray) -> np.ndarray:
        coef = self._coef[idx]
        absc = self._absc[idx]
        out = coef[:, -1].copy()
        for k in range(coef.shape[1] - 2, -1, -1):
            out = out * (t - absc[:, k]) + coef[:, k]
        return out
