"""Single entry point dispatching a GridFunction to any interpolation method."""

from __future__ import annotations

from ppinterp import adaptive, classic
from ppinterp.adaptive import InterpConfig, Method
from ppinterp.mesh import GridFunction
from ppinterp.piecewise import Interpolant


def build_interpolant(data: GridFunction, config: InterpConfig,
                      workers: int | None = None) -> Interpolant:
    method = config.method
    if method.adaptive:
        return adaptive.build(data, config, workers=workers)
    if method is Method.STD:
        return classic.std_build(data)
    if method is Method.LINEAR:
        return classic.linear_build(data)
    if method is Method.PCHIP:
        return classic.pchip_build(data)
    if method is Method.SPLINE:
        return classic.spline_build(data)
    raise AssertionError(method)
