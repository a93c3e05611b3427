"""The ten benchmark functions (f1-f6 in 1D, f7-f10 in 2D).

f4 and f5 are built around an element width ``h`` and must be told the
element size of the mesh they are sampled on.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from ppinterp.exceptions import DomainError, InvalidArgumentError


class TestFunction(str, Enum):
    __test__ = False  # keep pytest from collecting the enum

    F1 = "f1"
    F2 = "f2"
    F3 = "f3"
    F4 = "f4"
    F5 = "f5"
    F6 = "f6"
    F7 = "f7"
    F8 = "f8"
    F9 = "f9"
    F10 = "f10"

    @property
    def dim(self) -> int:
        return 2 if self in _TWO_D else 1

    @property
    def domain(self) -> tuple[float, float]:
        """Interval for 1D functions; per-axis interval for the 2D ones."""
        return _DOMAINS[self]

    @property
    def needs_h(self) -> bool:
        return self in (TestFunction.F4, TestFunction.F5)


_TWO_D = {TestFunction.F7, TestFunction.F8, TestFunction.F9, TestFunction.F10}

_DOMAINS = {
    TestFunction.F1: (-1.0, 1.0),
    TestFunction.F2: (-0.2, 0.2),
    TestFunction.F3: (-1.0, 1.0),
    TestFunction.F4: (0.0, 1.0),
    TestFunction.F5: (-2.0, 0.0),
    TestFunction.F6: (0.0, math.pi),
    TestFunction.F7: (-1.0, 1.0),
    TestFunction.F8: (-1.0, 1.0),
    TestFunction.F9: (-1.0, 1.0),
    TestFunction.F10: (-0.2, 0.2),
}

DEFAULTS = {
    "f2": {"k": 100.0},
    "f4": {"delta": 0.01},
    # Raw f5 runs from -1 up to about 3; the unit offset makes it nonnegative.
    "f5": {"k": 10.0, "a": -2.0, "offset": 1.0},
    "f10": {"k": 100.0},
}


def _check_in(v: np.ndarray, dom: tuple[float, float], name: str) -> None:
    lo, hi = dom
    slack = 1e-12 * (hi - lo)
    bad = (v < lo - slack) | (v > hi + slack)
    if np.any(bad):
        raise DomainError(f"{name}={v[bad].flat[0]!r} outside domain [{lo}, {hi}]")


def _f3(x):
    # Shifted Tadmor-Tanner exponential, so the left branch rises from 0 at
    # x = -1 to 2 at x = -0.5; the breakpoint belongs to the left branch.
    left = 1.0 + (2.0 * np.exp(2.0 * np.pi * (x + 1.0)) - 1.0 - np.exp(np.pi)) / (np.exp(np.pi) - 1.0)
    right = 1.0 - np.sin(2.0 * np.pi * x / 3.0 + np.pi / 3.0)
    return np.where(x <= -0.5, left, right)


def _f5(x, h, k, a, offset):
    b = _DOMAINS[TestFunction.F5][1]
    ne = max(1, int(round((b - a) / h)))
    e = np.clip(np.floor((x - a) / h).astype(int), 0, ne - 1)
    jumps = np.concatenate([[0.0], np.cumsum(np.tanh((a + h * np.arange(1, ne)) * k))])
    return (e + 1) * np.tanh(x * k) - jumps[e] + offset


def _f8(x, y):
    s = y - x
    r2 = (x - 1.5) ** 2 + (y - 0.5) ** 2
    return np.select(
        [(s >= 0) & (s <= 0.5), s >= 0.5, r2 <= 1.0 / 16.0],
        [2.0 * s, 1.0, np.cos(4.0 * np.pi * np.sqrt(r2))],
        default=0.0,
    )


def eval_test_function(fid: TestFunction | str, x, y=None, **params):
    """Evaluate benchmark function ``fid`` at ``x`` (and ``y`` for f7-f10).

    Parameters
    ----------
    fid : TestFunction or str
    x, y : array_like
        Points inside the function's domain; 2D functions broadcast ``x``
        against ``y``.
    **params
        ``h`` (element width, required by f4 and f5), ``k``, ``delta``, ``a``
        and ``offset`` override the defaults.
    """
    fid = TestFunction(fid)
    opts = dict(DEFAULTS.get(fid.value, {}))
    opts.update(params)
    x = np.asarray(x, dtype=float)
    _check_in(x, fid.domain, "x")
    if fid.dim == 2:
        if y is None:
            raise InvalidArgumentError(f"{fid.value} is two-dimensional and needs y")
        y = np.asarray(y, dtype=float)
        _check_in(y, fid.domain, "y")
    if fid.needs_h:
        h = opts.get("h")
        if h is None or not h > 0:
            raise InvalidArgumentError(f"{fid.value} requires a positive element width h")

    if fid is TestFunction.F1:
        out = 1.0 / (1.0 + 25.0 * x * x)
    elif fid is TestFunction.F2:
        out = 1.0 / (1.0 + np.exp(-2.0 * opts["k"] * x))
    elif fid is TestFunction.F3:
        out = _f3(x)
    elif fid is TestFunction.F4:
        out = 1.0 - np.abs(2.0 / np.pi * np.arctan(np.sin(np.pi * x / opts["h"]) / opts["delta"]))
    elif fid is TestFunction.F5:
        out = _f5(x, opts["h"], opts["k"], opts["a"], opts["offset"])
    elif fid is TestFunction.F6:
        out = 1.0 + np.sin(x)
    elif fid is TestFunction.F7:
        out = 1.0 / (1.0 + 25.0 * (x * x + y * y))
    elif fid is TestFunction.F8:
        out = _f8(x, y)
    elif fid is TestFunction.F9:
        out = np.maximum(0.0, np.sin(np.pi * x) * np.sin(np.pi * y))
    else:
        out = 1.0 / (1.0 + np.exp(-math.sqrt(2.0) * opts["k"] * (x + y)))
    return float(out) if np.ndim(out) == 0 else out


def bind(fid: TestFunction | str, **params):
    """Return ``f(x)`` / ``f(x, y)`` with parameters fixed."""
    fid = TestFunction(fid)
    if fid.dim == 2:
        return lambda x, y: eval_test_function(fid, x, y, **params)
    return lambda x: eval_test_function(fid, x, **params)
