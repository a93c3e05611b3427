"""L2 error measurement and convergence tables.

Errors are discrete L2 norms: the squared pointwise error is sampled at
10000 equally spaced points (endpoints included) and integrated with the
trapezoidal rule. 2D errors use a 1001 x 1001 sampling grid.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ppinterp.adaptive import InterpConfig, Method
from ppinterp.exceptions import InvalidArgumentError
from ppinterp.functions import TestFunction, bind
from ppinterp.interp import build_interpolant
from ppinterp.mesh import GridFunction, Mesh1D, NodeFamily, element_mesh, uniform_mesh

N_SAMPLES_1D = 10000
N_SAMPLES_2D = 1001
NOISE_FLOOR = 1e-13


def sample_points(domain: tuple[float, float], n: int = N_SAMPLES_1D) -> np.ndarray:
    a, b = domain
    s = np.linspace(a, b, n)
    s[-1] = b
    return s


def l2_norm_1d(err: np.ndarray, s: np.ndarray) -> float:
    return math.sqrt(float(np.trapezoid(err * err, s)))


def l2_error_1d(truth, approx, domain: tuple[float, float], n: int = N_SAMPLES_1D) -> float:
    s = sample_points(domain, n)
    err = np.asarray(approx(s), dtype=float) - np.asarray(truth(s), dtype=float)
    return l2_norm_1d(err, s)


def l2_norm_2d(err: np.ndarray, sx: np.ndarray, sy: np.ndarray) -> float:
    inner = np.trapezoid(err * err, sy, axis=1)
    return math.sqrt(float(np.trapezoid(inner, sx)))


def l2_error_2d(truth, approx_grid: np.ndarray, sx: np.ndarray, sy: np.ndarray) -> float:
    """``approx_grid[i, j]`` approximates ``truth(sx[i], sy[j])``."""
    exact = truth(sx[:, None], sy[None, :])
    return l2_norm_2d(approx_grid - exact, sx, sy)


def table_mesh(family: NodeFamily | str, domain: tuple[float, float], n: int, d: int) -> Mesh1D:
    """Mesh for one table row.

    LGL: ``(n - 1) / d`` elements of degree ``d``. Uniform: ``n`` equally
    spaced nodes, grouped into ``(n - 1) / d`` elements when that divides
    evenly and into a single element otherwise.
    """
    family = NodeFamily(family)
    a, b = domain
    if n < 2 or d < 1:
        raise InvalidArgumentError(f"invalid (N, d) pair ({n}, {d})")
    if (n - 1) % d:
        if family is NodeFamily.LGL:
            raise InvalidArgumentError(
                f"(N, d) = ({n}, {d}) is inconsistent with an LGL mesh: N - 1 must be divisible by d")
        return uniform_mesh(a, b, n)
    return element_mesh(a, b, (n - 1) // d, d, family)


@dataclass(frozen=True)
class ErrorRow:
    n: int
    method: str
    degree: int
    l2_error: float
    avg_degree: float
    min_value: float
    runtime: float = field(default=0.0, compare=False)


CSV_FIELDS = ("N", "method", "degree", "l2_error", "avg_degree", "min_value")


def fmt(v: float) -> str:
    """17 significant digits, the CSV convention for floats."""
    return f"{v:.16e}"


@dataclass
class ErrorReport:
    rows: list[ErrorRow] = field(default_factory=list)

    def add(self, row: ErrorRow) -> None:
        key = (row.n, row.method, row.degree)
        if any((r.n, r.method, r.degree) == key for r in self.rows):
            raise InvalidArgumentError(f"duplicate report row {key}")
        self.rows.append(row)

    def extend(self, other: "ErrorReport") -> None:
        for row in other.rows:
            self.add(row)

    def errors(self, method: str, degree: int) -> list[float]:
        return [r.l2_error for r in self.select(method, degree)]

    def select(self, method: str, degree: int) -> list[ErrorRow]:
        return sorted((r for r in self.rows if r.method == method and r.degree == degree),
                      key=lambda r: r.n)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in self.rows:
            w.writerow([r.n, r.method, r.degree, fmt(r.l2_error), fmt(r.avg_degree),
                        fmt(r.min_value)])
        return buf.getvalue()


def _run_row(method: Method, fid: TestFunction, n: int, d: int, family: NodeFamily,
             params: dict, config_kw: dict) -> ErrorRow:
    domain = fid.domain
    mesh = table_mesh(family, domain, n, d)
    fparams = dict(params)
    if fid.needs_h:
        fparams.setdefault("h", mesh.h)
    f = bind(fid, **fparams)
    start = time.perf_counter()
    interp = build_interpolant(GridFunction.sample(mesh, f),
                               InterpConfig(method, degree=d, **config_kw))
    s = sample_points(domain)
    approx = interp(s)
    err = l2_norm_1d(approx - f(s), s)
    runtime = time.perf_counter() - start
    return ErrorRow(n, method.value, d, err, interp.avg_degree, float(approx.min()), runtime)


def convergence_table(method: Method | str, function: TestFunction | str, n_list, degree_list,
                      family: NodeFamily | str = NodeFamily.UNIFORM, params: dict | None = None,
                      workers: int | None = None, **config_kw) -> ErrorReport:
    """One row per ``(N, d)``: L2 error, average degree and sampled minimum.

    ``params`` are passed to the test function (``h`` defaults to the mesh's
    element width for f4/f5); ``config_kw`` go to :class:`InterpConfig`.
    """
    method = Method(method)
    fid = TestFunction(function)
    family = NodeFamily(family)
    if fid.dim != 1:
        raise InvalidArgumentError(f"{fid.value} is two-dimensional; use the 2D harness")
    n_list, degree_list = list(n_list), list(degree_list)
    if not n_list or not degree_list:
        raise InvalidArgumentError("N list and degree list must be non-empty")
    jobs = [(n, d) for d in degree_list for n in n_list]
    for n, d in jobs:
        # validate every pair before any computation
        table_mesh(family, fid.domain, n, d)
    params = params or {}

    def run(job):
        return _run_row(method, fid, job[0], job[1], family, params, config_kw)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, jobs))
    else:
        rows = [run(j) for j in jobs]
    report = ErrorReport()
    for row in rows:
        report.add(row)
    return report


@dataclass(frozen=True)
class RatioRow:
    method: str
    degree: int
    n_coarse: int
    n_fine: int
    ratio: float
    resolved: bool  # both errors above the round-off floor


def error_ratios(report: ErrorReport, noise_floor: float = NOISE_FLOOR) -> list[RatioRow]:
    """Consecutive ratios ``e_{N_i} / e_{N_{i+1}}`` per (method, degree).

    A zero denominator gives NaN. ``resolved`` is False when either error is
    at or below ``noise_floor``; such ratios measure round-off, not
    convergence.
    """
    keys = []
    for r in report.rows:
        if (r.method, r.degree) not in keys:
            keys.append((r.method, r.degree))
    out = []
    for method, degree in keys:
        rows = report.select(method, degree)
        if len(rows) < 2:
            raise InvalidArgumentError(
                f"need at least two rows for ratios of ({method}, {degree}), got {len(rows)}")
        for c, f in zip(rows, rows[1:]):
            ratio = c.l2_error / f.l2_error if f.l2_error > 0 else math.nan
            resolved = c.l2_error > noise_floor and f.l2_error > noise_floor
            out.append(RatioRow(method, degree, c.n, f.n, ratio, resolved))
    return out


def ratios_to_csv(ratios: list[RatioRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("method", "degree", "N_coarse", "N_fine", "ratio", "resolved"))
    for r in ratios:
        w.writerow([r.method, r.degree, r.n_coarse, r.n_fine, fmt(r.ratio), int(r.resolved)])
    return buf.getvalue()
