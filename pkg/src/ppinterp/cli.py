"""Command-line front end.

Exit codes: 0 success, 2 usage or validation error, 3 precondition failure
(for example negative data under PPI). Data goes to stdout or ``--output``;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

import numpy as np

from ppinterp.adaptive import InterpConfig, Method
from ppinterp.convergence import (
    ErrorReport,
    convergence_table,
    error_ratios,
    fmt,
    ratios_to_csv,
    sample_points,
)
from ppinterp.exceptions import InterpError, PreconditionError
from ppinterp.functions import TestFunction, bind
from ppinterp.interp import build_interpolant
from ppinterp.mesh import GridFunction, Mesh1D, NodeFamily, element_mesh, mesh_from_nodes, uniform_mesh
from ppinterp.piecewise import ExtrapolationPolicy
from ppinterp.remap import REMAP_METHODS, demo_meshes, demo_profile, remap_cycle
from ppinterp.tensor import GridFunction2D, interpolate_2d


class UsageError(Exception):
    """Bad flag value; reported with exit code 2."""


def _floats(text: str, flag: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated numbers, got {text!r}") from None


def _ints(text: str, flag: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _domain(args, fallback=None) -> tuple[float, float]:
    if args.domain is None:
        if fallback is None:
            raise UsageError("--domain is required when no built-in function is given")
        return fallback
    vals = _floats(args.domain, "--domain")
    if len(vals) != 2:
        raise UsageError(f"--domain: expected 'a,b', got {args.domain!r}")
    return vals[0], vals[1]


def _mesh(args, domain) -> Mesh1D:
    a, b = domain
    family = NodeFamily(args.family)
    try:
        if args.elements is not None:
            if args.degree is None:
                raise UsageError("--elements needs --degree (nodes per element minus one)")
            return element_mesh(a, b, args.elements, args.degree, family)
        if args.n is not None:
            if family is NodeFamily.LGL:
                raise UsageError("--family lgl needs --elements and --degree, not --n")
            return uniform_mesh(a, b, args.n)
    except InterpError as exc:
        raise UsageError(f"mesh: {exc}") from None
    raise UsageError("give either --n or --elements/--degree")


def _add_mesh_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=[f.value for f in NodeFamily], default="uniform")
    p.add_argument("--n", type=int, help="number of uniform nodes (single element)")
    p.add_argument("--elements", type=int, help="number of elements")
    p.add_argument("--degree", type=int, help="element degree (nodes per element minus one)")
    p.add_argument("--domain", help="'a,b'; defaults to the function's domain")


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_rows(path: str) -> list[tuple[int, list[str]]]:
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            rows.append((lineno, row))
    return rows


def _parse_float(cell: str, lineno: int, path: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise UsageError(f"{path}:{lineno}: malformed number {cell!r}") from None


def read_samples_1d(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Two-column ``x,value`` CSV; an optional non-numeric header row is skipped."""
    rows = _read_rows(path)
    if rows:
        try:
            float(rows[0][1][0])
        except ValueError:
            rows = rows[1:]
    xs, vs = [], []
    for lineno, row in rows:
        if len(row) != 2:
            raise UsageError(f"{path}:{lineno}: expected 2 columns, got {len(row)}")
        xs.append(_parse_float(row[0], lineno, path))
        vs.append(_parse_float(row[1], lineno, path))
    if len(xs) < 2:
        raise UsageError(f"{path}: need at least 2 samples")
    xs = np.array(xs)
    bad = np.nonzero(np.diff(xs) <= 0)[0]
    if len(bad):
        lineno = rows[bad[0] + 1][0]
        raise UsageError(f"{path}:{lineno}: x values must be strictly increasing")
    return xs, np.array(vs)


def read_grid_2d(path: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Grid CSV: first row holds y coordinates, first column x coordinates."""
    rows = _read_rows(path)
    if len(rows) < 3:
        raise UsageError(f"{path}: grid needs a header row and at least 2 data rows")
    lineno, header = rows[0]
    ys = np.array([_parse_float(c, lineno, path) for c in header[1:]])
    xs, body = [], []
    for lineno, row in rows[1:]:
        if len(row) != len(header):
            raise UsageError(f"{path}:{lineno}: expected {len(header)} columns, got {len(row)}")
        xs.append(_parse_float(row[0], lineno, path))
        body.append([_parse_float(c, lineno, path) for c in row[1:]])
    xs = np.array(xs)
    for name, v in (("x", xs), ("y", ys)):
        if not np.all(np.diff(v) > 0):
            raise UsageError(f"{path}: {name} coordinates must be strictly increasing")
    return xs, ys, np.array(body)


def write_grid_2d(xs, ys, values) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x/y"] + [fmt(y) for y in ys])
    for x, row in zip(xs, values):
        w.writerow([fmt(x)] + [fmt(v) for v in row])
    return buf.getvalue()


def _config(args) -> InterpConfig:
    try:
        return InterpConfig(Method(args.method), degree=args.target_degree, floor=args.floor,
                            element_confined=args.element_confined)
    except InterpError as exc:
        raise UsageError(f"--target-degree/--floor: {exc}") from None


def cmd_nodes(args) -> int:
    mesh = _mesh(args, _domain(args))
    _emit("x\n" + "".join(fmt(x) + "\n" for x in mesh.nodes), args.output)
    return 0


def _targets(args, domain) -> np.ndarray:
    if args.targets is not None:
        rows = _read_rows(args.targets)
        if rows:
            try:
                float(rows[0][1][0])
            except ValueError:
                rows = rows[1:]
        return np.array([_parse_float(r[0], ln, args.targets) for ln, r in rows])
    if args.targets_n is not None:
        if args.targets_n < 2:
            raise UsageError("--targets-n must be >= 2")
        return sample_points(domain, args.targets_n)
    raise UsageError("give --targets CSV or --targets-n")


def cmd_interp(args) -> int:
    config = _config(args)
    fid = TestFunction(args.function) if args.function else None
    if fid is not None and args.input:
        raise UsageError("--function and --input are mutually exclusive")
    if fid is None and not args.input:
        raise UsageError("give --function or --input")
    two_d = args.grid or (fid is not None and fid.dim == 2)
    policy = ExtrapolationPolicy(args.policy)

    if two_d:
        if fid is not None:
            mesh = _mesh(args, _domain(args, fid.domain))
            data = GridFunction2D.sample(mesh, mesh, bind(fid))
        else:
            xs, ys, vals = read_grid_2d(args.input)
            data = GridFunction2D(mesh_from_nodes(xs), mesh_from_nodes(ys), vals)
        tx = _targets(args, data.mesh_x.domain)
        ty = _targets(args, data.mesh_y.domain)
        result = interpolate_2d(data, tx, ty, config, order=args.order, policy=policy,
                                workers=args.jobs)
        text = write_grid_2d(tx, ty, result.values)
        summary = (f"# min={fmt(result.values.min())},avg_degree={fmt(result.avg_degree)}\n")
        _emit(text + summary, args.output)
        return 0

    if fid is not None:
        mesh = _mesh(args, _domain(args, fid.domain))
        params = {"h": mesh.h} if fid.needs_h else {}
        data = GridFunction.sample(mesh, bind(fid, **params))
    else:
        xs, vs = read_samples_1d(args.input)
        if args.elements is not None or args.n is not None:
            raise UsageError("--input carries its own nodes; drop --n/--elements")
        data = GridFunction(mesh_from_nodes(xs), vs)
    interp = build_interpolant(data, config, workers=args.jobs)
    targets = _targets(args, data.mesh.domain)
    values = interp.evaluate(targets, policy)
    lines = ["x,value\n"] + [f"{fmt(x)},{fmt(v)}\n" for x, v in zip(targets, values)]
    lines.append(f"# min={fmt(values.min())},avg_degree={fmt(interp.avg_degree)}\n")
    _emit("".join(lines), args.output)
    return 0


def _table_inputs(args):
    n_list = _ints(args.n_list, "--n-list")
    degrees = _ints(args.degrees, "--degrees")
    if not n_list:
        raise UsageError("--n-list must not be empty")
    if not degrees:
        raise UsageError("--degrees must not be empty")
    fid = TestFunction(args.function)
    if fid.dim != 1:
        raise UsageError(f"--function: {fid.value} is 2D; convergence tables are 1D")
    return fid, n_list, degrees


def _run_tables(args, methods) -> int:
    fid, n_list, degrees = _table_inputs(args)
    report = ErrorReport()
    for method in methods:
        try:
            part = convergence_table(method, fid, n_list, degrees, args.family,
                                     workers=args.jobs, floor=args.floor,
                                     element_confined=args.element_confined)
        except PreconditionError:
            raise
        except InterpError as exc:
            raise UsageError(f"--n-list/--degrees: {exc}") from None
        report.extend(part)
    _emit(report.to_csv(), args.output)
    if args.ratios is not None:
        try:
            ratios = error_ratios(report)
        except InterpError as exc:
            raise UsageError(f"--ratios: {exc}") from None
        text = ratios_to_csv(ratios)
        if args.ratios == "-":
            sys.stdout.write(text)
        else:
            _emit(text, args.ratios)
    return 0


def cmd_convergence(args) -> int:
    return _run_tables(args, [args.method])


def cmd_compare(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    valid = {m.value for m in Method}
    bad = [m for m in methods if m not in valid]
    if not methods or bad:
        raise UsageError(f"--methods: unknown or empty method list {args.methods!r}")
    return _run_tables(args, methods)


def cmd_remap(args) -> int:
    if args.cycles < 1:
        raise UsageError("--cycles must be >= 1")
    try:
        dyn, phys = demo_meshes(args.elements, args.degree)
    except InterpError as exc:
        raise UsageError(f"--elements/--degree: {exc}") from None
    initial = GridFunction.sample(dyn, demo_profile)
    trace = remap_cycle(initial, phys, args.method, args.cycles, degree=args.target_degree)
    _emit(trace.to_csv(), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ppinterp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    methods = [m.value for m in Method]

    p = sub.add_parser("nodes", help="print mesh nodes")
    _add_mesh_flags(p)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_nodes)

    def method_flags(p, multiple=False):
        if multiple:
            p.add_argument("--methods", required=True, help="comma-separated methods")
        else:
            p.add_argument("--method", choices=methods, required=True)
        p.add_argument("--floor", type=float, default=0.0, help="PPI lower bound")
        p.add_argument("--element-confined", action="store_true",
                       help="keep adaptive stencils inside each element")
        p.add_argument("--jobs", type=int, default=None, help="worker threads")
        p.add_argument("--output", "-o")

    p = sub.add_parser("interp", help="interpolate a function or sample file")
    _add_mesh_flags(p)
    method_flags(p)
    p.add_argument("--target-degree", "-d", type=int, default=1)
    p.add_argument("--function", choices=[f.value for f in TestFunction])
    p.add_argument("--input", help="x,value CSV (or grid CSV with --grid)")
    p.add_argument("--grid", action="store_true", help="--input is a 2D grid CSV")
    p.add_argument("--targets", help="CSV whose first column holds target points")
    p.add_argument("--targets-n", type=int, help="number of uniform target points")
    p.add_argument("--policy", choices=[e.value for e in ExtrapolationPolicy], default="error")
    p.add_argument("--order", choices=["xy", "yx"], default="xy", help="2D stage order")
    p.set_defaults(func=cmd_interp)

    for name, func, multiple in (("convergence", cmd_convergence, False),
                                 ("compare", cmd_compare, True)):
        p = sub.add_parser(name, help="L2 error table")
        method_flags(p, multiple)
        p.add_argument("--function", choices=[f.value for f in TestFunction], required=True)
        p.add_argument("--n-list", required=True, help="e.g. 17,33,65")
        p.add_argument("--degrees", default="1", help="target degrees, e.g. 1,4")
        p.add_argument("--family", choices=[f.value for f in NodeFamily], default="uniform")
        p.add_argument("--ratios", nargs="?", const="-", default=None,
                       help="also write e_N/e_2N ratios (to PATH or stdout)")
        p.set_defaults(func=func)

    p = sub.add_parser("remap", help="round-trip LGL <-> uniform remapping trace")
    p.add_argument("--method", choices=REMAP_METHODS, required=True)
    p.add_argument("--cycles", type=int, default=1)
    p.add_argument("--elements", type=int, default=8)
    p.add_argument("--degree", type=int, default=4, help="element degree")
    p.add_argument("--target-degree", "-d", type=int, default=4)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_remap)
    return parser


def _glue_domain(argv: list[str]) -> list[str]:
    # "--domain -1,1" would otherwise be parsed as an unknown flag.
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--domain":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--domain={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_domain(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ppinterp {args.command}: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"ppinterp {args.command}: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"ppinterp {args.command}: {exc}", file=sys.stderr)
        return 2
    except InterpError as exc:
        print(f"ppinterp {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
