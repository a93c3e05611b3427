import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ppinterp.adaptive import InterpConfig, Method, build, build_interval
from ppinterp.divdiff import certified_min, to_bernstein
from ppinterp.exceptions import InvalidArgumentError, PreconditionError, UnsupportedDegreeError
from ppinterp.functions import TestFunction, bind
from ppinterp.mesh import GridFunction, element_mesh, mesh_from_nodes, uniform_mesh
from ppinterp.piecewise import ExtrapolationPolicy

PPI = Method.PPI
DBI = Method.DBI


def grid(x, u):
    return GridFunction(mesh_from_nodes(np.asarray(x, dtype=float)), np.asarray(u, dtype=float))


def sampled(fid, n=17, family="uniform", p=None):
    a, b = TestFunction(fid).domain
    if p is None:
        mesh = uniform_mesh(a, b, n)
    else:
        mesh = element_mesh(a, b, (n - 1) // p, p, family)
    params = {"h": mesh.h} if TestFunction(fid).needs_h else {}
    return GridFunction.sample(mesh, bind(fid, **params))


class TestConfig:
    @pytest.mark.parametrize("d", [0, -1, 2.5])
    def test_bad_degree(self, d):
        with pytest.raises(InvalidArgumentError):
            InterpConfig(PPI, degree=d)

    def test_degree_cap(self):
        with pytest.raises(UnsupportedDegreeError):
            InterpConfig(PPI, degree=33)

    def test_defaults(self):
        c = InterpConfig()
        assert (c.method, c.degree, c.floor, c.element_confined) == (PPI, 1, 0.0, False)

    def test_fixed_method_rejected(self):
        with pytest.raises(InvalidArgumentError):
            build(grid([0, 1], [0, 1]), InterpConfig(Method.LINEAR))


class TestBuildInterval:
    def test_constant_data(self):
        s = build_interval(grid([0, 1, 2], [1, 1, 1]), 0, InterpConfig(PPI, degree=2))
        assert s.achieved_degree == 2
        np.testing.assert_allclose(s.poly.coefficients, [1, 0, 0])

    def test_dbi_parabola_accepted(self):
        # p(x) = 2x - x^2 peaks at 1 = max(u0, u1) on [0, 1]
        s = build_interval(grid([0, 1, 2], [0, 1, 0]), 0, InterpConfig(DBI, degree=2))
        assert s.achieved_degree == 2
        assert (s.lo, s.hi) == (0, 2)
        assert certified_min(to_bernstein(s.poly, (0, 1))).nonnegative

    def test_base_case_always_accepted(self):
        s = build_interval(grid([0, 1, 2, 3], [0, 0, 5, 0]), 0, InterpConfig(PPI, degree=3))
        assert s.lo <= 0 and s.hi >= 1

    def test_ppi_rejects_dip_below_floor(self):
        # the only extension of [1, 2] dips below zero on the interval
        data = grid([0, 1, 2], [0, 0, 1])
        s = build_interval(data, 0, InterpConfig(PPI, degree=2))
        assert s.achieved_degree == 1

    def test_other_side_tried(self):
        # left DD 1.5 beats right DD -10 but dips below zero on [1, 2];
        # the right extension bulges upward and is accepted instead
        x = [0, 1, 2, 2.1]
        u = [2.0, 0.0, 1.0, 0.0]
        s = build_interval(grid(x, u), 1, InterpConfig(PPI, degree=2))
        assert (s.lo, s.hi) == (1, 3)

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            build_interval(grid([0, 1, 2], [1, -1, 1]), 0, InterpConfig(PPI, degree=2))

    def test_floor_above_data(self):
        with pytest.raises(PreconditionError):
            build_interval(grid([0, 1, 2], [1, 2, 3]), 0, InterpConfig(PPI, degree=2, floor=1.5))

    @pytest.mark.parametrize("i", [-1, 2, 0.5])
    def test_index_out_of_range(self, i):
        with pytest.raises(InvalidArgumentError):
            build_interval(grid([0, 1, 2], [1, 1, 1]), i, InterpConfig(PPI, degree=2))

    def test_element_confined(self):
        data = GridFunction.sample(element_mesh(0, 1, 4, 2, "uniform"), lambda x: 1 + x * x)
        for i in range(data.mesh.n - 1):
            s = build_interval(data, i, InterpConfig(PPI, degree=8, element_confined=True))
            lo, hi = data.mesh.element_range(data.mesh.element_of_interval(i))
            assert lo <= s.lo and s.hi <= hi


class TestBuild:
    def test_linear_config(self):
        pi = build(sampled("f6"), InterpConfig(PPI, degree=1))
        assert np.all(pi.degrees == 1)
        assert pi.avg_degree == 1

    def test_f6_ppi_full_degree(self):
        assert build(sampled("f6"), InterpConfig(PPI, degree=4)).avg_degree == 4

    def test_stencil_exhausted(self):
        pi = build(grid([0, 1], [2, 3]), InterpConfig(PPI, degree=8))
        assert pi.avg_degree == 1

    @pytest.mark.xfail(strict=True, reason="the certified range check accepts smooth extensions "
                                           "that the ratio-based DBI conditions reject")
    def test_f6_dbi_ratio_condition_degree(self):
        assert build(sampled("f6"), InterpConfig(DBI, degree=4)).avg_degree == pytest.approx(1.13, abs=0.05)

    def test_f6_dbi_degree_bounds(self):
        avg = build(sampled("f6"), InterpConfig(DBI, degree=4)).avg_degree
        assert 1 <= avg <= 4

    @pytest.mark.parametrize("workers", [2, 4, 8])
    def test_parallel_equals_serial(self, workers):
        data = sampled("f3", 65)
        cfg = InterpConfig(PPI, degree=8)
        serial = build(data, cfg)
        par = build(data, cfg, workers=workers)
        np.testing.assert_array_equal(serial.degrees, par.degrees)
        s = np.linspace(-1, 1, 1001)
        assert serial(s).tobytes() == par(s).tobytes()


class TestEvaluate:
    def test_nodal_values_exact(self):
        data = sampled("f1")
        pi = build(data, InterpConfig(PPI, degree=8))
        np.testing.assert_array_equal(pi(data.mesh.nodes), data.values)

    def test_out_of_domain(self):
        pi = build(sampled("f6"), InterpConfig(PPI, degree=4))
        with pytest.raises(Exception, match="3.5"):
            pi(np.array([1.0, 3.5]))

    def test_clamp_policy(self):
        pi = build(grid([0, 1, 2], [0, 1, 2]), InterpConfig(PPI, degree=2))
        assert pi(3.0, ExtrapolationPolicy.CLAMP) == pytest.approx(3.0)

    def test_scalar(self):
        pi = build(grid([0, 1, 2], [0, 1, 4]), InterpConfig(PPI, degree=2))
        assert isinstance(pi(0.5), float)
        assert pi(0.5) == pytest.approx(0.25)

    @pytest.mark.parametrize("fid", ["f1", "f2", "f3", "f4", "f5", "f6"])
    @pytest.mark.parametrize("d", [2, 4, 8, 16])
    def test_ppi_positive(self, fid, d):
        data = sampled(fid, 17)
        pi = build(data, InterpConfig(PPI, degree=d))
        s = np.linspace(*TestFunction(fid).domain, 10000)
        assert pi(s).min() >= -1e-12 * np.abs(data.values).max()

    @pytest.mark.parametrize("fid", ["f1", "f2", "f3", "f4", "f5", "f6"])
    def test_dbi_bounded(self, fid):
        data = sampled(fid, 33)
        pi = build(data, InterpConfig(DBI, degree=8))
        s = np.linspace(*TestFunction(fid).domain, 10000)
        v = pi(s)
        i = pi.locate(s)
        lo = np.minimum(data.values[i], data.values[i + 1])
        hi = np.maximum(data.values[i], data.values[i + 1])
        tol = 1e-10 * np.abs(data.values).max()
        assert np.all(v >= lo - tol) and np.all(v <= hi + tol)


positive_data = st.integers(0, 2**31 - 1).map(np.random.default_rng)


class TestProperties:
    def test_nesting(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            n = int(rng.integers(3, 20))
            data = grid(np.sort(rng.uniform(0, 1, n)) + np.arange(n), rng.exponential(size=n) ** 2)
            d = int(rng.integers(2, 10))
            ppi = build(data, InterpConfig(PPI, degree=d)).degrees
            dbi = build(data, InterpConfig(DBI, degree=d)).degrees
            assert np.all(ppi >= dbi)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 6), positive_data)
    def test_polynomial_exactness(self, k, rng):
        d = k + int(rng.integers(0, 4))
        d = max(d, 1)
        roots = rng.uniform(-3, -1.5, k)
        q = lambda x: np.prod(x[..., None] - roots, axis=-1) + 0.5
        x = np.linspace(0, 1, 21)
        data = grid(x, q(x))
        pi = build(data, InterpConfig(PPI, degree=d))
        s = np.linspace(0, 1, 2001)
        ref = q(s)
        np.testing.assert_allclose(pi(s), ref, rtol=1e-9, atol=1e-9 * np.abs(ref).max())

    @settings(max_examples=50, deadline=None)
    @given(positive_data, st.sampled_from([DBI, PPI]), st.integers(1, 12))
    def test_continuity_and_committed_bounds(self, rng, method, d):
        n = int(rng.integers(2, 25))
        x = np.cumsum(rng.uniform(0.1, 1, n))
        u = rng.exponential(size=n)
        data = grid(x, u)
        pi = build(data, InterpConfig(method, degree=d))
        scale = np.abs(u).max()
        for piece in pi.pieces:
            i = piece.interval
            assert piece.lo <= i < i + 1 <= piece.hi
            # every interval polynomial interpolates both endpoints
            np.testing.assert_allclose(piece.poly(x[i:i + 2]), u[i:i + 2], atol=1e-10 * scale)
            b = to_bernstein(piece.poly, (x[i], x[i + 1])).coefficients
            tol = 1e-12 * (1 + np.abs(b).max())
            assert certified_min(b + tol).nonnegative
            if method is DBI:
                assert certified_min(max(u[i], u[i + 1]) - b + tol).nonnegative
