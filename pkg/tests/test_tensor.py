import numpy as np
import pytest

from ppinterp.adaptive import InterpConfig, Method
from ppinterp.convergence import l2_error_2d
from ppinterp.exceptions import InvalidArgumentError, PreconditionError
from ppinterp.functions import bind
from ppinterp.mesh import element_mesh, uniform_mesh
from ppinterp.tensor import GridFunction2D, interpolate_2d

f7 = bind("f7")


class TestGridFunction2D:
    def test_shape_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            GridFunction2D(uniform_mesh(0, 1, 3), uniform_mesh(0, 1, 4), np.zeros((4, 3)))

    def test_nonfinite(self):
        v = np.zeros((3, 3))
        v[1, 1] = np.inf
        with pytest.raises(InvalidArgumentError):
            GridFunction2D(uniform_mesh(0, 1, 3), uniform_mesh(0, 1, 3), v)


class TestInterpolate2D:
    def test_constant(self):
        m = uniform_mesh(0, 1, 5)
        g = GridFunction2D(m, m, np.ones((5, 5)))
        t = np.linspace(0, 1, 13)
        r = interpolate_2d(g, t, t, InterpConfig(Method.PPI, degree=4))
        np.testing.assert_allclose(r.values, 1.0, atol=1e-15)

    @pytest.mark.parametrize("d", [1, 2, 4])
    def test_bilinear_exact(self, d):
        mx, my = uniform_mesh(0, 1, 9), uniform_mesh(0, 1, 7)
        g = GridFunction2D.sample(mx, my, lambda x, y: x * y)
        tx, ty = np.linspace(0, 1, 31), np.linspace(0, 1, 23)
        r = interpolate_2d(g, tx, ty, InterpConfig(Method.PPI, degree=d))
        np.testing.assert_allclose(r.values, tx[:, None] * ty[None, :], atol=1e-10)

    def test_shape_nonsquare(self):
        g = GridFunction2D.sample(uniform_mesh(0, 1, 5), uniform_mesh(0, 2, 9), lambda x, y: x + y)
        r = interpolate_2d(g, np.linspace(0, 1, 3), np.linspace(0, 2, 4), InterpConfig(Method.LINEAR))
        assert r.values.shape == (3, 4)
        np.testing.assert_allclose(r.values, np.linspace(0, 1, 3)[:, None] + np.linspace(0, 2, 4), atol=1e-14)

    def test_f7_linear(self):
        m = uniform_mesh(-1, 1, 17)
        s = np.linspace(-1, 1, 1001)
        r = interpolate_2d(GridFunction2D.sample(m, m, f7), s, s, InterpConfig(Method.LINEAR))
        assert l2_error_2d(f7, r.values, s, s) == pytest.approx(1.60e-2, rel=0.02)
        assert r.avg_degree == 1

    @pytest.mark.parametrize("method", [Method.STD, Method.LINEAR, Method.SPLINE])
    def test_axis_order_linear_operators(self, method):
        # operators linear in the data commute across axes
        m = element_mesh(-1, 1, 4, 4, "lgl")
        g = GridFunction2D.sample(m, m, f7)
        s = np.linspace(-1, 1, 201)
        a = interpolate_2d(g, s, s, InterpConfig(method), order="xy").values
        b = interpolate_2d(g, s, s, InterpConfig(method), order="yx").values
        assert np.abs(a - b).max() <= 1e-10

    def test_ppi_positive_both_stages(self):
        f = bind("f10")
        m = uniform_mesh(-0.2, 0.2, 17)
        s = np.linspace(-0.2, 0.2, 301)
        g = GridFunction2D.sample(m, m, f)
        for order in ("xy", "yx"):
            r = interpolate_2d(g, s, s, InterpConfig(Method.PPI, degree=8), order=order)
            assert r.values.min() >= -1e-12 * np.abs(g.values).max()
            assert 1 <= r.avg_degree <= 8

    def test_workers_identical(self):
        m = uniform_mesh(-1, 1, 17)
        g = GridFunction2D.sample(m, m, f7)
        s = np.linspace(-1, 1, 101)
        cfg = InterpConfig(Method.PPI, degree=4)
        a = interpolate_2d(g, s, s, cfg)
        b = interpolate_2d(g, s, s, cfg, workers=4)
        assert a.values.tobytes() == b.values.tobytes() and a.avg_degree == b.avg_degree

    def test_bad_order(self):
        m = uniform_mesh(0, 1, 3)
        with pytest.raises(InvalidArgumentError):
            interpolate_2d(GridFunction2D(m, m, np.ones((3, 3))), [0.5], [0.5], InterpConfig(), order="zz")

    def test_ppi_negative_input(self):
        m = uniform_mesh(0, 1, 3)
        v = np.ones((3, 3))
        v[0, 0] = -1
        with pytest.raises(PreconditionError):
            interpolate_2d(GridFunction2D(m, m, v), [0.5], [0.5], InterpConfig(Method.PPI, degree=2))
