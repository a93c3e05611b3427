import numpy as np
import pytest

from ppinterp.exceptions import InvalidArgumentError
from ppinterp.mesh import GridFunction
from ppinterp.remap import REMAP_METHODS, demo_meshes, demo_profile, remap_cycle


@pytest.fixture(scope="module")
def setup():
    dyn, phys = demo_meshes()
    return GridFunction.sample(dyn, demo_profile), phys


@pytest.fixture(scope="module")
def traces(setup):
    initial, phys = setup
    return {m: remap_cycle(initial, phys, m, cycles=50) for m in ("ppi", "std", "clip", "linear")}


class TestDemo:
    def test_profile_positive(self):
        x = np.linspace(0, 1, 10001)
        assert demo_profile(x).min() > 0

    def test_meshes(self):
        dyn, phys = demo_meshes()
        assert dyn.node_family.value == "lgl" and phys.node_family.value == "uniform"
        assert dyn.n == phys.n == 33


class TestRemap:
    def test_ppi_nonnegative(self, traces):
        assert all(r.min_value >= -1e-12 for r in traces["ppi"].rows)

    def test_std_goes_negative(self, traces):
        assert min(r.min_value for r in traces["std"].rows) < 0

    def test_clip_min_zero(self, setup):
        initial, phys = setup
        (row,) = remap_cycle(initial, phys, "clip", cycles=1).rows
        assert row.min_value == 0.0

    def test_clip_adds_mass(self, traces):
        for r in traces["clip"].rows:
            assert r.total >= r.total_unclipped

    def test_linear_diffusive(self, traces):
        rows = traces["linear"].rows
        assert all(r.min_value >= 0 for r in rows)
        totals = [r.total for r in rows]
        assert all(b <= a for a, b in zip(totals, totals[1:]))

    def test_trace_shape(self, traces):
        rows = traces["ppi"].rows
        assert [r.cycle for r in rows] == list(range(1, 51))
        assert all(np.isfinite(r.total) for r in rows)

    def test_csv(self, setup):
        initial, phys = setup
        lines = remap_cycle(initial, phys, "pchip", cycles=2).to_csv().splitlines()
        assert lines[0] == "cycle,method,min,total,peak"
        assert len(lines) == 3 and lines[2].startswith("2,pchip,")

    @pytest.mark.parametrize("method", REMAP_METHODS)
    def test_all_methods_run(self, setup, method):
        initial, phys = setup
        assert len(remap_cycle(initial, phys, method, cycles=2).rows) == 2

    def test_bad_cycles(self, setup):
        with pytest.raises(InvalidArgumentError):
            remap_cycle(*setup, "ppi", cycles=0)

    def test_bad_method(self, setup):
        with pytest.raises(InvalidArgumentError):
            remap_cycle(*setup, "cubic")

    def test_negative_initial(self, setup):
        initial, phys = setup
        with pytest.raises(InvalidArgumentError):
            remap_cycle(GridFunction(initial.mesh, initial.values - 1), phys)
