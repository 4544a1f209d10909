import numpy as np
import pytest
from pydantic import ValidationError

from dslab.core.exceptions import ConfigurationError, SingularEvaluationError, UsageError
from dslab.enums.types import InitialDataKind
from dslab.schemas.params import InitialDataSpec, LumpParams, OzawaParams
from dslab.services.diagnostics import l2_norm, linf_norm
from dslab.services.initial_data import (
    InitialDataRegistry,
    build_initial_data,
    lump_profile,
    ozawa_profile,
    pseudoconformal_map,
    sample_gaussian,
    sample_lump,
    sample_ozawa,
)
from dslab.services.spectral import make_grid


@pytest.fixture(scope="module")
def wide_grid():
    return make_grid(50.0, 2048)


@pytest.fixture
def points():
    rng = np.random.default_rng(11)
    return rng.uniform(-5, 5, 100), rng.uniform(-5, 5, 100)


class TestParams:
    def test_complex_coercion(self):
        assert LumpParams(c=[1, 2]).c == 1 + 2j
        assert LumpParams(c="0.5+1j").c == 0.5 + 1j
        assert LumpParams(z0=3).z0 == 3 + 0j

    def test_lump_needs_nonzero_c(self):
        with pytest.raises(ValidationError):
            LumpParams(c=0)

    def test_ozawa_sign_condition(self):
        assert OzawaParams(a=1, b=-4).t_star == pytest.approx(0.25)
        with pytest.raises(ValidationError):
            OzawaParams(a=1, b=4)

    def test_sum_needs_components(self):
        with pytest.raises(ValidationError):
            InitialDataSpec(kind="sum")

    def test_default_component_params(self):
        spec = InitialDataSpec(kind="lump")
        assert spec.lump == LumpParams()
        assert spec.prefactor == 1


class TestLump:
    def test_reference_formula(self, points):
        x, y = points
        p = LumpParams(xi=0.0, eta=-1.0, z0=0, c=1)
        expected = 2 * np.exp(-2j * (y + 12)) / (np.abs(x + 1j * (y + 24)) ** 2 + 1)
        assert np.max(np.abs(lump_profile(x, y, -6.0, p) - expected)) <= 1e-14

    def test_peak_at_origin(self, small_grid):
        field = sample_lump(small_grid, LumpParams(), 3.0)
        assert linf_norm(field) == pytest.approx(2.0)
        assert complex(lump_profile(0.0, 0.0, 1.7, LumpParams())) == pytest.approx(2.0)

    def test_l2_norm(self, wide_grid):
        assert l2_norm(sample_lump(wide_grid, LumpParams(), 0.0)) == pytest.approx(2 * np.sqrt(np.pi), abs=1e-2)

    def test_translation(self):
        grid = make_grid(50.0, 256)
        p = LumpParams(xi=0.0, eta=-1.0)
        shift = 5
        t = shift * grid.m / 4.0
        moved = np.abs(sample_lump(grid, p, t).data)
        rolled = np.roll(np.abs(sample_lump(grid, p, 0.0).data), shift, axis=0)
        inner = slice(10, -10)
        assert np.max(np.abs(moved[inner] - rolled[inner])) <= 1e-12


class TestOzawa:
    def test_reference_formula(self, points):
        x, y = points
        expected = 2 * np.exp(-1j * (x**2 - y**2)) / (1 + x**2 + y**2)
        assert np.max(np.abs(ozawa_profile(x, y, 0.0, OzawaParams()) - expected)) <= 1e-14

    def test_peak(self, small_grid):
        for t in (0.0, 0.1, 0.2):
            assert linf_norm(sample_ozawa(small_grid, OzawaParams(), t)) == pytest.approx(2 / (1 - 4 * t))

    def test_singular_time(self, small_grid):
        with pytest.raises(SingularEvaluationError):
            sample_ozawa(small_grid, OzawaParams(a=1, b=-4), 0.25)

    def test_l2_independent_of_time(self, wide_grid):
        for t in (0.0, 0.2):
            assert l2_norm(sample_ozawa(wide_grid, OzawaParams(), t)) == pytest.approx(2 * np.sqrt(np.pi), abs=1e-2)


class TestGaussianAndSums:
    def test_gaussian(self):
        grid = make_grid(2.0, 1024)
        field = sample_gaussian(grid, 1.0)
        assert l2_norm(field) ** 2 == pytest.approx(np.pi / 2, abs=1e-8)
        assert linf_norm(field) == pytest.approx(1.0)
        assert np.allclose(sample_gaussian(grid, 0.1).data, 0.1 * field.data, rtol=0, atol=1e-16)

    def test_ozawa_plus_gaussian(self, small_grid):
        spec = InitialDataSpec(
            kind="sum",
            components=[
                {"kind": "ozawa", "ozawa": {"a": 1, "b": -4}},
                {"kind": "gaussian", "amplitude": 0.1},
            ],
        )
        field = build_initial_data(small_grid, spec)
        assert field.data[32, 32] == pytest.approx(2.1)

    def test_scaled_lump(self, small_grid):
        spec = InitialDataSpec(kind="lump", prefactor=1.1)
        assert build_initial_data(small_grid, spec).data[32, 32] == pytest.approx(2.2)

    def test_default_prefactor_is_identity(self, small_grid):
        spec = InitialDataSpec(kind="lump")
        assert np.array_equal(build_initial_data(small_grid, spec).data, sample_lump(small_grid, LumpParams(), 0.0).data)

    def test_bad_grid(self):
        with pytest.raises(UsageError):
            build_initial_data("not a grid", InitialDataSpec(kind="gaussian"))

    def test_registry(self):
        assert set(InitialDataRegistry.list_kinds()) >= {k.value for k in InitialDataKind}
        with pytest.raises(ConfigurationError):
            InitialDataRegistry.get_builder("soliton")


class TestPseudoconformal:
    def test_lump_maps_to_ozawa(self, points):
        x, y = points
        a, b, t = 1.0, -4.0, 0.1
        T = (a + b * t) / b
        value = lump_profile(x / T, y / T, 1.0 / T, LumpParams(c=b))
        mapped = pseudoconformal_map(value, x, y, T)
        expected = ozawa_profile(x, y, t, OzawaParams(a=a, b=b))
        assert np.max(np.abs(mapped - expected)) <= 1e-12

    def test_modulus_scaling(self, points):
        x, y = points
        value = lump_profile(x / 0.5, y / 0.5, 2.0, LumpParams())
        assert np.allclose(np.abs(pseudoconformal_map(value, x, y, 0.5)), np.abs(value) / 0.5)

    def test_diagonal_has_no_phase(self):
        assert pseudoconformal_map(1.0, 2.0, 2.0, 0.5) == pytest.approx(2.0)

    def test_zero_time(self):
        with pytest.raises(SingularEvaluationError):
            pseudoconformal_map(1.0, 0.0, 0.0, 0.0)
