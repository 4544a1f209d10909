"""
Closed-form DS II solutions and the initial data built from them.

The lump travels with velocity (-4ξ, -4η) and decays like (x²+y²)⁻¹; the Ozawa
family is its pseudoconformal image and concentrates at t* = -a/b.
"""

import numpy as np

from dslab.core.exceptions import SingularEvaluationError, UsageError
from dslab.enums.types import FieldSpace
from dslab.models.field import SpectralGrid, ComplexField2D
from dslab.schemas.params import LumpParams, OzawaParams, InitialDataSpec
from dslab.services.initial_data.registry import InitialDataRegistry, register_initial_data


def lump_profile(x, y, t: float, p: LumpParams) -> np.ndarray:
    """Pointwise lump value at coordinates (x, y) and time t."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    phase = np.exp(-2j * (p.xi * x - p.eta * y + 2.0 * (p.xi**2 - p.eta**2) * t))
    z = (x + 4.0 * p.xi * t) + 1j * (y + 4.0 * p.eta * t) + p.z0
    return 2.0 * p.c * phase / (np.abs(z) ** 2 + abs(p.c) ** 2)


def ozawa_profile(x, y, t: float, p: OzawaParams) -> np.ndarray:
    """Pointwise Ozawa value; singular at t = t*."""
    s = p.a + p.b * t
    if s == 0:
        raise SingularEvaluationError(
            f"Ozawa solution is singular at t = t* = {p.t_star}", details={"t": t}
        )
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    X = x / s
    Y = y / s
    phase = np.exp(1j * p.b * (x**2 - y**2) / (4.0 * s))
    return phase * (2.0 / (1.0 + X**2 + Y**2)) / s


def gaussian_profile(x, y, amplitude: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return (amplitude * np.exp(-(x**2) - y**2)).astype(np.complex128)


def sample_lump(grid: SpectralGrid, p: LumpParams, t: float) -> ComplexField2D:
    X, Y = grid.coords
    return ComplexField2D(grid, lump_profile(X, Y, t, p), FieldSpace.PHYSICAL)


def sample_ozawa(grid: SpectralGrid, p: OzawaParams, t: float) -> ComplexField2D:
    X, Y = grid.coords
    return ComplexField2D(grid, ozawa_profile(X, Y, t, p), FieldSpace.PHYSICAL)


def sample_gaussian(grid: SpectralGrid, amplitude: float) -> ComplexField2D:
    X, Y = grid.coords
    return ComplexField2D(grid, gaussian_profile(X, Y, amplitude), FieldSpace.PHYSICAL)


def pseudoconformal_map(value, x, y, t: float):
    """
    伪共形变换: 给定 ψ(x/t, y/t, 1/t)，返回 exp(i(x²−y²)/(4t))·ψ(x/t, y/t, 1/t)/t
    """
    if t == 0:
        raise SingularEvaluationError("pseudoconformal map is singular at t = 0")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.exp(1j * (x**2 - y**2) / (4.0 * t)) * np.asarray(value) / t


@register_initial_data("lump")
def _build_lump(grid: SpectralGrid, spec: InitialDataSpec, t: float) -> np.ndarray:
    return sample_lump(grid, spec.lump, t).data


@register_initial_data("ozawa")
def _build_ozawa(grid: SpectralGrid, spec: InitialDataSpec, t: float) -> np.ndarray:
    return sample_ozawa(grid, spec.ozawa, t).data


@register_initial_data("gaussian")
def _build_gaussian(grid: SpectralGrid, spec: InitialDataSpec, t: float) -> np.ndarray:
    return sample_gaussian(grid, spec.amplitude).data


@register_initial_data("sum")
def _build_sum(grid: SpectralGrid, spec: InitialDataSpec, t: float) -> np.ndarray:
    total = np.zeros((grid.N, grid.N), dtype=np.complex128)
    for component in spec.components:
        total += _evaluate(grid, component, t)
    return total


def _evaluate(grid: SpectralGrid, spec: InitialDataSpec, t: float) -> np.ndarray:
    builder = InitialDataRegistry.get_builder(spec.kind.value)
    return spec.prefactor * builder(grid, spec, t)


def build_initial_data(grid: SpectralGrid, spec: InitialDataSpec, t: float = 0.0) -> ComplexField2D:
    """
    按规格构造初始场，例如 Ozawa(a=1,b=−4,t=0) + 0.1·Gaussian
    """
    if not isinstance(grid, SpectralGrid):
        raise UsageError(f"Expected a SpectralGrid, got {type(grid).__name__}")
    return ComplexField2D(grid, _evaluate(grid, spec, t), FieldSpace.PHYSICAL)
