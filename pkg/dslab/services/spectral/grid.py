"""
Periodic grid construction and the unitary FFT pair every other service uses.

The transform pair is ``scipy.fft.fft2`` / ``ifft2`` with ``norm="ortho"``, so
the sum of squared moduli is preserved and quadrature in both spaces uses the
same cell area.
"""

import numpy as np
from scipy import fft as sfft

from dslab.core.config import settings
from dslab.core.exceptions import ConfigurationError
from dslab.enums.types import FieldSpace
from dslab.models.field import SpectralGrid, ComplexField2D


def make_grid(D: float, N: int) -> SpectralGrid:
    """
    构造 N×N 周期网格，物理区域 D·[-π,π]²
    """
    if isinstance(N, bool) or int(N) != N:
        raise ConfigurationError(f"N must be an integer, got {N!r}")
    N = int(N)
    if N < 8 or N & (N - 1) != 0:
        raise ConfigurationError(
            f"N must be a power of two >= 8, got {N}", details={"N": N}
        )
    if not np.isfinite(D) or D <= 0:
        raise ConfigurationError(f"D must be positive, got {D}", details={"D": D})

    D = float(D)
    m = 2.0 * np.pi * D / N
    axis = -np.pi * D + np.arange(N) * m
    # integer lattice k ∈ [-N/2, N/2) in FFT order, ξ = k/D
    xi = sfft.fftfreq(N, 1.0 / N) / D

    for arr in (axis, xi):
        arr.setflags(write=False)
    return SpectralGrid(D=D, N=N, x_axis=axis, y_axis=axis, xi1_axis=xi, xi2_axis=xi)


def forward_transform(f: ComplexField2D) -> ComplexField2D:
    f.require(FieldSpace.PHYSICAL)
    data = sfft.fft2(f.data, norm="ortho", workers=settings.fft_workers())
    return ComplexField2D(f.grid, data, FieldSpace.SPECTRAL)


def inverse_transform(f: ComplexField2D) -> ComplexField2D:
    f.require(FieldSpace.SPECTRAL)
    data = sfft.ifft2(f.data, norm="ortho", workers=settings.fft_workers())
    return ComplexField2D(f.grid, data, FieldSpace.PHYSICAL)


def fft2(data: np.ndarray) -> np.ndarray:
    """Array-level forward transform for the hot loops of the solver."""
    return sfft.fft2(data, norm="ortho", workers=settings.fft_workers())


def ifft2(data: np.ndarray) -> np.ndarray:
    return sfft.ifft2(data, norm="ortho", workers=settings.fft_workers())


def derivative_x(f: ComplexField2D) -> ComplexField2D:
    """Spectral ∂x of a physical field."""
    XI1, _ = f.grid.wavenumbers
    spec = forward_transform(f)
    return inverse_transform(spec.with_data(1j * XI1 * spec.data))


def derivative_y(f: ComplexField2D) -> ComplexField2D:
    _, XI2 = f.grid.wavenumbers
    spec = forward_transform(f)
    return inverse_transform(spec.with_data(1j * XI2 * spec.data))


def dealias_mask(grid: SpectralGrid) -> np.ndarray:
    """2/3-rule mask: keep integer modes with |k| <= N/3 on both axes."""
    K1 = np.abs(grid.wavenumbers[0] * grid.D)
    K2 = np.abs(grid.wavenumbers[1] * grid.D)
    limit = grid.N / 3.0
    return (K1 <= limit) & (K2 <= limit)


def physical_l2(f: ComplexField2D) -> float:
    """Rectangle-rule L² norm in physical space."""
    f.require(FieldSpace.PHYSICAL)
    return float(np.sqrt(np.sum(np.abs(f.data) ** 2) * f.grid.cell_area))


def spectral_l2(f: ComplexField2D) -> float:
    """L² norm of a spectrum with the same cell-area weight (Parseval partner)."""
    f.require(FieldSpace.SPECTRAL)
    return float(np.sqrt(np.sum(np.abs(f.data) ** 2) * f.grid.cell_area))
