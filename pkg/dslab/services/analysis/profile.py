"""
Comparison of |ψ| with a dynamically rescaled lump P(X, Y)/L, P = 2/(1 + X² + Y²).

L is taken from the peak (L = 2/‖ψ‖∞) and the centre from the refined location of
the maximum.
"""

from typing import Optional, Tuple

import numpy as np

from dslab.core.exceptions import NoPeakError
from dslab.enums.types import FieldSpace
from dslab.models.field import ComplexField2D, SpectralGrid
from dslab.schemas.results import ProfileComparison, RescaleFrame
from dslab.services.spectral.grid import fft2, ifft2
from dslab.services.spectral.multipliers import multipliers_for


def lump_shape(X, Y) -> np.ndarray:
    return 2.0 / (1.0 + np.asarray(X) ** 2 + np.asarray(Y) ** 2)


def _parabola(f_minus: float, f_zero: float, f_plus: float) -> Tuple[float, float]:
    """Vertex offset (in cells, clamped to ±0.5) and height gain of a 3-point parabola."""
    curvature = f_minus - 2.0 * f_zero + f_plus
    if curvature >= 0:
        return 0.0, 0.0
    offset = 0.5 * (f_minus - f_plus) / curvature
    offset = float(np.clip(offset, -0.5, 0.5))
    gain = -0.125 * (f_minus - f_plus) ** 2 / curvature
    return offset, gain


def locate_maximum(psi: ComplexField2D) -> Tuple[float, float, float, bool]:
    """
    返回 (x0, y0, peak_value, multi_peak)

    Grid argmax of |ψ| (lowest flat index on ties), refined per axis by a
    separable 3-point quadratic fit through the neighbours (periodic wrap).
    ``multi_peak`` is set when another sample outside the 3×3 neighbourhood
    attains the same maximum.
    """
    psi.require(FieldSpace.PHYSICAL)
    grid = psi.grid
    mod = np.abs(psi.data)
    top = float(mod.max())
    if top == 0 or top == float(mod.min()):
        raise NoPeakError("field is flat, no maximum to locate")

    i, j = np.unravel_index(int(np.argmax(mod)), mod.shape)
    N = grid.N

    ties = np.argwhere(mod == top)
    di = np.abs((ties[:, 0] - i + N // 2) % N - N // 2)
    dj = np.abs((ties[:, 1] - j + N // 2) % N - N // 2)
    multi_peak = bool(np.any((di > 1) | (dj > 1)))

    f0 = float(mod[i, j])
    ox, gx = _parabola(float(mod[i, (j - 1) % N]), f0, float(mod[i, (j + 1) % N]))
    oy, gy = _parabola(float(mod[(i - 1) % N, j]), f0, float(mod[(i + 1) % N, j]))

    x0 = float(grid.x_axis[j] + ox * grid.m)
    y0 = float(grid.y_axis[i] + oy * grid.m)
    return x0, y0, f0 + gx + gy, multi_peak


def frame_from_field(psi: ComplexField2D) -> RescaleFrame:
    x0, y0, peak, multi = locate_maximum(psi)
    return RescaleFrame(x0=x0, y0=y0, L=2.0 / peak, peak_value=peak, multi_peak=multi)


def rescaled_lump(grid: SpectralGrid, frame: RescaleFrame) -> np.ndarray:
    """P((x−x0)/L, (y−y0)/L)/L on the grid (real array)."""
    X, Y = grid.coords
    return lump_shape((X - frame.x0) / frame.L, (Y - frame.y0) / frame.L) / frame.L


def profile_residual(
    psi: ComplexField2D, frame: Optional[RescaleFrame] = None
) -> Tuple[np.ndarray, float]:
    """
    |ψ| − P/L and the ratio ‖residual‖∞ / ‖ψ‖∞
    """
    psi.require(FieldSpace.PHYSICAL)
    frame = frame or frame_from_field(psi)
    mod = np.abs(psi.data)
    residual = mod - rescaled_lump(psi.grid, frame)
    return residual, float(np.max(np.abs(residual)) / np.max(mod))


def stationary_residual(grid: SpectralGrid, frame: RescaleFrame) -> float:
    """
    The rescaled lump in the stationary operator □P + 2·V[P²]·P.

    Returned as sup|residual| / sup|□P|; only spectral truncation and
    periodization keep it from zero.
    """
    mult = multipliers_for(grid)
    P = rescaled_lump(grid, frame).astype(np.complex128)
    box = ifft2(-mult.linear_symbol * fft2(P))
    V = ifft2(mult.nonlocal_symbol * fft2(np.abs(P) ** 2)).real
    residual = box + 2.0 * V * P
    return float(np.max(np.abs(residual)) / np.max(np.abs(box)))


def compare_profile(psi: ComplexField2D, with_stationary: bool = False) -> ProfileComparison:
    frame = frame_from_field(psi)
    _, ratio = profile_residual(psi, frame)
    stationary = stationary_residual(psi.grid, frame) if with_stationary else None
    return ProfileComparison(frame=frame, ratio=ratio, stationary_ratio=stationary)
