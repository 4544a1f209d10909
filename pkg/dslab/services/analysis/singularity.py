"""
Singularity tracing from the tail of the Fourier coefficients.

    |f̂(k)| ≈ exp(C) · k^-(μ+1) · exp(-kδ)

δ is the distance of the nearest complex singularity from the real axis, μ its
exponent. The fit is a plain linear least-squares problem in ln|f̂|.
"""

from typing import Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from dslab.core.exceptions import FitError
from dslab.core.logger import get_logger
from dslab.enums.types import FieldSpace, SliceAxis
from dslab.models.field import ComplexField2D, SpectralGrid
from dslab.schemas.results import SingularityFit
from dslab.services.spectral.grid import forward_transform

logger = get_logger("Singularity")

ENVELOPE_WIDTH = 8
WINDOW_FRACTION = (0.4, 0.8)
ROUNDOFF_FLOOR = 1e-13
MIN_POINTS = 10


def axis_slice(spectrum: ComplexField2D, axis: SliceAxis = SliceAxis.XI1) -> Tuple[np.ndarray, np.ndarray]:
    """
    正波数半轴上的 (k, |f̂|)，不含零模和 Nyquist 模
    """
    spectrum.require(FieldSpace.SPECTRAL)
    grid = spectrum.grid
    axis = SliceAxis(axis)
    if axis == SliceAxis.XI1:
        k_axis, values = grid.xi1_axis, spectrum.data[0, :]
    else:
        k_axis, values = grid.xi2_axis, spectrum.data[:, 0]
    positive = k_axis > 0
    return k_axis[positive].copy(), np.abs(values[positive])


def envelope(k: np.ndarray, modulus: np.ndarray, width: int = ENVELOPE_WIDTH) -> Tuple[np.ndarray, np.ndarray]:
    """
    Local maxima over sliding windows of ``width`` samples.

    Every window start contributes its argmax; repeated picks collapse. The
    result is made of actual samples (not interpolated), so data that follow
    the model exactly stay on it. ``width`` 1 returns the input unchanged.
    """
    if width <= 1:
        return k, modulus
    if len(k) <= width:
        idx = np.array([int(np.argmax(modulus))])
    else:
        windows = sliding_window_view(modulus, width)
        idx = np.unique(np.arange(len(windows)) + np.argmax(windows, axis=1))
    return k[idx], modulus[idx]


def fit_fourier_asymptotics(
    k: np.ndarray,
    modulus: np.ndarray,
    k_min: Optional[float] = None,
    k_max: Optional[float] = None,
    envelope_width: int = ENVELOPE_WIDTH,
    floor: float = ROUNDOFF_FLOOR,
) -> SingularityFit:
    """
    ln|f̂| = C − (μ+1)·ln k − δ·k 的线性最小二乘

    The default window is [0.4, 0.8] of the largest wavenumber in the slice.
    Points below ``floor`` times the slice maximum are dropped as round-off.
    """
    k = np.asarray(k, dtype=float)
    modulus = np.asarray(modulus, dtype=float)
    if k.shape != modulus.shape or k.ndim != 1:
        raise FitError("wavenumbers and moduli must be 1-D arrays of equal length")
    if len(k) == 0:
        raise FitError("empty slice")

    k_top = float(np.max(k))
    lo = WINDOW_FRACTION[0] * k_top if k_min is None else float(k_min)
    hi = WINDOW_FRACTION[1] * k_top if k_max is None else float(k_max)
    if not lo < hi:
        raise FitError(f"k_min must be below k_max, got [{lo}, {hi}]")

    scale = float(np.max(modulus))
    usable = (k >= lo) & (k <= hi) & (k > 0) & (modulus > floor * scale)
    if np.count_nonzero(usable) < MIN_POINTS:
        raise FitError(
            f"only {np.count_nonzero(usable)} usable points in [{lo:.4g}, {hi:.4g}], need {MIN_POINTS}",
            details={"k_range": [lo, hi]},
        )

    kk, mm = envelope(k[usable], modulus[usable], envelope_width)
    design = np.column_stack([np.ones_like(kk), np.log(kk), kk])
    coef, _, rank, _ = np.linalg.lstsq(design, np.log(mm), rcond=None)
    if rank < 3:
        raise FitError("rank-deficient design: widen the k range", details={"rank": int(rank)})

    const_term, slope_log, slope_lin = coef
    residual = np.log(mm) - design @ coef
    mu = -slope_log - 1.0
    delta = -slope_lin
    fit = SingularityFit(
        mu=float(mu),
        delta=float(delta),
        const_term=float(const_term),
        k_range=(lo, hi),
        rms_residual=float(np.sqrt(np.mean(residual**2))),
        n_points=len(kk),
        flagged=bool(delta < 0),
    )
    if fit.flagged:
        logger.warning(f"Negative delta={fit.delta:.4e}: fit broke down on [{lo:.4g}, {hi:.4g}]")
    return fit


def singularity_reached(fit: SingularityFit, grid: SpectralGrid) -> bool:
    """δ < m cannot be told apart from a real-axis singularity."""
    return fit.delta < grid.m


def trace_field(
    psi: ComplexField2D,
    axis: SliceAxis = SliceAxis.XI1,
    k_min: Optional[float] = None,
    k_max: Optional[float] = None,
    envelope_width: int = ENVELOPE_WIDTH,
) -> SingularityFit:
    spectrum = psi if psi.space == FieldSpace.SPECTRAL else forward_transform(psi)
    k, modulus = axis_slice(spectrum, axis)
    return fit_fourier_asymptotics(k, modulus, k_min, k_max, envelope_width)
