"""
Blow-up fit: ln‖ψ‖∞ ≈ α + γ·ln(t* − t) over the tail of the recorded series.

The simplex works on a normalized time τ = (t − t_last)/span, span = t_last − t_first,
with unknowns (a, γ, s) where s = (t* − t_last)/span. Then α = a − γ·ln(span). This
keeps the search well scaled and makes the fit equivariant under time shifts and
amplitude scaling.
"""

from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from dslab.core.exceptions import FitError
from dslab.core.logger import get_logger
from dslab.schemas.params import SimplexConfig
from dslab.schemas.results import BlowupFit, DiagnosticsRecord
from dslab.services.analysis.simplex import nelder_mead

logger = get_logger("BlowupFit")

DEFAULT_WINDOW = 1000
SENSITIVITY_WINDOWS = (500, 1000, 1500)
MIN_WINDOW = 10
MAX_RESTARTS = 5

SeriesLike = Union[Sequence[DiagnosticsRecord], Sequence[Tuple[float, float]]]


def series_arrays(series: SeriesLike) -> Tuple[np.ndarray, np.ndarray]:
    """(t, linf) arrays from diagnostics records or (t, linf) pairs."""
    if len(series) == 0:
        return np.empty(0), np.empty(0)
    if isinstance(series[0], DiagnosticsRecord):
        t = np.array([r.t for r in series], dtype=float)
        linf = np.array([r.linf for r in series], dtype=float)
    else:
        pairs = np.asarray(series, dtype=float)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise FitError("series must be (t, linf) pairs")
        t, linf = pairs[:, 0].copy(), pairs[:, 1].copy()
    return t, linf


def _window(t: np.ndarray, linf: np.ndarray, window_size: int) -> Tuple[int, int]:
    if window_size < MIN_WINDOW:
        raise FitError(f"window_size must be >= {MIN_WINDOW}, got {window_size}")
    n = len(t)
    if n < MIN_WINDOW:
        raise FitError(f"series has {n} points, need at least {MIN_WINDOW}")
    first = max(0, n - window_size)
    return first, n - 1


def fit_blowup(
    series: SeriesLike,
    window_size: int = DEFAULT_WINDOW,
    config: Optional[SimplexConfig] = None,
) -> BlowupFit:
    """
    拟合 α, γ, t*

    The window is the last ``window_size`` points (or all of them when the series
    is shorter). ``config.initial_guess`` may override (α₀, γ₀, t*₀).
    """
    t_all, linf_all = series_arrays(series)
    first, last = _window(t_all, linf_all, window_size)
    t = t_all[first : last + 1]
    linf = linf_all[first : last + 1]

    if not np.all(np.isfinite(linf)) or np.any(linf <= 0):
        raise FitError("linf values must be finite and positive")
    if np.any(np.diff(t) <= 0):
        raise FitError("times must be strictly increasing")
    y = np.log(linf)
    if np.ptp(y) == 0:
        raise FitError("degenerate window: linf is constant", details={"window": [first, last]})

    t_last = t[-1]
    span = t_last - t[0]
    tau = (t - t_last) / span

    def objective(p: np.ndarray) -> float:
        a, g, s = p
        if s <= 0:
            return np.inf
        r = y - a - g * np.log(s - tau)
        return float(np.dot(r, r))

    base = config or SimplexConfig()
    if base.initial_guess is not None:
        alpha0, gamma0, t_star0 = base.initial_guess
        if t_star0 <= t_last:
            raise FitError("initial t* guess must lie after the last fitted time")
        s0 = (t_star0 - t_last) / span
        a0 = alpha0 + gamma0 * np.log(span)
    else:
        s0 = 2.0 * (t[-1] - t[-2]) / span
        gamma0 = -1.0
        a0 = y[-1] - gamma0 * np.log(s0)
    steps = base.initial_step or [0.5, 0.25, 4.0 * s0]
    cfg = base.model_copy(update={"initial_guess": [a0, gamma0, s0], "initial_step": list(steps)})

    result = nelder_mead(objective, cfg)
    iterations = result.iterations
    # restart from the best vertex until the minimum stops moving
    for _ in range(MAX_RESTARTS):
        again = nelder_mead(objective, cfg, x0=result.x)
        iterations += again.iterations
        improved = result.fun - again.fun
        if again.fun <= result.fun:
            result = again
        if improved <= cfg.ftol:
            break

    a, g, s = result.x
    if not np.isfinite(result.fun) or s <= 0:
        raise FitError("blow-up fit did not find an admissible t*")

    fit = BlowupFit(
        alpha=float(a - g * np.log(span)),
        gamma=float(g),
        t_star=float(t_last + s * span),
        residual=float(np.sqrt(result.fun / len(t))),
        window=(first, last),
        iterations=iterations,
    )
    logger.info(
        f"Blow-up fit over [{first}, {last}]: t*={fit.t_star:.6f} gamma={fit.gamma:.4f} "
        f"alpha={fit.alpha:.4f} residual={fit.residual:.2e}"
    )
    return fit


def window_sensitivity(
    series: SeriesLike,
    windows: Iterable[int] = SENSITIVITY_WINDOWS,
    config: Optional[SimplexConfig] = None,
) -> Dict[int, BlowupFit]:
    """
    多窗口拟合，窗口长度超过序列长度时跳过
    """
    n = len(series)
    fits: Dict[int, BlowupFit] = {}
    for w in windows:
        if w > n:
            logger.info(f"Skipping window {w}: only {n} records")
            continue
        try:
            fits[w] = fit_blowup(series, w, config)
        except FitError as e:
            logger.warning(f"Window {w} fit failed: {e.message}")
    return fits
