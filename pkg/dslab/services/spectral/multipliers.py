from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from dslab.models.field import SpectralGrid
from dslab.services.spectral.grid import dealias_mask


@dataclass(frozen=True, eq=False)
class SpectralMultipliers:
    """
    每个网格预先计算的谱乘子

    linear_symbol   ξ₁² − ξ₂²
    nonlocal_symbol E = (ξ₁² − ξ₂²)/(ξ₁² + ξ₂²), E(0,0) = 0
    poisson_symbol  −2ξ₁²/(ξ₁² + ξ₂²), 0 at the zero mode (mean field Φ)
    """

    grid: SpectralGrid
    linear_symbol: np.ndarray = field(repr=False)
    nonlocal_symbol: np.ndarray = field(repr=False)
    poisson_symbol: np.ndarray = field(repr=False)
    dealias_mask: Optional[np.ndarray] = field(default=None, repr=False)


_CACHE_LIMIT = 8
_cache: Dict[int, SpectralMultipliers] = {}


def multipliers_for(grid: SpectralGrid) -> SpectralMultipliers:
    """Build (once per grid object) the symbols used by the split flows and the energy."""
    cached = _cache.get(id(grid))
    if cached is not None and cached.grid is grid:
        return cached

    XI1, XI2 = grid.wavenumbers
    s1 = XI1**2
    s2 = XI2**2
    total = s1 + s2
    nonzero = total > 0

    linear = s1 - s2
    nonlocal_ = np.zeros_like(total)
    np.divide(linear, total, out=nonlocal_, where=nonzero)
    poisson = np.zeros_like(total)
    np.divide(-2.0 * s1, total, out=poisson, where=nonzero)

    mult = SpectralMultipliers(
        grid=grid,
        linear_symbol=linear,
        nonlocal_symbol=nonlocal_,
        poisson_symbol=poisson,
        dealias_mask=dealias_mask(grid),
    )
    if len(_cache) >= _CACHE_LIMIT:
        _cache.clear()
    _cache[id(grid)] = mult
    return mult
