from dslab.services.spectral.grid import (
    make_grid,
    forward_transform,
    inverse_transform,
    derivative_x,
    derivative_y,
    dealias_mask,
    physical_l2,
    spectral_l2,
)

__all__ = [
    "make_grid",
    "forward_transform",
    "inverse_transform",
    "derivative_x",
    "derivative_y",
    "dealias_mask",
    "physical_l2",
    "spectral_l2",
]

from dslab.services.spectral.multipliers import SpectralMultipliers, multipliers_for

__all__ += ["SpectralMultipliers", "multipliers_for"]
