from dslab.services.analysis.simplex import SimplexResult, nelder_mead
from dslab.services.analysis.blowup_fit import (
    DEFAULT_WINDOW,
    SENSITIVITY_WINDOWS,
    fit_blowup,
    series_arrays,
    window_sensitivity,
)
from dslab.services.analysis.singularity import (
    axis_slice,
    envelope,
    fit_fourier_asymptotics,
    singularity_reached,
    trace_field,
)
from dslab.services.analysis.profile import (
    compare_profile,
    frame_from_field,
    locate_maximum,
    lump_shape,
    profile_residual,
    rescaled_lump,
    stationary_residual,
)

__all__ = [
    "SimplexResult",
    "nelder_mead",
    "DEFAULT_WINDOW",
    "SENSITIVITY_WINDOWS",
    "fit_blowup",
    "series_arrays",
    "window_sensitivity",
    "axis_slice",
    "envelope",
    "fit_fourier_asymptotics",
    "singularity_reached",
    "trace_field",
    "compare_profile",
    "frame_from_field",
    "locate_maximum",
    "lump_shape",
    "profile_residual",
    "rescaled_lump",
    "stationary_residual",
]
