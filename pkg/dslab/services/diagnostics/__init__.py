from dslab.services.diagnostics.conserved import (
    l2_norm,
    linf_norm,
    energy,
    mean_field,
    delta_e,
    make_record,
)
from dslab.services.diagnostics.guard import (
    GuardDecision,
    relative_energy_deviation,
    resolution_guard,
)

__all__ = [
    "l2_norm",
    "linf_norm",
    "energy",
    "mean_field",
    "delta_e",
    "make_record",
    "GuardDecision",
    "relative_energy_deviation",
    "resolution_guard",
]
