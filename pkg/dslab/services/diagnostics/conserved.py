"""
L², L∞ and energy of a physical field, all with rectangle-rule quadrature.
"""

from typing import Optional

import numpy as np

from dslab.enums.types import FieldSpace
from dslab.models.field import ComplexField2D
from dslab.schemas.params import SolverParams
from dslab.schemas.results import DiagnosticsRecord
from dslab.services.spectral.multipliers import multipliers_for
from dslab.services.spectral.grid import derivative_x, derivative_y, fft2, ifft2, physical_l2


def l2_norm(psi: ComplexField2D) -> float:
    return physical_l2(psi)


def linf_norm(psi: ComplexField2D) -> float:
    return float(np.max(np.abs(psi.data)))


def mean_field(psi: ComplexField2D) -> np.ndarray:
    """Φ from ΔΦ + 2∂xx|ψ|² = 0, zero mean on the periodic box."""
    psi.require(FieldSpace.PHYSICAL)
    mult = multipliers_for(psi.grid)
    rho = np.abs(psi.data) ** 2
    return ifft2(mult.poisson_symbol * fft2(rho)).real


def energy(psi: ComplexField2D, params: Optional[SolverParams] = None) -> float:
    """
    E = ∫ ε²(|∂xψ|² − |∂yψ|²) + (|ψ|² + Φ)|ψ|² dx dy

    Both gradient terms come from spectral derivatives; Φ is the zero-mean
    mean field.
    """
    psi.require(FieldSpace.PHYSICAL)
    params = params or SolverParams()
    grid = psi.grid

    gradient = np.sum(np.abs(derivative_x(psi).data) ** 2 - np.abs(derivative_y(psi).data) ** 2)
    rho = np.abs(psi.data) ** 2
    quartic = np.sum((rho + mean_field(psi)) * rho)

    return float((params.epsilon**2 * gradient + quartic) * grid.cell_area)


def delta_e(value: float, reference: float) -> float:
    """E/E0 − 1, or the absolute deviation when E0 = 0."""
    if reference == 0:
        return value - reference
    return value / reference - 1.0


def make_record(
    step: int,
    t: float,
    psi: ComplexField2D,
    params: SolverParams,
    reference_energy: Optional[float] = None,
) -> DiagnosticsRecord:
    e = energy(psi, params)
    ref = e if reference_energy is None else reference_energy
    return DiagnosticsRecord(
        step=step,
        t=t,
        linf=linf_norm(psi),
        l2=l2_norm(psi),
        energy=e,
        delta_e=delta_e(e, ref),
    )
