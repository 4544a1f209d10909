"""
Split-step time integration of focusing DS II (and its ε-scaled form).

    i ε ψ_t + ε² (ψ_xx − ψ_yy) + 2 V ψ = 0,   V = F⁻¹[E · F|ψ|²]

Both sub-flows are integrated exactly: the linear one in Fourier space
(ψ̂ ← exp(−iεh(ξ₁²−ξ₂²)) ψ̂) and the nonlinear one in physical space
(ψ ← exp(2ihV/ε) ψ, |ψ| is constant along it). Strang steps are composed by
the triple jump to fourth order.
"""

import time
from typing import Callable, List, Optional, Sequence

import numpy as np

from dslab.core.exceptions import SolverOverflowError
from dslab.core.logger import get_logger
from dslab.enums.types import FieldSpace, SplitScheme, StopReason
from dslab.models.field import ComplexField2D, SpectralGrid
from dslab.schemas.params import GuardConfig, SchedulePhase, SolverParams
from dslab.schemas.results import DiagnosticsRecord
from dslab.services.diagnostics.conserved import make_record
from dslab.services.diagnostics.guard import resolution_guard
from dslab.services.spectral.grid import fft2, ifft2
from dslab.services.spectral.multipliers import multipliers_for

logger = get_logger("Solver")

YOSHIDA_W1 = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))
YOSHIDA_W0 = 1.0 - 2.0 * YOSHIDA_W1

# observer(step, t, field) -> optional StopReason to halt the run
Observer = Callable[[int, float, ComplexField2D], Optional[StopReason]]


class SplitStepSolver:
    """
    DS II 分裂步求解器 (数组层面的热循环)
    """

    def __init__(self, grid: SpectralGrid, params: Optional[SolverParams] = None):
        self.grid = grid
        self.params = params or SolverParams()
        self.mult = multipliers_for(grid)

    def linear(self, psi_hat: np.ndarray, h: float) -> np.ndarray:
        return np.exp(-1j * self.params.epsilon * h * self.mult.linear_symbol) * psi_hat

    def potential(self, psi: np.ndarray) -> np.ndarray:
        rho = np.abs(psi) ** 2
        return ifft2(self.mult.nonlocal_symbol * fft2(rho)).real

    def nonlinear(self, psi: np.ndarray, h: float) -> np.ndarray:
        V = self.potential(psi)
        return psi * np.exp(2j * h * V / self.params.epsilon)

    def strang(self, psi: np.ndarray, tau: float) -> np.ndarray:
        """S(τ) = L(τ/2) ∘ N(τ) ∘ L(τ/2)"""
        psi = ifft2(self.linear(fft2(psi), 0.5 * tau))
        psi = self.nonlinear(psi, tau)
        psi_hat = fft2(psi)
        if self.params.dealias:
            psi_hat = psi_hat * self.mult.dealias_mask
        return ifft2(self.linear(psi_hat, 0.5 * tau))

    def yoshida4(self, psi: np.ndarray, h: float) -> np.ndarray:
        psi = self.strang(psi, YOSHIDA_W1 * h)
        psi = self.strang(psi, YOSHIDA_W0 * h)
        return self.strang(psi, YOSHIDA_W1 * h)

    def step(self, psi: np.ndarray, h: float) -> np.ndarray:
        if self.params.scheme == SplitScheme.STRANG2:
            return self.strang(psi, h)
        return self.yoshida4(psi, h)


def linear_substep(psi_hat: ComplexField2D, h: float, params: Optional[SolverParams] = None) -> ComplexField2D:
    psi_hat.require(FieldSpace.SPECTRAL)
    solver = SplitStepSolver(psi_hat.grid, params)
    return psi_hat.with_data(solver.linear(psi_hat.data, h))


def nonlocal_potential(psi: ComplexField2D) -> np.ndarray:
    """V = F⁻¹[E·F(|ψ|²)], real with zero mean."""
    psi.require(FieldSpace.PHYSICAL)
    return SplitStepSolver(psi.grid).potential(psi.data)


def nonlinear_substep(psi: ComplexField2D, h: float, params: Optional[SolverParams] = None) -> ComplexField2D:
    psi.require(FieldSpace.PHYSICAL)
    solver = SplitStepSolver(psi.grid, params)
    return psi.with_data(solver.nonlinear(psi.data, h))


def strang_step(psi: ComplexField2D, h: float, params: Optional[SolverParams] = None) -> ComplexField2D:
    psi.require(FieldSpace.PHYSICAL)
    return psi.with_data(SplitStepSolver(psi.grid, params).strang(psi.data, h))


def yoshida4_step(psi: ComplexField2D, h: float, params: Optional[SolverParams] = None) -> ComplexField2D:
    psi.require(FieldSpace.PHYSICAL)
    return psi.with_data(SplitStepSolver(psi.grid, params).yoshida4(psi.data, h))


class EvolutionResult:
    """
    演化结果: 最后一个可信场、截断后的诊断序列和停止原因
    """

    def __init__(
        self,
        field: ComplexField2D,
        series: List[DiagnosticsRecord],
        stop_reason: StopReason,
        t: float,
        steps_taken: int,
        stop_step: Optional[int] = None,
        stop_time: Optional[float] = None,
        halt_field: Optional[ComplexField2D] = None,
        report_crossing: Optional[tuple] = None,
        message: str = "",
        elapsed_s: float = 0.0,
    ):
        self.field = field
        self.series = series
        self.stop_reason = stop_reason
        self.t = t
        self.steps_taken = steps_taken
        self.stop_step = stop_step
        self.stop_time = stop_time
        self.halt_field = halt_field
        self.report_crossing = report_crossing
        self.message = message
        self.elapsed_s = elapsed_s

    @property
    def halted(self) -> bool:
        return self.stop_reason != StopReason.COMPLETED


def evolve(
    psi0: ComplexField2D,
    schedule: Sequence[SchedulePhase],
    params: Optional[SolverParams] = None,
    observer: Optional[Observer] = None,
    guard: Optional[GuardConfig] = None,
    t0: float = 0.0,
    progress_every: int = 0,
) -> EvolutionResult:
    """
    按阶段推进 ψ0，记录诊断量，守卫触发时提前停止

    The observer sees every step (including step 0) once the energy guard has
    passed; it receives a view of the working array and must copy to keep it.
    Returning a StopReason from the observer halts the run before that step's
    record is kept.
    """
    psi0.require(FieldSpace.PHYSICAL)
    params = params or SolverParams()
    guard = guard or GuardConfig()
    solver = SplitStepSolver(psi0.grid, params)
    grid = psi0.grid

    psi = psi0.data.copy()
    t = t0
    step = 0
    started = time.perf_counter()

    first = make_record(0, t, psi0, params)
    e0 = first.energy
    series = [first]
    last_valid = ComplexField2D(grid, psi.copy())
    crossing = None

    def _finish(reason, stop_step=None, stop_time=None, halt_field=None, message=""):
        elapsed = time.perf_counter() - started
        if reason != StopReason.COMPLETED:
            logger.info(f"Run halted ({reason.value}): {message}")
        return EvolutionResult(
            field=last_valid,
            series=series,
            stop_reason=reason,
            t=series[-1].t,
            steps_taken=step,
            stop_step=stop_step,
            stop_time=stop_time,
            halt_field=halt_field,
            report_crossing=crossing,
            message=message,
            elapsed_s=elapsed,
        )

    if observer is not None:
        reason = observer(0, t, ComplexField2D(grid, psi))
        if reason is not None:
            return _finish(reason, 0, t, message="observer stop at step 0")

    total_steps = sum(p.n_steps for p in schedule)
    for index, phase in enumerate(schedule):
        phase_start = t
        logger.info(
            f"Phase {index + 1}/{len(schedule)}: {phase.n_steps} steps of dt={phase.dt:.3e} from t={t:.6f}"
        )
        for i in range(phase.n_steps):
            new = solver.step(psi, phase.dt)
            if not np.isfinite(new).all():
                raise SolverOverflowError(
                    f"Non-finite values at step {step + 1}",
                    last_field=ComplexField2D(grid, psi),
                    step=step,
                    t=t,
                    series=series,
                )
            psi = new
            step += 1
            t = phase_start + (i + 1) * phase.dt
            current = ComplexField2D(grid, psi)

            record = None
            if (i + 1) % phase.record_every == 0 or i + 1 == phase.n_steps:
                record = make_record(step, t, current, params, e0)
                decision = resolution_guard(record, guard)
                if decision:
                    return _finish(decision.reason, step, t, current.copy(), decision.message)

            if observer is not None:
                reason = observer(step, t, current)
                if reason is not None:
                    return _finish(reason, step, t, current.copy(), f"observer stop at step {step}")

            if record is not None:
                if crossing is None and abs(record.delta_e) > guard.report_threshold:
                    crossing = (step, t)
                    logger.info(f"|ΔE| crossed {guard.report_threshold:.0e} at step {step}, t={t:.6f}")
                series.append(record)
                last_valid = current.copy()

            if progress_every and step % progress_every == 0:
                logger.debug(f"step {step}/{total_steps} t={t:.6f} linf={series[-1].linf:.6e}")

    return _finish(StopReason.COMPLETED)
