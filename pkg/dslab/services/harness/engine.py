import os
import time
import uuid
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from dslab.core.config import settings
from dslab.core.exceptions import (
    AnalysisError,
    ConfigurationError,
    DataError,
    DSLabError,
    FitError,
    SolverOverflowError,
)
from dslab.core.logger import get_logger
from dslab.enums.types import ExactSolution, StopReason
from dslab.models.field import ComplexField2D, SpectralGrid
from dslab.schemas.results import DiagnosticsRecord, RunReport, SingularityFit, SnapshotAnalysis
from dslab.schemas.run import AnalysisConfig, RunConfig
from dslab.services.analysis import (
    compare_profile,
    fit_blowup,
    singularity_reached,
    trace_field,
    window_sensitivity,
)
from dslab.services.harness import storage
from dslab.services.initial_data import build_initial_data, sample_lump, sample_ozawa
from dslab.services.solver import evolve
from dslab.services.spectral import make_grid

logger = get_logger("ExperimentService")


def exact_sampler(config: RunConfig, solution: ExactSolution):
    """t -> exact field on the grid, for initial data that is a single exact solution."""
    spec = config.initial_data
    solution = ExactSolution(solution)
    if spec.kind.value != solution.value or spec.prefactor != 1:
        raise ConfigurationError(
            f"exact comparison with {solution.value} needs plain {solution.value} initial data",
            details={"kind": spec.kind.value, "prefactor": str(spec.prefactor)},
        )
    if solution == ExactSolution.LUMP:
        return lambda grid, t: sample_lump(grid, spec.lump, t)
    return lambda grid, t: sample_ozawa(grid, spec.ozawa, t)


def relative_error(numeric: np.ndarray, exact: np.ndarray) -> float:
    return float(np.max(np.abs(numeric - exact)) / np.max(np.abs(exact)))


class RunObserver:
    """
    演化观察者: 按时间抓取快照、与精确解比较、可选的奇点守卫
    """

    def __init__(self, config: RunConfig, grid: SpectralGrid, exact: Optional[ExactSolution] = None):
        self.grid = grid
        self.analysis: AnalysisConfig = config.analysis
        direction = 1.0 if config.t_final() >= config.t0 else -1.0
        self.direction = direction
        self.pending = sorted(config.snapshot_times, reverse=direction < 0)
        self.snapshots: List[Tuple[int, float, ComplexField2D]] = []

        self.sampler = exact_sampler(config, exact) if exact is not None else None
        self.record_steps = set(config.record_steps()) if exact is not None else set()
        self.exact_rows: List[Tuple[int, float, float]] = []
        self.errors: List[str] = []

        self.singularity: Optional[Tuple[int, float, SingularityFit]] = None

    def __call__(self, step: int, t: float, field: ComplexField2D) -> Optional[StopReason]:
        tol = 1e-12 * max(1.0, abs(t))
        taken = False
        while self.pending and (t - self.pending[0]) * self.direction >= -tol:
            self.pending.pop(0)
            if not taken:
                self.snapshots.append((step, t, field.copy()))
                taken = True

        if self.sampler is not None and step in self.record_steps:
            try:
                exact = self.sampler(self.grid, t)
            except DSLabError as e:
                logger.warning(f"Exact solution unavailable at step {step}: {e.message}")
                self.errors.append(f"exact: {e.message}")
            else:
                self.exact_rows.append((step, t, relative_error(field.data, exact.data)))

        if self.analysis.trace_singularity and step > 0 and step % self.analysis.trace_every == 0:
            try:
                fit = trace_field(
                    field,
                    self.analysis.trace_axis,
                    self.analysis.k_min,
                    self.analysis.k_max,
                    self.analysis.envelope_width,
                )
            except FitError:
                return None
            if not fit.flagged and singularity_reached(fit, self.grid):
                self.singularity = (step, t, fit)
                logger.info(f"delta={fit.delta:.4e} < m={self.grid.m:.4e} at step {step}, t={t:.6f}")
                return StopReason.SINGULARITY
        return None


class RunOutcome:
    def __init__(
        self,
        series: List[DiagnosticsRecord],
        field: ComplexField2D,
        stop_reason: StopReason,
        steps_taken: int,
        stop_step: Optional[int] = None,
        stop_time: Optional[float] = None,
        crossing: Optional[tuple] = None,
        elapsed_s: float = 0.0,
        errors: Optional[List[str]] = None,
        field_step: Optional[int] = None,
        field_time: Optional[float] = None,
    ):
        self.series = series
        self.field = field
        # step/time the returned field belongs to (last record unless the run overflowed)
        self.field_step = series[-1].step if field_step is None and series else field_step
        self.field_time = series[-1].t if field_time is None and series else field_time
        self.stop_reason = stop_reason
        self.steps_taken = steps_taken
        self.stop_step = stop_step
        self.stop_time = stop_time
        self.crossing = crossing
        self.elapsed_s = elapsed_s
        self.errors = errors or []

    @property
    def last_valid_step(self) -> int:
        return self.series[-1].step

    @property
    def last_valid_time(self) -> float:
        return self.series[-1].t


class ExperimentService:
    """
    实验服务: 构造初始数据、分阶段演化、守卫截断后做分析并落盘
    """

    def __init__(self, runs_dir: str = None):
        self.runs_dir = os.path.abspath(runs_dir or settings.paths.runs_dir)
        # 内存中的运行报告
        self.run_results: Dict[str, RunReport] = {}

    def _output_dir(self, config: RunConfig, run_id: str) -> str:
        path = config.output_dir or os.path.join(self.runs_dir, f"{config.name}-{run_id[:8]}")
        os.makedirs(path, exist_ok=True)
        return os.path.abspath(path)

    def _evolve(self, config: RunConfig, grid: SpectralGrid, observer: RunObserver) -> RunOutcome:
        phases = config.resolved_phases()
        psi0 = build_initial_data(grid, config.initial_data, t=config.t0)
        try:
            result = evolve(
                psi0,
                phases,
                config.solver,
                observer,
                config.guard,
                t0=config.t0,
                progress_every=config.progress_every,
            )
        except SolverOverflowError as e:
            logger.error(f"Solver overflow: {e.message}")
            series = e.series or []
            return RunOutcome(
                series=series,
                field=e.last_field,
                stop_reason=StopReason.OVERFLOW,
                steps_taken=e.step,
                stop_step=e.step + 1,
                stop_time=e.t,
                errors=[e.message],
                field_step=e.step,
                field_time=e.t,
            )
        return RunOutcome(
            series=result.series,
            field=result.field,
            stop_reason=result.stop_reason,
            steps_taken=result.steps_taken,
            stop_step=result.stop_step,
            stop_time=result.stop_time,
            crossing=result.report_crossing,
            elapsed_s=result.elapsed_s,
        )

    def analyse_snapshot(
        self, seq: int, step: int, t: float, field: ComplexField2D, path: Optional[str], cfg: AnalysisConfig
    ) -> SnapshotAnalysis:
        item = SnapshotAnalysis(seq=seq, step=step, t=t, path=path)
        if cfg.trace:
            try:
                item.singularity = trace_field(field, cfg.trace_axis, cfg.k_min, cfg.k_max, cfg.envelope_width)
                item.singularity_reached = singularity_reached(item.singularity, field.grid)
            except AnalysisError as e:
                item.errors.append(f"trace: {e.message}")
        if cfg.profile:
            try:
                item.profile = compare_profile(field, with_stationary=cfg.stationary)
            except AnalysisError as e:
                item.errors.append(f"profile: {e.message}")
        return item

    def run_experiment(self, config: RunConfig) -> RunReport:
        """
        运行一次完整实验并返回报告
        """
        started = time.perf_counter()
        run_id = str(uuid.uuid4())
        output_dir = self._output_dir(config, run_id)
        logger.info(f"Starting run {config.name} ({run_id}) -> {output_dir}")

        grid = make_grid(config.grid.D, config.grid.N)
        observer = RunObserver(config, grid, config.exact)
        outcome = self._evolve(config, grid, observer)

        report = RunReport(
            run_id=run_id,
            name=config.name,
            stop_reason=outcome.stop_reason,
            stop_step=outcome.stop_step,
            stop_time=outcome.stop_time,
            report_threshold_crossing=outcome.crossing,
            config=config.echo(),
            steps_taken=outcome.steps_taken,
            output_dir=output_dir,
            errors=list(outcome.errors) + observer.errors,
        )
        series = outcome.series
        if series:
            report.last_valid_step = outcome.last_valid_step
            report.last_valid_time = outcome.last_valid_time
            l2 = np.array([r.l2 for r in series])
            report.l2_drift = float(np.max(np.abs(l2 / l2[0] - 1.0))) if l2[0] > 0 else None
            report.max_abs_delta_e = float(np.max(np.abs([r.delta_e for r in series])))
        if outcome.steps_taken:
            report.mean_step_s = outcome.elapsed_s / outcome.steps_taken

        # nothing past the last valid record goes into analysis
        limit = report.last_valid_step if outcome.stop_reason != StopReason.COMPLETED else None
        captured = [s for s in observer.snapshots if limit is None or s[0] <= limit]
        if config.snapshot_final and series and outcome.field is not None:
            if not captured or captured[-1][0] != outcome.field_step:
                captured.append((outcome.field_step, outcome.field_time, outcome.field))

        exact_rows = [r for r in observer.exact_rows if limit is None or r[0] <= limit]
        if exact_rows:
            report.max_exact_error = max(r[2] for r in exact_rows)

        try:
            storage.write_series(os.path.join(output_dir, "series.csv"), series)
            if config.exact is not None:
                storage.write_exact_compare(os.path.join(output_dir, "exact_compare.csv"), exact_rows)
        except OSError as e:
            report.errors.append(f"io: {e}")

        for seq, (step, t, field) in enumerate(captured):
            path = os.path.join(output_dir, storage.snapshot_name(seq))
            try:
                storage.write_snapshot(path, field, t, config.solver.epsilon)
            except OSError as e:
                report.errors.append(f"io: {e}")
                path = None
            report.snapshots.append(self.analyse_snapshot(seq, step, t, field, path, config.analysis))

        if config.analysis.fit:
            try:
                report.fit = fit_blowup(series, config.analysis.fit_window)
                report.sensitivity = window_sensitivity(series, config.analysis.sensitivity_windows)
            except AnalysisError as e:
                report.fit_error = e.message
                logger.warning(f"Blow-up fit failed: {e.message}")

        report.wall_clock_s = time.perf_counter() - started
        try:
            storage.write_report(os.path.join(output_dir, "report.txt"), report)
            with open(os.path.join(output_dir, "report.json"), "w", encoding="utf-8") as f:
                f.write(report.model_dump_json(indent=2))
        except OSError as e:
            report.errors.append(f"io: {e}")

        self.run_results[run_id] = report
        logger.info(
            f"Run {config.name} finished: {report.stop_reason.value} at step {report.stop_step or report.steps_taken}, "
            f"wall clock {report.wall_clock_s:.1f}s"
        )
        return report

    def exact_compare(self, config: RunConfig, solution: ExactSolution) -> pd.DataFrame:
        """
        Δ(t) = ‖ψ_num − ψ_exact‖∞ / ‖ψ_exact‖∞ at every record point
        """
        solution = ExactSolution(solution)
        grid = make_grid(config.grid.D, config.grid.N)
        quiet = config.model_copy(
            update={"snapshot_times": [], "analysis": config.analysis.model_copy(update={"trace_singularity": False})}
        )
        observer = RunObserver(quiet, grid, solution)
        outcome = self._evolve(quiet, grid, observer)
        limit = outcome.last_valid_step if outcome.series else 0
        rows = [r for r in observer.exact_rows if r[0] <= limit]
        frame = pd.DataFrame(rows, columns=storage.EXACT_COLUMNS)

        if config.output_dir:
            os.makedirs(config.output_dir, exist_ok=True)
            storage.write_exact_compare(os.path.join(config.output_dir, "exact_compare.csv"), rows)
            storage.write_series(os.path.join(config.output_dir, "series.csv"), outcome.series)
        if len(frame):
            logger.info(f"Exact comparison with {solution.value}: max error {frame['rel_error'].max():.3e}")
        return frame

    def get_run_results(self) -> List[dict]:
        """
        所有运行的摘要
        """
        return [
            {
                "run_id": r.run_id,
                "name": r.name,
                "stop_reason": r.stop_reason.value,
                "t_star": r.fit.t_star if r.fit else None,
                "gamma": r.fit.gamma if r.fit else None,
            }
            for r in self.run_results.values()
        ]

    def get_run_result(self, run_id: str) -> RunReport:
        if run_id not in self.run_results:
            raise DataError(f"Run {run_id} not found")
        return self.run_results[run_id]


experiment_service = ExperimentService()
