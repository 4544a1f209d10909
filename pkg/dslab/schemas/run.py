from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from dslab.enums.types import ExactSolution, SliceAxis
from dslab.schemas.params import GuardConfig, InitialDataSpec, SchedulePhase, SolverParams


class GridConfig(BaseModel):
    D: float = Field(..., gt=0, description="domain D·[-π,π]²")
    N: int = Field(..., ge=8, description="points per axis, power of two")


class PhaseConfig(BaseModel):
    """
    运行阶段: 给出 dt，或给出 t_end 由步数推出 dt
    """

    n_steps: int = Field(..., ge=0)
    dt: Optional[float] = None
    t_end: Optional[float] = None
    record_every: int = Field(1, ge=1)

    @model_validator(mode="after")
    def _one_of(self):
        if (self.dt is None) == (self.t_end is None):
            raise ValueError("a phase needs exactly one of dt or t_end")
        if self.t_end is not None and self.n_steps == 0:
            raise ValueError("a phase given by t_end needs n_steps > 0")
        return self


class AnalysisConfig(BaseModel):
    """
    运行结束后的分析设置
    """

    fit: bool = True
    fit_window: int = Field(1000, ge=10)
    sensitivity_windows: List[int] = Field(default_factory=lambda: [500, 1000, 1500])
    trace: bool = True
    trace_axis: SliceAxis = SliceAxis.XI1
    k_min: Optional[float] = None
    k_max: Optional[float] = None
    envelope_width: int = Field(8, ge=1)
    # second stopping criterion: trace every trace_every steps, halt once δ < m
    trace_singularity: bool = False
    trace_every: int = Field(10, ge=1)
    profile: bool = True
    stationary: bool = False


class RunConfig(BaseModel):
    """
    一次实验的完整配置
    """

    name: str = "experiment"
    description: str = ""
    grid: GridConfig
    solver: SolverParams = Field(default_factory=SolverParams)
    initial_data: InitialDataSpec
    t0: float = 0.0
    schedule: List[PhaseConfig] = Field(..., min_length=1)
    guard: GuardConfig = Field(default_factory=GuardConfig)
    snapshot_times: List[float] = Field(default_factory=list)
    snapshot_final: bool = True
    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)
    exact: Optional[ExactSolution] = None
    output_dir: Optional[str] = None
    progress_every: int = Field(0, ge=0)

    @field_validator("snapshot_times")
    @classmethod
    def _sorted(cls, v: List[float]) -> List[float]:
        return sorted(v)

    @model_validator(mode="after")
    def _snapshots_in_range(self):
        t_final = self.t_final()
        lo, hi = min(self.t0, t_final), max(self.t0, t_final)
        for ts in self.snapshot_times:
            if not lo <= ts <= hi:
                raise ValueError(f"snapshot time {ts} outside the simulated range [{lo}, {hi}]")
        return self

    def resolved_phases(self) -> List[SchedulePhase]:
        """Phases with every dt made explicit (t_end phases start where the previous one ended)."""
        phases = []
        t = self.t0
        for phase in self.schedule:
            if phase.t_end is not None:
                dt = (phase.t_end - t) / phase.n_steps
                if dt == 0:
                    raise ValueError(f"phase ending at t={phase.t_end} has zero length")
            else:
                dt = phase.dt
            phases.append(SchedulePhase(n_steps=phase.n_steps, dt=dt, record_every=phase.record_every))
            t += phase.n_steps * dt
        return phases

    def t_final(self) -> float:
        return self.t0 + sum(p.n_steps * p.dt for p in self.resolved_phases())

    def record_steps(self) -> List[int]:
        """Global step numbers at which diagnostics are recorded (step 0 included)."""
        steps = [0]
        offset = 0
        for p in self.resolved_phases():
            for i in range(p.n_steps):
                if (i + 1) % p.record_every == 0 or i + 1 == p.n_steps:
                    steps.append(offset + i + 1)
            offset += p.n_steps
        return steps

    def echo(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


class RunRequest(BaseModel):
    """
    HTTP 运行请求: 内置配置名或内联配置二选一
    """

    config_name: Optional[str] = Field(None, description="bundled config, e.g. lump_validation")
    config: Optional[RunConfig] = None
    overrides: Dict[str, Any] = Field(default_factory=dict, description="top-level field overrides")

    @model_validator(mode="after")
    def _one_of(self):
        if (self.config_name is None) == (self.config is None):
            raise ValueError("give exactly one of config_name or config")
        return self


class FitRequest(BaseModel):
    t: List[float]
    linf: List[float]
    window_size: int = Field(1000, ge=10)

    @model_validator(mode="after")
    def _lengths(self):
        if len(self.t) != len(self.linf):
            raise ValueError("t and linf must have the same length")
        return self
