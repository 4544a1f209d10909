from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from dslab.enums.types import StopReason


class DiagnosticsRecord(BaseModel):
    """
    单个记录点的守恒量
    """

    step: int
    t: float
    linf: float = Field(..., ge=0)
    l2: float = Field(..., ge=0)
    energy: float
    delta_e: float


class BlowupFit(BaseModel):
    """
    ln‖ψ‖∞ ≈ α + γ·ln(t* − t) 的拟合结果
    """

    alpha: float
    gamma: float
    t_star: float
    residual: float = Field(..., ge=0, description="RMS of the log-law residual over the window")
    window: Tuple[int, int]
    iterations: int = 0


class SingularityFit(BaseModel):
    """
    |f̂(k)| ≈ exp(C)·k^-(μ+1)·exp(-kδ) 的拟合结果
    """

    mu: float
    delta: float
    const_term: float
    k_range: Tuple[float, float]
    rms_residual: float
    n_points: int = 0
    flagged: bool = Field(False, description="negative δ: the fit broke down")


class RescaleFrame(BaseModel):
    x0: float
    y0: float
    L: float = Field(..., gt=0)
    peak_value: float = 0.0
    multi_peak: bool = False


class ProfileComparison(BaseModel):
    frame: RescaleFrame
    ratio: float
    stationary_ratio: Optional[float] = None


class SnapshotAnalysis(BaseModel):
    seq: int
    step: int
    t: float
    path: Optional[str] = None
    singularity: Optional[SingularityFit] = None
    singularity_reached: Optional[bool] = None
    profile: Optional[ProfileComparison] = None
    errors: List[str] = Field(default_factory=list)


class RunReport(BaseModel):
    """
    一次实验的完整报告
    """

    run_id: str
    name: str
    stop_reason: StopReason
    stop_step: Optional[int] = None
    stop_time: Optional[float] = None
    last_valid_step: int = 0
    last_valid_time: float = 0.0
    report_threshold_crossing: Optional[Tuple[int, float]] = None
    fit: Optional[BlowupFit] = None
    fit_error: Optional[str] = None
    sensitivity: Dict[int, BlowupFit] = Field(default_factory=dict)
    snapshots: List[SnapshotAnalysis] = Field(default_factory=list)
    max_exact_error: Optional[float] = None
    l2_drift: Optional[float] = None
    max_abs_delta_e: Optional[float] = None
    config: Dict[str, Any] = Field(default_factory=dict)
    wall_clock_s: float = 0.0
    mean_step_s: float = 0.0
    steps_taken: int = 0
    output_dir: Optional[str] = None
    errors: List[str] = Field(default_factory=list)
