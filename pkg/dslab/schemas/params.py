from typing import Any, List, Optional

from pydantic import BaseModel, Field, computed_field, field_validator, model_validator

from dslab.enums.types import InitialDataKind, SplitScheme


def _coerce_complex(value: Any) -> Any:
    """
    复数参数可写成数字、"1+2j" 字符串或 [re, im] 列表
    """
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError("complex pair must be [re, im]")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    if isinstance(value, (int, float)):
        return complex(value)
    return value


class LumpParams(BaseModel):
    """
    Lump 参数 (ξ, η, z₀, c)
    """

    xi: float = Field(0.0, description="ξ, velocity component -4ξ along x")
    eta: float = Field(0.0, description="η, velocity component -4η along y")
    z0: complex = Field(0j, description="complex center offset")
    c: complex = Field(1 + 0j, description="nonzero complex amplitude parameter")

    @field_validator("z0", "c", mode="before")
    @classmethod
    def _complex(cls, v):
        return _coerce_complex(v)

    @field_validator("c")
    @classmethod
    def _nonzero(cls, v: complex) -> complex:
        if abs(v) == 0:
            raise ValueError("lump parameter c must be nonzero")
        return v


class OzawaParams(BaseModel):
    """
    Ozawa 爆破解参数，要求 a·b < 0
    """

    a: float = 1.0
    b: float = -4.0

    @model_validator(mode="after")
    def _sign(self):
        if not self.a * self.b < 0:
            raise ValueError(f"Ozawa parameters need a*b < 0, got a={self.a}, b={self.b}")
        return self

    @computed_field
    @property
    def t_star(self) -> float:
        return -self.a / self.b


class InitialDataSpec(BaseModel):
    """
    初始数据描述: 单个分量 (lump/ozawa/gaussian) 或若干分量之和
    """

    kind: InitialDataKind
    prefactor: complex = Field(1 + 0j, description="scalar multiplier, e.g. 1.1 for the perturbed lump")
    lump: Optional[LumpParams] = None
    ozawa: Optional[OzawaParams] = None
    amplitude: float = Field(1.0, description="Gaussian amplitude")
    components: List["InitialDataSpec"] = Field(default_factory=list)

    @field_validator("prefactor", mode="before")
    @classmethod
    def _complex(cls, v):
        if v is None:
            return 1 + 0j
        return _coerce_complex(v)

    @model_validator(mode="after")
    def _check_kind(self):
        if self.kind == InitialDataKind.SUM and not self.components:
            raise ValueError("sum initial data needs at least one component")
        if self.kind == InitialDataKind.LUMP and self.lump is None:
            self.lump = LumpParams()
        if self.kind == InitialDataKind.OZAWA and self.ozawa is None:
            self.ozawa = OzawaParams()
        return self


InitialDataSpec.model_rebuild()


class SolverParams(BaseModel):
    epsilon: float = Field(1.0, gt=0, description="semiclassical parameter ε; 1 gives plain DS II")
    scheme: SplitScheme = SplitScheme.YOSHIDA4
    dealias: bool = False


class SchedulePhase(BaseModel):
    """
    时间步进阶段: n_steps 步，步长 dt，每 record_every 步记录一次诊断量
    """

    n_steps: int = Field(..., ge=0)
    dt: float
    record_every: int = Field(1, ge=1)

    @field_validator("dt")
    @classmethod
    def _finite_nonzero(cls, v: float) -> float:
        if v == 0 or v != v:
            raise ValueError("dt must be nonzero and finite")
        return v


class GuardConfig(BaseModel):
    delta_e_threshold: float = Field(1e-3, gt=0)
    # first crossing of this level is reported but does not halt
    report_threshold: float = Field(1e-4, gt=0)
    action: str = "halt"


class SimplexConfig(BaseModel):
    """
    Nelder–Mead 参数
    """

    initial_guess: Optional[List[float]] = None
    # absolute per-coordinate steps of the starting simplex; None -> 5% rule
    initial_step: Optional[List[float]] = None
    reflection: float = Field(1.0, gt=0)
    expansion: float = Field(2.0, gt=1)
    contraction: float = Field(0.5, gt=0, lt=1)
    shrink: float = Field(0.5, gt=0, lt=1)
    xtol: float = Field(1e-10, gt=0)
    ftol: float = Field(1e-10, gt=0)
    max_iter: int = Field(10000, ge=1)

    @model_validator(mode="after")
    def _ranges(self):
        if self.expansion <= self.reflection:
            raise ValueError("expansion coefficient must exceed reflection coefficient")
        return self
