from enum import Enum


class FieldSpace(str, Enum):
    PHYSICAL = "physical"  # 物理空间 ψ
    SPECTRAL = "spectral"  # 谱空间 ψ̂


class SplitScheme(str, Enum):
    STRANG2 = "strang2"  # 二阶 Strang 分裂
    YOSHIDA4 = "yoshida4"  # 四阶 Yoshida 三跳组合


class InitialDataKind(str, Enum):
    LUMP = "lump"
    OZAWA = "ozawa"
    GAUSSIAN = "gaussian"
    SUM = "sum"


class SliceAxis(str, Enum):
    XI1 = "xi1"
    XI2 = "xi2"


class ExactSolution(str, Enum):
    LUMP = "lump"
    OZAWA = "ozawa"


class StopReason(str, Enum):
    COMPLETED = "completed"  # 所有阶段跑完
    ENERGY_GUARD = "energy_guard"  # |ΔE| 超过阈值
    SINGULARITY = "singularity"  # δ < m
    OVERFLOW = "overflow"  # 出现非有限值
