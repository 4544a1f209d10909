from dslab.services.initial_data.registry import InitialDataRegistry, register_initial_data

# 导入分量构造文件以触发注册
from dslab.services.initial_data.exact import (
    build_initial_data,
    lump_profile,
    ozawa_profile,
    pseudoconformal_map,
    sample_gaussian,
    sample_lump,
    sample_ozawa,
)

__all__ = [
    "InitialDataRegistry",
    "register_initial_data",
    "build_initial_data",
    "lump_profile",
    "ozawa_profile",
    "pseudoconformal_map",
    "sample_gaussian",
    "sample_lump",
    "sample_ozawa",
]
