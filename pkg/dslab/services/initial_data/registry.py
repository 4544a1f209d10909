from typing import Callable, Dict

import numpy as np

from dslab.core.logger import get_logger
from dslab.core.exceptions import ConfigurationError

logger = get_logger("InitialDataRegistry")

# builder(grid, spec, t) -> N×N complex array (prefactor not yet applied)
ComponentBuilder = Callable[..., np.ndarray]


class InitialDataRegistry:
    """
    初始数据分量注册表
    负责管理所有可用的分量构造函数
    """

    _builders: Dict[str, ComponentBuilder] = {}

    @classmethod
    def register(cls, kind: str, builder: ComponentBuilder):
        """注册一个分量构造函数"""
        if kind in cls._builders:
            logger.warning(f"Initial data kind {kind} is already registered. Overwriting.")
        cls._builders[kind] = builder
        logger.debug(f"Registered initial data kind: {kind}")

    @classmethod
    def get_builder(cls, kind: str) -> ComponentBuilder:
        """获取构造函数"""
        if kind not in cls._builders:
            raise ConfigurationError(
                f"Initial data kind {kind} not found.",
                details={"available": cls.list_kinds()},
            )
        return cls._builders[kind]

    @classmethod
    def list_kinds(cls):
        """列出所有已注册的分量类型"""
        return list(cls._builders.keys())


# 装饰器：用于自动注册分量
def register_initial_data(kind: str):
    def decorator(fn):
        InitialDataRegistry.register(kind, fn)
        return fn

    return decorator
