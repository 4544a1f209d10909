import glob
import os
from typing import Any, Dict, List, Optional

import yaml
from pydantic import ValidationError

from dslab.core.config import settings
from dslab.core.exceptions import ConfigurationError
from dslab.schemas.run import RunConfig


def list_bundled_configs(configs_dir: Optional[str] = None) -> List[str]:
    """
    列出内置实验配置名 (configs/*.yaml)
    """
    configs_dir = configs_dir or settings.paths.configs_dir
    paths = glob.glob(os.path.join(configs_dir, "*.yaml"))
    return sorted(os.path.splitext(os.path.basename(p))[0] for p in paths)


def resolve_config_path(name_or_path: str, configs_dir: Optional[str] = None) -> str:
    if os.path.exists(name_or_path):
        return name_or_path
    configs_dir = configs_dir or settings.paths.configs_dir
    candidate = os.path.join(configs_dir, f"{name_or_path}.yaml")
    if os.path.exists(candidate):
        return candidate
    raise ConfigurationError(
        f"Config not found: {name_or_path}",
        details={"bundled": list_bundled_configs(configs_dir)},
    )


def parse_run_config(data: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    merged = dict(data or {})
    merged.update(overrides or {})
    try:
        return RunConfig(**merged)
    except ValidationError as e:
        raise ConfigurationError(
            f"Invalid run config: {e.error_count()} error(s)",
            details={"errors": e.errors(include_url=False, include_context=False, include_input=False)},
        )


def load_run_config(name_or_path: str, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    从 YAML 文件或内置配置名加载 RunConfig
    """
    path = resolve_config_path(name_or_path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Bad YAML in {path}: {e}")
    if not isinstance(data, dict):
        raise ConfigurationError(f"{path} must hold a mapping at the top level")
    data.setdefault("name", os.path.splitext(os.path.basename(path))[0])
    return parse_run_config(data, overrides)
