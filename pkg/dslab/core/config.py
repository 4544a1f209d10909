import os
import yaml
from typing import Optional
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field, BaseModel
from dslab.core.exceptions import ConfigurationError


class SystemConfig(BaseModel):
    enable_logging: bool = True
    log_level: str = "INFO"
    # None -> dslab/data/logs
    log_dir: Optional[str] = None


class PathsConfig(BaseModel):
    configs_dir: str = Field(
        default_factory=lambda: os.path.join(
            os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))),
            "configs",
        )
    )
    runs_dir: str = "runs"


class Settings(BaseSettings):
    system: SystemConfig = SystemConfig()
    paths: PathsConfig = PathsConfig()
    # FFT worker cap, read from DS2_THREADS; 0 means all cores
    threads: int = 0

    model_config = SettingsConfigDict(env_prefix="DS2_", env_file=".env", env_nested_delimiter="__")

    @classmethod
    def load_from_yaml(cls, path: str = None) -> "Settings":
        if path is None:
            # Default to dslab/core/config.yaml
            path = os.path.join(os.path.dirname(__file__), "config.yaml")

        if not os.path.exists(path):
            return cls()

        with open(path, "r") as f:
            data = yaml.safe_load(f) or {}

        return cls(**data)

    def fft_workers(self) -> int:
        """
        scipy.fft 的 workers 参数 (-1 = 全部核心)
        """
        if self.threads < 0:
            raise ConfigurationError(
                "DS2_THREADS must be >= 0", details={"threads": self.threads}
            )
        return self.threads if self.threads > 0 else -1


# Singleton instance
settings = Settings.load_from_yaml()
