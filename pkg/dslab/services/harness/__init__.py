from dslab.services.harness.config_loader import (
    list_bundled_configs,
    load_run_config,
    parse_run_config,
    resolve_config_path,
)
from dslab.services.harness.storage import (
    Snapshot,
    read_report,
    read_series,
    read_snapshot,
    write_exact_compare,
    write_report,
    write_series,
    write_snapshot,
)
from dslab.services.harness.engine import (
    ExperimentService,
    RunObserver,
    experiment_service,
)

__all__ = [
    "list_bundled_configs",
    "load_run_config",
    "parse_run_config",
    "resolve_config_path",
    "Snapshot",
    "read_report",
    "read_series",
    "read_snapshot",
    "write_exact_compare",
    "write_report",
    "write_series",
    "write_snapshot",
    "ExperimentService",
    "RunObserver",
    "experiment_service",
]
