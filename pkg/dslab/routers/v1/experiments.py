from typing import Any, Dict, List

from fastapi import APIRouter

from dslab.core.logger import get_logger
from dslab.schemas.response import StandardResponse
from dslab.schemas.run import RunRequest
from dslab.services.harness import list_bundled_configs, load_run_config, parse_run_config
from dslab.services.harness.engine import experiment_service

router = APIRouter(prefix="/experiments", tags=["experiments"])

logger = get_logger("ExperimentRouter")


@router.get("", response_model=StandardResponse[List[str]])
def list_experiments():
    """
    列出内置实验配置
    """
    return StandardResponse(data=list_bundled_configs())


@router.post("/run", response_model=StandardResponse[Dict[str, Any]])
def run_experiment(request: RunRequest):
    """
    运行实验 (内置配置名或内联配置)

    Runs synchronously in the server's worker thread pool.
    """
    if request.config_name is not None:
        config = load_run_config(request.config_name, request.overrides)
    else:
        config = parse_run_config(request.config.model_dump(), request.overrides)
    logger.info(f"Run requested: {config.name}")
    report = experiment_service.run_experiment(config)
    return StandardResponse(data=report.model_dump(mode="json"))


@router.get("/results", response_model=StandardResponse[List[Dict[str, Any]]])
def list_results():
    """
    列出本进程内的运行结果
    """
    return StandardResponse(data=experiment_service.get_run_results())


@router.get("/results/{run_id}", response_model=StandardResponse[Dict[str, Any]])
def get_result(run_id: str):
    """
    获取具体运行报告
    """
    report = experiment_service.get_run_result(run_id)
    return StandardResponse(data=report.model_dump(mode="json"))
