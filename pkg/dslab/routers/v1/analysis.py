from typing import Any, Dict

from fastapi import APIRouter

from dslab.schemas.response import StandardResponse
from dslab.schemas.run import FitRequest
from dslab.services.analysis import fit_blowup

router = APIRouter(prefix="/analysis", tags=["analysis"])


@router.post("/fit", response_model=StandardResponse[Dict[str, Any]])
def fit(request: FitRequest):
    """
    对提交的 (t, ‖ψ‖∞) 序列做爆破拟合
    """
    result = fit_blowup(list(zip(request.t, request.linf)), request.window_size)
    return StandardResponse(data=result.model_dump(mode="json"))
