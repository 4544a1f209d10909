from fastapi import APIRouter
from dslab.routers.v1.experiments import router as experiments_router
from dslab.routers.v1.analysis import router as analysis_router

router = APIRouter(prefix="/api/v1")

router.include_router(experiments_router)
router.include_router(analysis_router)
