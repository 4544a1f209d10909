from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from starlette.exceptions import HTTPException as StarletteHTTPException

from dslab.core.config import settings
from dslab.core.exceptions import DSLabError
from dslab.core.logger import get_logger
from dslab.routers.router import router
from dslab.schemas.response import (
    StandardResponse,
    dslab_exception_handler,
    http_exception_handler,
    validation_exception_handler,
    global_exception_handler,
)

# 获取系统日志记录器
logger = get_logger("System")


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    FastAPI 生命周期管理
    """
    logger.info(f"DS II lab is starting up (fft workers: {settings.fft_workers()})")
    yield
    logger.info("DS II lab is shutting down...")


app = FastAPI(
    title="DS II Blow-up Lab",
    description="Spectral simulation of the focusing Davey-Stewartson II equation with blow-up analysis",
    version="1.0.0",
    lifespan=lifespan,
)

# 注册异常处理器
app.add_exception_handler(DSLabError, dslab_exception_handler)
app.add_exception_handler(StarletteHTTPException, http_exception_handler)
app.add_exception_handler(RequestValidationError, validation_exception_handler)
app.add_exception_handler(Exception, global_exception_handler)

# 注册 API 路由
app.include_router(router)


@app.get("/", response_model=StandardResponse[dict])
async def root():
    """
    健康检查接口
    """
    return StandardResponse(data={"status": "ok", "message": "DS II lab is running"})


if __name__ == "__main__":
    import uvicorn

    # 启动开发服务器
    uvicorn.run("dslab.main:app", host="0.0.0.0", port=8000, reload=True)
