import logging

from fastapi import FastAPI, Request, status
from fastapi.responses import JSONResponse

from dspwb import __version__
from dspwb.core.config import get_settings
from dspwb.core.errors import WorkbenchError
from dspwb.routes import audio_router, biosignal_router, quiz_router

settings = get_settings()

logging.basicConfig(
    level=settings.app.log_level,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

app = FastAPI(
    title=settings.app.project_name,
    version=__version__,
    debug=settings.app.debug,
    docs_url="/docs" if settings.app.debug else None,
    redoc_url="/redoc" if settings.app.debug else None
)

app.include_router(audio_router)
app.include_router(biosignal_router)
app.include_router(quiz_router)


@app.get("/health", include_in_schema=False)
async def health_check():
    """Проверка работоспособности сервиса"""
    return {"status": "ok"}


@app.get("/", include_in_schema=False)
async def root():
    return {
        "service": settings.app.project_name,
        "version": __version__,
        "environment": "development" if settings.app.debug else "production"
    }


@app.exception_handler(WorkbenchError)
async def workbench_error_handler(request: Request, exc: WorkbenchError):
    logger.error(f"{type(exc).__name__} on {request.url.path}: {exc}")
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": str(exc)},
    )


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "dspwb.main:app",
        host="0.0.0.0",
        port=8000,
        reload=settings.app.debug,
        log_level=settings.app.log_level.lower()
    )
