from .audio import router as audio_router
from .biosignal import router as biosignal_router
from .quiz import router as quiz_router

__all__ = ["audio_router", "biosignal_router", "quiz_router"]
