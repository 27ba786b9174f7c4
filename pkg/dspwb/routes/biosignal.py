import logging
from typing import List

from fastapi import APIRouter, File, Form, HTTPException, UploadFile, status

from dspwb.core.config import get_settings
from dspwb.core.errors import WorkbenchError
from dspwb.routes.audio import read_upload
from dspwb.schemas.biosignal import RateEstimate
from dspwb.services import biosignal, fileio

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/biosignal", tags=["biosignal"])


@router.post("/heartrate", response_model=List[RateEstimate])
async def estimate_heart_rate(
    file: UploadFile = File(...),
    fs: float = Form(...),
):
    """Пульс по спектральному пику и по нулям автокорреляции"""
    data = await read_upload(file, get_settings().audio.allowed_csv_types)
    try:
        x = fileio.parse_csv_signal(data.decode("utf-8"), fs, file.filename or "<upload>")
        return [biosignal.rate_from_fft(x), biosignal.rate_from_autocorr(x)]
    except (WorkbenchError, UnicodeDecodeError) as exc:
        logger.error(f"Heart-rate estimation failed: {exc}")
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(exc)) from exc
