import logging
import os

from fastapi import APIRouter, File, Form, HTTPException, UploadFile, status
from fastapi.responses import Response

from dspwb.core.config import get_settings
from dspwb.core.errors import WorkbenchError
from dspwb.services import audio, fileio, signal_core

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/audio", tags=["audio"])


async def read_upload(file: UploadFile, allowed_types) -> bytes:
    """Проверяет тип и размер загруженного файла и возвращает его содержимое"""
    settings = get_settings()
    if file.content_type not in allowed_types:
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=f"Unsupported file type. Allowed: {', '.join(allowed_types)}"
        )

    file.file.seek(0, os.SEEK_END)
    file_size = file.file.tell()
    file.file.seek(0)

    if file_size > settings.audio.max_file_size:
        raise HTTPException(
            status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE,
            detail=f"File too large. Max size: {settings.audio.max_file_size} bytes"
        )
    try:
        return await file.read()
    finally:
        await file.close()


@router.post("/compress")
async def compress_audio(
    file: UploadFile = File(...),
    p: float = Form(0.10),
):
    """Сжатие WAV отбрасыванием спектра; возвращает вещественную часть восстановленного x1"""
    data = await read_upload(file, get_settings().audio.allowed_types)
    try:
        x = fileio.decode_wav(data, file.filename or "<upload>")
        n0 = len(x)
        padded = signal_core.zero_pad(x, signal_core.next_power_of_two(n0))
        x1 = audio.fft_extract(audio.fft_compress(padded, p), project_real=True)
        payload = fileio.encode_wav(x1.with_samples(x1.real[:n0]))
    except WorkbenchError as exc:
        logger.error(f"Compression failed: {exc}")
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(exc)) from exc
    return Response(content=payload, media_type="audio/wav")
