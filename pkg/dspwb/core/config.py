from pydantic_settings import BaseSettings
from pydantic import Field, validator
from functools import lru_cache
from pathlib import Path
from typing import List


class AppSettings(BaseSettings):
    project_name: str = Field("DSP Workbench", alias="PROJECT_NAME")
    debug: bool = Field(False, alias="DEBUG")
    log_level: str = Field("INFO", alias="LOG_LEVEL")

    @validator("debug", pre=True)
    def parse_debug(cls, v):
        if isinstance(v, str):
            return v.lower() in ("true", "1", "yes")
        return bool(v)

    @validator("log_level", pre=True)
    def parse_log_level(cls, v):
        return str(v).strip('"\' ').upper()


class OutputSettings(BaseSettings):
    out_dir: Path = Field(Path("out"), alias="DSPWB_OUT")


class DspSettings(BaseSettings):
    grid_points: int = Field(512, alias="DTFT_GRID_POINTS")
    lowpass_order: int = Field(100, alias="LOWPASS_ORDER")
    eeg_band_order: int = Field(200, alias="EEG_BAND_ORDER")
    welch_segments: int = Field(8, alias="WELCH_SEGMENTS")
    welch_overlap: float = Field(0.5, alias="WELCH_OVERLAP")
    spectrogram_window: int = Field(100, alias="SPECTROGRAM_WINDOW")
    spectrogram_overlap: int = Field(80, alias="SPECTROGRAM_OVERLAP")
    psd_smoothing: int = Field(9, alias="PSD_SMOOTHING")
    quiz_tolerance: float = Field(1e-6, alias="QUIZ_TOLERANCE")
    verify_tolerance: float = Field(1e-9, alias="VERIFY_TOLERANCE")

    @validator("lowpass_order", "eeg_band_order")
    def even_order(cls, v):
        if v < 2 or v % 2:
            raise ValueError("filter order must be an even integer >= 2")
        return v


class AudioSettings(BaseSettings):
    max_file_size: int = Field(10_000_000, alias="MAX_UPLOAD_SIZE")  # 10MB
    allowed_types: List[str] = ["audio/wav", "audio/x-wav", "audio/wave"]
    allowed_csv_types: List[str] = ["text/csv", "text/plain", "application/octet-stream"]


class Settings(BaseSettings):
    app: AppSettings = Field(default_factory=AppSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)
    dsp: DspSettings = Field(default_factory=DspSettings)
    audio: AudioSettings = Field(default_factory=AudioSettings)

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    return Settings()
