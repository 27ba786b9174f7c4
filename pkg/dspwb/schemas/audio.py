from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from dspwb.schemas.signal import Signal, frozen_array


def kept_count(n: int, fraction: float) -> int:
    """K = max(1, round(p N)), половина округляется вверх"""
    return max(1, min(n, int(np.floor(fraction * n + 0.5))))


class CompressedAudio(BaseModel):
    """Первые K бинов ДПФ; остальные отброшены"""
    kept_bins: np.ndarray
    original_n: int = Field(..., gt=0)
    fraction: float = Field(..., gt=0, le=1)
    sample_rate: Optional[float] = Field(None, gt=0)

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("kept_bins", mode="before")
    @classmethod
    def complex_bins(cls, v):
        return frozen_array(v, np.complex128)

    @model_validator(mode="after")
    def bin_count(self):
        expected = kept_count(self.original_n, self.fraction)
        if self.kept_bins.size != expected:
            raise ValueError(f"expected {expected} kept bins for p={self.fraction}, N={self.original_n}, got {self.kept_bins.size}")
        return self

    @property
    def k(self) -> int:
        return self.kept_bins.size


class SteganographyResult(BaseModel):
    """Выходы систем скрытой передачи: смесь z и восстановленные y1, y2"""
    z: Signal
    y1: Signal
    y2: Signal
    system: int = Field(..., ge=1, le=2)

    class Config:
        frozen = True
