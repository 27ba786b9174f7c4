from enum import Enum
from typing import Any, Dict

from pydantic import BaseModel, Field, model_validator


class RateMethod(str, Enum):
    FFT_PEAK = "fft_peak"
    AUTOCORR_ZERO_CROSS = "autocorr_zero_cross"


class RateEstimate(BaseModel):
    frequency: float = Field(..., gt=0)  # Hz
    bpm: float
    method: RateMethod
    evidence: Dict[str, Any] = {}

    class Config:
        frozen = True

    @model_validator(mode="after")
    def bpm_matches(self):
        if abs(self.bpm - 60.0 * self.frequency) > 1e-9 * max(1.0, self.bpm):
            raise ValueError(f"bpm {self.bpm} does not equal 60 x {self.frequency} Hz")
        return self

    @classmethod
    def from_frequency(cls, frequency: float, method: RateMethod, **evidence) -> "RateEstimate":
        return cls(frequency=frequency, bpm=60.0 * frequency, method=method, evidence=evidence)
