from typing import Literal, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from dspwb.schemas.signal import frozen_array


class FilterDesign(BaseModel):
    kind: Literal["lowpass", "bandpass"]
    edges: Tuple[float, ...]  # rad/sample
    window: str = "hamming"

    class Config:
        frozen = True


class FirFilter(BaseModel):
    """КИХ-фильтр с линейной фазой: симметричные отсчёты, чётный порядок"""
    taps: np.ndarray
    order: int = Field(..., gt=0)
    design: FilterDesign

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("taps", mode="before")
    @classmethod
    def real_taps(cls, v):
        return frozen_array(v, np.float64)

    @model_validator(mode="after")
    def linear_phase(self):
        if self.order % 2:
            raise ValueError(f"order must be even, got {self.order}")
        if self.taps.size != self.order + 1:
            raise ValueError(f"expected {self.order + 1} taps, got {self.taps.size}")
        if not np.array_equal(self.taps, self.taps[::-1]):
            raise ValueError("taps must be symmetric")
        return self

    @property
    def group_delay(self) -> int:
        return self.order // 2
