from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from dspwb.schemas.signal import frozen_array


class Spectrum(BaseModel):
    """Бины ДПФ X[k], k = 0 ... n - 1"""
    bins: np.ndarray
    n: int = Field(..., gt=0)
    sample_rate: Optional[float] = Field(None, gt=0)
    source_real: Optional[bool] = None

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("bins", mode="before")
    @classmethod
    def complex_bins(cls, v):
        return frozen_array(v, np.complex128)

    @model_validator(mode="after")
    def length_matches(self):
        if self.bins.size != self.n:
            raise ValueError(f"bins length {self.bins.size} differs from n={self.n}")
        return self

    def __len__(self) -> int:
        return self.n

    def is_hermitian(self, rtol: float = 1e-9) -> bool:
        mirrored = np.conj(np.roll(self.bins[::-1], 1))
        scale = max(np.max(np.abs(self.bins)), np.finfo(float).tiny)
        return bool(np.max(np.abs(self.bins - mirrored)) <= rtol * scale)


class DtftGrid(BaseModel):
    """Значения X(e^{jw}) на сетке частот из [-pi, pi]"""
    omegas: np.ndarray
    values: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("omegas", mode="before")
    @classmethod
    def real_omegas(cls, v):
        arr = frozen_array(v, np.float64)
        if arr.size > 1 and np.any(np.diff(arr) <= 0):
            raise ValueError("omegas must be strictly increasing")
        if arr.size and (arr[0] < -np.pi - 1e-12 or arr[-1] > np.pi + 1e-12):
            raise ValueError("omegas must lie within [-pi, pi]")
        return arr

    @field_validator("values", mode="before")
    @classmethod
    def complex_values(cls, v):
        return frozen_array(v, np.complex128)

    @model_validator(mode="after")
    def equal_lengths(self):
        if self.omegas.size != self.values.size:
            raise ValueError("omegas and values must have equal lengths")
        return self

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    @property
    def phase(self) -> np.ndarray:
        return np.angle(self.values)
