from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

REAL_TOLERANCE = 1e-12


def frozen_array(values, dtype) -> np.ndarray:
    """Копирует значения в одномерный массив только для чтения"""
    arr = np.array(values, dtype=dtype)
    if arr.ndim != 1:
        raise ValueError(f"expected a one-dimensional vector, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


class Signal(BaseModel):
    """Конечная последовательность x[n] для n = origin_index ... origin_index + N - 1"""
    samples: np.ndarray
    sample_rate: Optional[float] = Field(None, gt=0)
    origin_index: int = 0

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("samples", mode="before")
    @classmethod
    def complex_samples(cls, v):
        arr = frozen_array(v, np.complex128)
        if arr.size == 0:
            raise ValueError("samples must be non-empty")
        return arr

    def __len__(self) -> int:
        return self.samples.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, Signal):
            return NotImplemented
        return (
            self.origin_index == other.origin_index
            and self.sample_rate == other.sample_rate
            and np.array_equal(self.samples, other.samples)
        )

    __hash__ = None

    @property
    def indices(self) -> np.ndarray:
        return self.origin_index + np.arange(self.samples.size)

    @property
    def is_real(self) -> bool:
        scale = np.max(np.abs(self.samples))
        return bool(np.max(np.abs(self.samples.imag)) <= REAL_TOLERANCE * scale)

    @property
    def real(self) -> np.ndarray:
        return self.samples.real.copy()

    def with_samples(self, samples, origin_index: Optional[int] = None) -> "Signal":
        """Новый сигнал с той же частотой дискретизации"""
        return Signal(
            samples=samples,
            sample_rate=self.sample_rate,
            origin_index=self.origin_index if origin_index is None else origin_index,
        )
