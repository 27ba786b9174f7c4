from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from dspwb.schemas.signal import Signal, frozen_array


class ClipLabel(str, Enum):
    ICTAL = "ictal"
    INTERICTAL = "interictal"


class Clip(BaseModel):
    """Одна запись ЭЭГ фиксированной длительности"""
    id: str
    samples: np.ndarray
    fs: float = Field(..., gt=0)
    label: ClipLabel

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("samples", mode="before")
    @classmethod
    def real_samples(cls, v):
        arr = frozen_array(v, np.float64)
        if arr.size < 2:
            raise ValueError(f"a clip needs at least 2 samples, got {arr.size}")
        return arr

    def __len__(self) -> int:
        return self.samples.size

    def signal(self) -> Signal:
        return Signal(samples=self.samples, sample_rate=self.fs)


class ClipSet(BaseModel):
    clips: Tuple[Clip, ...]

    class Config:
        frozen = True

    @model_validator(mode="after")
    def consistent(self):
        rates = {clip.fs for clip in self.clips}
        if len(rates) > 1:
            raise ValueError(f"clips must share one sample rate, got {sorted(rates)}")
        ids = [clip.id for clip in self.clips]
        if len(set(ids)) != len(ids):
            raise ValueError("clip ids must be unique")
        return self

    def __len__(self) -> int:
        return len(self.clips)

    @property
    def fs(self) -> Optional[float]:
        return self.clips[0].fs if self.clips else None

    @property
    def counts(self) -> Dict[ClipLabel, int]:
        counts = {label: 0 for label in ClipLabel}
        for clip in self.clips:
            counts[clip.label] += 1
        return counts

    def with_label(self, label: ClipLabel) -> Tuple[Clip, ...]:
        return tuple(clip for clip in self.clips if clip.label == label)


class CentralTendency(BaseModel):
    mean: float
    median: float
    mode: float


class HjorthParameters(BaseModel):
    activity: float
    mobility: float
    complexity: float


class FeatureSelection(BaseModel):
    """Набор признаков и параметры их извлечения"""
    names: Tuple[str, ...] = ()
    band_order: int = Field(200, ge=2)
    delta_band: Tuple[float, float] = (1.0, 4.0)
    alpha_band: Tuple[float, float] = (8.0, 12.0)
    welch_segments: int = Field(8, ge=2)
    welch_overlap: float = Field(0.5, ge=0, lt=1)

    class Config:
        frozen = True

    @field_validator("band_order")
    @classmethod
    def even_order(cls, v):
        if v % 2:
            raise ValueError(f"band filter order must be even, got {v}")
        return v


class FeatureTable(BaseModel):
    """Признаки по клипам; NaN означает неопределённое значение"""
    rows: Dict[str, Dict[str, float]]
    labels: Dict[str, ClipLabel]
    feature_names: Tuple[str, ...]
    metadata: Dict[str, Any] = {}

    @model_validator(mode="after")
    def rectangular(self):
        expected = set(self.feature_names)
        for clip_id, row in self.rows.items():
            if set(row) != expected:
                raise ValueError(f"row {clip_id} has features {sorted(row)}, expected {sorted(expected)}")
            if clip_id not in self.labels:
                raise ValueError(f"row {clip_id} has no label")
        return self

    def column(self, name: str) -> np.ndarray:
        return np.array([row[name] for row in self.rows.values()], dtype=float)


class FeatureScore(BaseModel):
    feature: str
    auc: Optional[float] = Field(None, ge=0, le=1)
    ictal_mean: Optional[float] = None
    interictal_mean: Optional[float] = None
    n_ictal: int = 0
    n_interictal: int = 0


class SeparabilityReport(BaseModel):
    scores: Tuple[FeatureScore, ...]

    def score(self, feature: str) -> FeatureScore:
        for item in self.scores:
            if item.feature == feature:
                return item
        raise KeyError(feature)


class PsdEstimate(BaseModel):
    freqs: np.ndarray  # Hz
    psd: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("freqs", "psd", mode="before")
    @classmethod
    def real_vector(cls, v):
        return frozen_array(v, np.float64)

    @property
    def resolution(self) -> float:
        return float(self.freqs[1] - self.freqs[0]) if self.freqs.size > 1 else 0.0


class Spectrogram(BaseModel):
    """Мощность в дБ: строки - кадры, столбцы - бины"""
    times: np.ndarray  # s
    freqs: np.ndarray  # Hz
    power_db: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("times", "freqs", mode="before")
    @classmethod
    def real_vector(cls, v):
        return frozen_array(v, np.float64)

    @field_validator("power_db", mode="before")
    @classmethod
    def real_matrix(cls, v):
        arr = np.array(v, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"expected a matrix, got shape {arr.shape}")
        arr.flags.writeable = False
        return arr

    @model_validator(mode="after")
    def axes_match(self):
        if self.power_db.shape != (self.times.size, self.freqs.size):
            raise ValueError(f"matrix shape {self.power_db.shape} does not match axes ({self.times.size}, {self.freqs.size})")
        return self


class PsdComparison(BaseModel):
    """Сглаженные PSD иктальной и межиктальной серий и полоса наибольшего различия"""
    omegas: np.ndarray  # rad/sample, [0, pi]
    ictal: np.ndarray
    interictal: np.ndarray
    difference: np.ndarray
    band: Tuple[float, float]  # rad/sample
    smoothing: int

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("omegas", "ictal", "interictal", "difference", mode="before")
    @classmethod
    def real_vector(cls, v):
        return frozen_array(v, np.float64)
