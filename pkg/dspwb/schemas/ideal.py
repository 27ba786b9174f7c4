from fractions import Fraction
from typing import Tuple

from pydantic import BaseModel, field_validator, model_validator

# частоты хранятся как точные доли pi: Fraction(1, 4) означает pi/4


def _fraction(v) -> Fraction:
    if isinstance(v, float):
        raise ValueError("frequencies are exact multiples of pi; pass a Fraction, int or 'p/q' string")
    return Fraction(v)


class Band(BaseModel):
    lo: Fraction
    hi: Fraction
    height: complex

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("lo", "hi", mode="before")
    @classmethod
    def exact(cls, v):
        return _fraction(v)

    @field_validator("height", mode="before")
    @classmethod
    def complex_height(cls, v):
        return complex(v)

    @model_validator(mode="after")
    def ordered(self):
        if not -1 <= self.lo < self.hi <= 1:
            raise ValueError(f"band must satisfy -pi <= lo < hi <= pi, got ({self.lo}, {self.hi}) x pi")
        return self

    def contains(self, omega: Fraction) -> bool:
        """Границы включаются"""
        return self.lo <= omega <= self.hi


class Impulse(BaseModel):
    omega: Fraction
    weight: complex

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("omega", mode="before")
    @classmethod
    def exact(cls, v):
        omega = _fraction(v)
        if not -1 <= omega < 1:
            raise ValueError(f"impulse frequency must lie in [-pi, pi), got {omega} x pi")
        return omega

    @field_validator("weight", mode="before")
    @classmethod
    def complex_weight(cls, v):
        return complex(v)


class IdealSpectrum(BaseModel):
    """Идеальный 2pi-периодический спектр: кусочно-постоянные полосы и импульсы"""
    bands: Tuple[Band, ...] = ()
    impulses: Tuple[Impulse, ...] = ()

    class Config:
        frozen = True

    @model_validator(mode="after")
    def normalized(self):
        for prev, band in zip(self.bands, self.bands[1:]):
            if band.lo < prev.hi:
                raise ValueError("bands must be sorted and disjoint")
        if any(band.height == 0 for band in self.bands):
            raise ValueError("zero-height bands must be removed")
        omegas = [imp.omega for imp in self.impulses]
        if omegas != sorted(set(omegas)):
            raise ValueError("impulses must be sorted with distinct frequencies")
        return self

    @property
    def is_empty(self) -> bool:
        return not self.bands and not self.impulses

    def height_at(self, omega: Fraction) -> complex:
        """Высота полосы в точке omega (периодически: -pi и pi совпадают)"""
        points = (omega, Fraction(1)) if omega == -1 else (omega,)
        for point in points:
            for band in self.bands:
                if band.contains(point):
                    return band.height
        return 0j
