from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

from dspwb.schemas.signal import frozen_array


class RuleKind(str, Enum):
    DFT_OF_DFT = "dft_of_dft"
    REVERSE = "reverse"
    CONJUGATE = "conjugate"
    CONJUGATE_REVERSE = "conjugate_reverse"
    SIGN_ALTERNATE = "sign_alternate"
    CIRCULAR_SHIFT = "circular_shift"
    REPEAT = "repeat"
    ZERO_INTERLEAVE = "zero_interleave"
    MODULATE_BY = "modulate_by"
    STRETCH = "stretch"
    SCALE = "scale"


# вид правила -> (имя в листе, поле модели)
_PARAMETERS = {
    RuleKind.CIRCULAR_SHIFT: ("m", "shift"),
    RuleKind.REPEAT: ("r", "factor"),
    RuleKind.ZERO_INTERLEAVE: ("L", "factor"),
    RuleKind.STRETCH: ("r", "factor"),
    RuleKind.MODULATE_BY: ("k0", "k0"),
    RuleKind.SCALE: ("g", "gain"),
}


class PropertyRule(BaseModel):
    """Преобразование последовательности из таблицы свойств ДПФ"""
    kind: RuleKind
    shift: int = 0
    factor: int = Field(1, ge=1)
    k0: float = 0.0
    gain: float = 1.0

    class Config:
        frozen = True

    def params_text(self) -> str:
        if self.kind not in _PARAMETERS:
            return "-"
        name, field = _PARAMETERS[self.kind]
        return f"{name}={getattr(self, field)!r}"

    @property
    def label(self) -> str:
        params = self.params_text()
        return self.kind.value if params == "-" else f"{self.kind.value} {params}"

    @classmethod
    def from_text(cls, kind: str, params: str = "-") -> "PropertyRule":
        rule_kind = RuleKind(kind)
        if params == "-":
            return cls(kind=rule_kind)
        name, _, value = params.partition("=")
        expected, field = _PARAMETERS.get(rule_kind, (None, None))
        if name != expected:
            raise ValueError(f"rule {kind} does not take parameter {name!r}")
        number = float(value)
        return cls(kind=rule_kind, **{field: int(number) if field in ("shift", "factor") else number})


class Side(str, Enum):
    TIME = "time"
    FREQUENCY = "frequency"


class QuizItem(BaseModel):
    given_side: Side
    given_seq: np.ndarray
    rule: PropertyRule
    answer_seq: Optional[np.ndarray] = None

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("given_seq", "answer_seq", mode="before")
    @classmethod
    def complex_vector(cls, v):
        return None if v is None else frozen_array(v, np.complex128)


class GradeResult(BaseModel):
    correct: bool
    matched: int
    total: int
    first_mismatch: Optional[int] = None
    max_error: float


class RuleReport(BaseModel):
    label: str
    n_in: int
    n_out: int
    max_rel_error: float
    passed: bool
