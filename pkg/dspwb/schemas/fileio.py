from pydantic import BaseModel, Field, field_validator

PCM_FORMAT = 1


class WavFile(BaseModel):
    """Заголовок RIFF/WAVE с данными PCM-16"""
    channels: int = Field(..., ge=1)
    bits_per_sample: int = 16
    fs: int = Field(..., gt=0)
    frames: int = Field(..., ge=0)
    data_offset: int = Field(..., ge=0)

    class Config:
        frozen = True

    @field_validator("bits_per_sample")
    @classmethod
    def pcm16(cls, v):
        if v != 16:
            raise ValueError(f"only 16-bit PCM is supported, got {v} bits")
        return v

    @property
    def duration(self) -> float:
        return self.frames / self.fs
