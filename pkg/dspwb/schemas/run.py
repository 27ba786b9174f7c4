from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, field_validator


class RunConfig(BaseModel):
    """Разобранные аргументы одного запуска командной строки"""
    subcommand: str
    action: Optional[str] = None
    inputs: List[Path] = []
    out_dir: Path
    params: Dict[str, Any] = {}
    seed: Optional[int] = None

    @field_validator("out_dir")
    @classmethod
    def creatable(cls, v: Path):
        if v.exists() and not v.is_dir():
            raise ValueError(f"output path {v} exists and is not a directory")
        return v
