"""Рабочее место ЦОС: ДПФ, фильтры, звук, пульс и признаки ЭЭГ"""
from pathlib import Path

from dotenv import load_dotenv

__version__ = "0.3.0"

# переменные процесса не перезаписываются
load_dotenv(Path(__file__).resolve().parent.parent / ".env", override=False)
