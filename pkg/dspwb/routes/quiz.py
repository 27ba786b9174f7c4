from typing import List

from fastapi import APIRouter, HTTPException, Query, status
from pydantic import BaseModel

from dspwb.core.config import get_settings
from dspwb.core.errors import WorkbenchError
from dspwb.schemas.properties import GradeResult
from dspwb.services import dft_properties

router = APIRouter(prefix="/quiz", tags=["quiz"])


class SheetItem(BaseModel):
    index: int
    given_side: str
    rule: str
    params: str
    given: List[List[float]]


class GradeRequest(BaseModel):
    n: int = 6
    rows: int = 15
    seed: int = 0
    index: int
    answer: List[List[float]]  # пары [re, im]


def _pairs(values) -> List[List[float]]:
    return [[float(v.real), float(v.imag)] for v in values]


def _generate(n: int, rows: int, seed: int):
    try:
        return dft_properties.generate_quiz(n, rows, seed)
    except WorkbenchError as exc:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(exc)) from exc


@router.get("/sheet", response_model=List[SheetItem])
async def get_sheet(
    n: int = Query(6, ge=1, le=64),
    rows: int = Query(15, ge=1, le=200),
    seed: int = 0,
):
    """Лист заданий без ответов"""
    return [
        SheetItem(
            index=i,
            given_side=item.given_side.value,
            rule=item.rule.kind.value,
            params=item.rule.params_text(),
            given=_pairs(item.given_seq),
        )
        for i, item in enumerate(_generate(n, rows, seed))
    ]


@router.post("/grade", response_model=GradeResult)
async def grade_answer(request: GradeRequest):
    """Проверка ответа на одно задание регенерированного листа"""
    items = _generate(request.n, request.rows, request.seed)
    if not 0 <= request.index < len(items):
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=f"No quiz item {request.index}")
    if any(len(pair) != 2 for pair in request.answer):
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail="answer values must be [re, im] pairs")
    proposed = [complex(*pair) for pair in request.answer]
    try:
        return dft_properties.check_answer(items[request.index], proposed, get_settings().dsp.quiz_tolerance)
    except WorkbenchError as exc:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(exc)) from exc
