"""
Monitor Domain Router - stored runs
"""

import logging
from typing import Any, Dict

from fastapi import APIRouter, HTTPException, status

from domains.core.errors import LabError
from domains.core.http import to_http_exception
from domains.exponents.schemas import SerrinCondition
from .monitor import criterion_params_from, verdict
from .persistence import load_run, stored_constant
from .schemas import CriterionConfig

logger = logging.getLogger(__name__)

router = APIRouter()


@router.get("/runs/{name}")
async def get_run(name: str) -> Dict[str, Any]:
    """meta.json of a stored run plus the verdict recomputed from its series"""
    try:
        meta, records = load_run(name)
    except (FileNotFoundError, ValueError) as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e))
    try:
        config = meta["config"]
        params = criterion_params_from(CriterionConfig(**config["criterion"]))
        cond = SerrinCondition(**config["serrin"])
        result = verdict(records, params, cond, stored_constant(meta))
    except LabError as e:
        raise to_http_exception(e)
    return {"meta": meta, "n_records": len(records), "verdict": result.model_dump()}
