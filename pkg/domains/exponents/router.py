"""
Exponents Domain Router - parameter validation endpoint
"""

import logging
from typing import Any, Dict

from fastapi import APIRouter

from domains.core.errors import LabError
from domains.core.http import to_http_exception
from .ledger import build_report
from .schemas import SerrinCondition, ValidateRequest

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/validate")
async def validate_params(request: ValidateRequest) -> Dict[str, Any]:
    """Report every exponent window for (eps, delta0) and the Serrin condition"""
    cond = SerrinCondition(s=request.s, w=request.w, d=request.d, delta1=request.delta1)
    try:
        return build_report(request.eps, request.delta0, cond)
    except LabError as e:
        raise to_http_exception(e)
