"""
Verifier Domain Router - inequality verification on a seeded ensemble
"""

import logging
from typing import Any, Dict

from fastapi import APIRouter
from fastapi.concurrency import run_in_threadpool

from domains.core.errors import LabError
from domains.core.http import to_http_exception
from domains.exponents.ledger import params_from_epsilon
from domains.exponents.schemas import SerrinCondition
from .chains import verify_ensemble
from .schemas import VerifyRequest

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/verify")
async def verify(request: VerifyRequest) -> Dict[str, Any]:
    """Run every estimate chain on a held-out ensemble and summarize the reports"""
    try:
        params = params_from_epsilon(request.eps, request.delta0)
        cond = SerrinCondition(s=request.s, w=request.w, d=request.d, delta1=request.delta1)
        reports = await run_in_threadpool(
            verify_ensemble, params, cond, request.ensemble_size, request.seed,
            request.eps1, request.eps2, request.eps3, request.eps4, request.eps5,
        )
    except LabError as e:
        raise to_http_exception(e)

    explicit_failures = [r for r in reports if r.explicit_only and not r.passed and not r.inconclusive]
    return {
        "params": params.model_dump(),
        "n_reports": len(reports),
        "n_passed": sum(1 for r in reports if r.passed),
        "n_inconclusive": sum(1 for r in reports if r.inconclusive),
        "explicit_failures": len(explicit_failures),
        "reports": [r.model_dump() for r in reports],
    }
