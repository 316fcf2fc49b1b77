"""
Translation of laboratory errors into HTTP errors for the routers.
"""

import logging
from fastapi import HTTPException, status

from .errors import LabError, ParameterWindowError, RunConfigError

logger = logging.getLogger(__name__)


def to_http_exception(err: LabError) -> HTTPException:
    """Map a LabError to the HTTPException the routers raise."""
    if isinstance(err, (ParameterWindowError, RunConfigError)):
        code = status.HTTP_422_UNPROCESSABLE_ENTITY
    else:
        code = status.HTTP_400_BAD_REQUEST
    logger.error(f"{err.__class__.__name__}: {err.message}")
    return HTTPException(status_code=code, detail=err.to_dict())
