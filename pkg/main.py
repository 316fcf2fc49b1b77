"""
AxiReg Lab - Main FastAPI Application

Multi-domain architecture with separate domains for:
- Exponents: criterion exponent windows
- Verifier: estimate chains on seeded ensembles
- Monitor: stored simulation runs and their verdicts
"""

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from contextlib import asynccontextmanager
import logging

from config.settings import settings
from domains.core.log_setup import configure_logging


# Configure logging
configure_logging()
logger = logging.getLogger(__name__)

VERSION = "0.1.0"


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager"""
    # Startup
    logger.info(f"Starting AxiReg Lab in {settings.environment} mode")
    logger.info(f"API running on port {settings.api_port}, runs under '{settings.runs_dir}'")

    yield

    # Shutdown
    logger.info("Shutting down AxiReg Lab")


# Create FastAPI app
app = FastAPI(
    title="AxiReg Lab",
    description="Numerical laboratory for a weighted swirl/vorticity regularity criterion "
                "of axisymmetric Navier-Stokes flows",
    version=VERSION,
    lifespan=lifespan
)


# Configure CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"] if settings.is_development else [],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Root endpoint
@app.get("/")
async def root():
    """Root endpoint with API info"""
    return {
        "name": "AxiReg Lab",
        "version": VERSION,
        "environment": settings.environment,
        "domains": {
            "exponents": "Criterion exponent windows",
            "verifier": "Estimate chains with computable constants",
            "monitor": "Monitored simulation runs",
        }
    }


# Health check
@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {
        "status": "healthy",
        "environment": settings.environment,
    }


# Include domain routers
from domains.exponents import router as exponents_router
from domains.verifier import router as verifier_router
from domains.monitor import router as monitor_router

app.include_router(exponents_router, prefix="/api/exponents", tags=["Exponents"])
app.include_router(verifier_router, prefix="/api/verifier", tags=["Verifier"])
app.include_router(monitor_router, prefix="/api/monitor", tags=["Monitor"])


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "main:app",
        host="0.0.0.0",
        port=settings.api_port,
        reload=settings.is_development
    )
