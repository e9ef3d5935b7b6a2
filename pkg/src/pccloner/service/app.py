"""HTTP service exposing the cloner models as JSON table endpoints."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..state import DegenerateOutcomeError
from . import handlers
from .models import (
    CloneRequest,
    FiltersRequest,
    FrontierRequest,
    HomRequest,
    PsuccRequest,
    SampleCountsRequest,
    TableResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="pccloner",
        description="Asymmetric phase-covariant cloning of polarization qubits",
        version="0.1.0",
    )

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(DegenerateOutcomeError)
    async def degenerate_handler(request: Request, exc: DegenerateOutcomeError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    async def health() -> dict:
        return {"status": "ok"}

    @app.post("/frontier")
    async def frontier(req: FrontierRequest) -> TableResponse:
        return handlers.frontier(req)

    @app.post("/filters")
    async def filters(req: FiltersRequest) -> TableResponse:
        return handlers.filters(req)

    @app.post("/clone")
    async def clone(req: CloneRequest) -> TableResponse:
        return handlers.clone(req)

    @app.post("/psucc")
    async def psucc(req: PsuccRequest) -> TableResponse:
        return handlers.psucc(req)

    @app.post("/sample-counts")
    async def sample_counts(req: SampleCountsRequest) -> TableResponse:
        return handlers.sample_counts_cmd(req)

    @app.post("/hom")
    async def hom(req: HomRequest) -> TableResponse:
        return handlers.hom(req)

    return app
