"""FastAPI application wrapping the core package.

Library errors surface as HTTP 422 with a stable ``error`` name; the CLI
client maps those names back onto its exit-code table.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import IsoreduceError
from . import handlers
from .models import (
    DotRequest,
    DotResponse,
    EquivRequest,
    EquivResponse,
    FixedReduceRequest,
    FixedReduceResponse,
    ReduceRequest,
    ReductionReportModel,
    SparsifyRequest,
    SparsifyResponse,
    SpectrumRequest,
    SpectrumResponse,
    ValidateRequest,
    ValidateResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="isoreduce", version=__version__)

    @app.exception_handler(IsoreduceError)
    async def _library_error(request, exc: IsoreduceError):
        return JSONResponse(
            status_code=422,
            content={"error": exc.name, "message": str(exc), "detail": exc.details()},
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/validate", response_model=ValidateResponse)
    def validate(req: ValidateRequest) -> ValidateResponse:
        return handlers.handle_validate(req)

    @app.post("/reduce", response_model=ReductionReportModel)
    def reduce(req: ReduceRequest) -> ReductionReportModel:
        return handlers.handle_reduce(req)

    @app.post("/spectrum", response_model=SpectrumResponse)
    def spectrum(req: SpectrumRequest) -> SpectrumResponse:
        return handlers.handle_spectrum(req)

    @app.post("/equiv", response_model=EquivResponse)
    def equiv(req: EquivRequest) -> EquivResponse:
        return handlers.handle_equiv(req)

    @app.post("/fixed-reduce", response_model=FixedReduceResponse)
    def fixed_reduce(req: FixedReduceRequest) -> FixedReduceResponse:
        return handlers.handle_fixed_reduce(req)

    @app.post("/sparsify", response_model=SparsifyResponse)
    def sparsify(req: SparsifyRequest) -> SparsifyResponse:
        return handlers.handle_sparsify(req)

    @app.post("/dot", response_model=DotResponse)
    def dot(req: DotRequest) -> DotResponse:
        return handlers.handle_dot(req)

    return app


app = create_app()
