"""HTTP front end: one POST endpoint per command."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.requests import Request
from fastapi.responses import JSONResponse

from . import __version__, reports
from .expr import EvaluationError, ParseError
from .schemas import (BoundsRequest, ChainRequest, ConvexityRequest,
                      IdentityRequest, IntegrateRequest, Report,
                      SweepPRequest)

app = FastAPI(
    title="hhrect",
    version=__version__,
    description="Inequality verification and certified cubature for "
                "two-variable functions on rectangles.",
)


@app.exception_handler(ParseError)
async def _parse_error(request: Request, exc: ParseError) -> JSONResponse:
    return JSONResponse(status_code=422, content={
        "error": "parse", "message": str(exc), "position": exc.position})


@app.exception_handler(EvaluationError)
async def _eval_error(request: Request, exc: EvaluationError) -> JSONResponse:
    return JSONResponse(status_code=400, content={
        "error": "evaluation", "message": str(exc), "subterm": exc.subterm})


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/chain", response_model=Report, response_model_by_alias=True)
def chain(req: ChainRequest) -> Report:
    return reports.run_chain(req)


@app.post("/identity", response_model=Report, response_model_by_alias=True)
def identity(req: IdentityRequest) -> Report:
    return reports.run_identity(req)


@app.post("/bounds", response_model=Report, response_model_by_alias=True)
def bounds(req: BoundsRequest) -> Report:
    return reports.run_bounds(req)


@app.post("/convexity", response_model=Report, response_model_by_alias=True)
def convexity(req: ConvexityRequest) -> Report:
    return reports.run_convexity(req)


@app.post("/integrate", response_model=Report, response_model_by_alias=True)
def integrate(req: IntegrateRequest) -> Report:
    return reports.run_integrate(req)


@app.post("/sweep-p", response_model=Report, response_model_by_alias=True)
def sweep_p(req: SweepPRequest) -> Report:
    return reports.run_sweep_p(req)
