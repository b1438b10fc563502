import sys
import time
from pathlib import Path
from typing import Optional

sys.path.append(str(Path(__file__).parent.parent))

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware

from api.models import (
    DegreesResponse,
    ExtremalResponse,
    GraphModel,
    HealthResponse,
    SolveRequest,
    SolveResponse,
    VerifyRequest,
    VerifyResponse,
)
from app.config import LOG_LEVEL, ORACLE_CAP, ORACLE_MAX_ORDER, VERSION, configure_logging
from app.constructive import solve_constructive
from app.digraph import degree_summary
from app.exact import find_cover_exact
from app.extremal import Family, generate
from app.schemas import CoverKind, CoverSpec, CoverTag, PathCover
from app.verification import verify_cover
from harness.io import digraph_from_dict, emit_dot, spec_from_dict

configure_logging()

app = FastAPI(
    title="Disjoint Path Cover Lab",
    description="Constructive and exact disjoint directed path covers, with verification and extremal witnesses",
    version=VERSION,
    docs_url="/docs",
    redoc_url="/redoc"
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _digraph(graph: GraphModel):
    return digraph_from_dict(graph.model_dump())


def _unprocessable(error: Exception) -> HTTPException:
    return HTTPException(status_code=422, detail=str(error))


@app.get("/health", response_model=HealthResponse)
async def health_check():
    return HealthResponse(
        status="healthy",
        version=VERSION,
        oracle_cap=ORACLE_CAP,
        oracle_max_order=ORACLE_MAX_ORDER
    )


@app.post("/degrees", response_model=DegreesResponse)
async def degrees(graph: GraphModel):
    try:
        summary = degree_summary(_digraph(graph))
    except ValueError as e:
        raise _unprocessable(e)
    return DegreesResponse(**summary.to_dict())


@app.post("/solve", response_model=SolveResponse)
def solve(request: SolveRequest):
    try:
        digraph = _digraph(request.graph)
        if request.kind == CoverTag.ONE_TO_ONE:
            if request.k is None:
                raise ValueError("one-to-one covers need k")
            count = request.k
        else:
            count = len(request.T) if request.kind == CoverTag.ONE_TO_MANY else len(request.S)
        spec = CoverSpec(CoverKind(request.kind, count), tuple(request.S), tuple(request.T))

        if request.method == "exact" and digraph.n > ORACLE_MAX_ORDER:
            raise ValueError(f"exact search is limited to order {ORACLE_MAX_ORDER}, got {digraph.n}")

        start = time.perf_counter()
        if request.method == "exact":
            cover = find_cover_exact(digraph, spec)
        else:
            cover = solve_constructive(digraph, spec)
        latency_ms = (time.perf_counter() - start) * 1000
    except ValueError as e:
        raise _unprocessable(e)
    except Exception as e:
        raise HTTPException(
            status_code=500,
            detail=f"Internal processing error: {str(e)}"
        )

    return SolveResponse(
        cover=None if cover is None else [list(path) for path in cover.paths],
        accepted=cover is not None,
        method=request.method,
        latency_ms=latency_ms
    )


@app.post("/verify", response_model=VerifyResponse)
async def verify(request: VerifyRequest):
    try:
        digraph = _digraph(request.graph)
        spec = spec_from_dict(request.spec.model_dump(mode="json"))
        check = verify_cover(digraph, spec, PathCover(request.paths))
    except ValueError as e:
        raise _unprocessable(e)

    return VerifyResponse(
        accepted=check.accepted,
        reason=check.reason.value if check.reason else None,
        detail=check.detail
    )


@app.get("/extremal/{family}", response_model=ExtremalResponse)
async def extremal(
    family: Family,
    n: Optional[int] = Query(default=None, ge=1),
    k: Optional[int] = Query(default=None, ge=1),
    m: Optional[int] = Query(default=None, ge=1)
):
    try:
        witness = generate(family, n=n, k=k, m=m)
    except ValueError as e:
        raise _unprocessable(e)

    payload = witness.to_dict()
    return ExtremalResponse(
        family=payload["family"],
        graph=payload["graph"],
        spec=payload["spec"],
        claimed_delta0=witness.claimed_delta0,
        claimed_ore_min=witness.claimed_ore_min,
        notes=witness.notes,
        dot=emit_dot(witness.digraph, witness.spec)
    )


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "api.main:app",
        host="0.0.0.0",
        port=8000,
        reload=True,
        log_level=LOG_LEVEL.lower()
    )
