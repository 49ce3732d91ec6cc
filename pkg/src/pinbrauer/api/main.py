import logging
from typing import Optional

from celery.result import AsyncResult
from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from pinbrauer.core import algebra
from pinbrauer.core.characters import character_of, dim_cpk, laurent_mul, tensor_rule, updown_walks, weyl_character
from pinbrauer.core.diagrams import DiagramExpr, count_gb
from pinbrauer.core.errors import PinBrauerError
from pinbrauer.core.exporter import counts_records, multiplicity_records
from pinbrauer.schemas import DecomposeRequest, MultiplyRequest, ResultResponse, TaskResponse, VerifyRequest
from pinbrauer.worker.celery_app import celery_app
from pinbrauer.worker.tasks import run_verification_suite

logger = logging.getLogger(__name__)

# TODO(api): stream per-case progress of long suites instead of polling /results.

# --- Application Setup ---
app = FastAPI(
    title="pinbrauer API",
    description="Exact centralizer-algebra computations for Pin(N) and Spin(N).",
    version="0.1.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(PinBrauerError)
async def pinbrauer_error_handler(request: Request, exc: PinBrauerError):
    logger.info("%s %s rejected: %s", request.method, request.url.path, exc)
    return JSONResponse(status_code=400, content={"detail": str(exc)})


# --- API Endpoints ---
@app.get("/dims")
async def get_dimensions(
    k: int = Query(2, ge=0, le=6),
    n: int = Query(4, ge=1, le=4),
    N: Optional[int] = Query(None),
):
    """
    Dimension of the diagram algebra on k + k vertices and the walk multiplicities.
    """
    N = N if N is not None else 2 * n + 1
    if N not in (2 * n, 2 * n + 1):
        raise PinBrauerError(f"N={N} must be 2n or 2n+1 for n={n}")
    walks = updown_walks(n, N, k)
    return {
        "k": k,
        "dim_cpk": dim_cpk(k),
        "gb_count": count_gb(k, k),
        "walks": counts_records(walks),
    }


@app.post("/multiply")
async def multiply_diagrams(request: MultiplyRequest):
    """
    Multiplies two diagrams in the generic algebra (rt basis, coefficients in X).
    """
    a, b = request.diagrams()
    product = algebra.multiply(DiagramExpr.of(a), DiagramExpr.of(b), request.family)
    return {"lhs": str(a), "rhs": str(b), "family": request.family, "product": product.to_json(), "text": str(product)}


@app.post("/decompose")
async def decompose_product(request: DecomposeRequest):
    """
    Closed-form decomposition of a tensor product, checked against Weyl characters.
    """
    a, b = request.left.to_label(), request.right.to_label()
    rule = tensor_rule(a, b)
    oracle = character_of(a.n, a.N, rule) == laurent_mul(weyl_character(a), weyl_character(b))
    return {"left": str(a), "right": str(b), "rule": multiplicity_records(rule), "agrees_with_characters": oracle}


@app.post("/verify", response_model=TaskResponse, status_code=202)
async def submit_verification(request: VerifyRequest):
    """
    Submits a verification suite to the worker.
    """
    logger.info("submitting suite %s at n=%d, N=%d", request.suite, request.n, request.N)
    task = run_verification_suite.delay(suite=request.suite, n=request.n, N=request.N, seed=request.seed)
    return TaskResponse(task_id=task.id, status="SUBMITTED")


@app.get("/results/{task_id}", response_model=ResultResponse)
async def get_task_result(task_id: str):
    """
    Retrieves the status and report of a submitted suite.
    """
    task_result = AsyncResult(task_id, app=celery_app)

    response = {
        "task_id": task_id,
        "status": task_result.status,
        "result": task_result.result if task_result.ready() else None,
    }

    return JSONResponse(response)
