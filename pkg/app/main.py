from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from app.cli import cmd_ccmap, cmd_explore, cmd_mutate, cmd_verify
from app.config import get_settings
from app.errors import ClusterForgeError
from app.models import (
    CCMapRequest,
    CCResultModel,
    ExploreRequest,
    GraphSummary,
    MutateRequest,
    RunConfig,
    SeedModel,
    SuiteReport,
    VerifyRequest,
)

settings = get_settings()

app = FastAPI(
    title=settings.app_name,
    description="Cluster algebra mutation, exchange graphs and the Caldero-Chapoton map",
    version=settings.app_version,
)

# CORS middleware for notebook and frontend clients
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _config(command: str, **fields) -> RunConfig:
    defaults = {
        "max_seeds": settings.max_seeds,
        "max_depth": settings.max_depth,
        "budget": settings.budget,
        "prime": settings.prime,
        "seed": settings.seed,
        "attempts": settings.attempts,
    }
    defaults.update(fields)
    return RunConfig(command=command, **defaults)


def _run(call, *args):
    try:
        return call(*args)
    except ClusterForgeError as exc:
        raise HTTPException(status_code=exc.http_status, detail=f"{type(exc).__name__}: {exc}")


@app.get("/")
def read_root():
    """Root endpoint"""
    return {
        "message": settings.app_name,
        "status": "running",
        "docs": "/docs",
    }


@app.get("/health")
def health_check():
    """Health check endpoint"""
    return {"status": "healthy"}


@app.post("/mutate", response_model=SeedModel)
def mutate(request: MutateRequest):
    """Mutate the initial seed of a preset along 1-based directions"""
    return _run(cmd_mutate, _config("mutate", quiver=request.quiver), request.directions)


@app.post("/explore", response_model=GraphSummary)
def explore(request: ExploreRequest):
    """Exchange graph counts; a truncated exploration still answers 200 with complete = false"""
    config = _config("explore", quiver=request.quiver, max_seeds=request.max_seeds, max_depth=request.max_depth)
    summary, _ = _run(cmd_explore, config)
    return summary


@app.post("/ccmap", response_model=CCResultModel)
def ccmap(request: CCMapRequest):
    """Caldero-Chapoton image of an object spec or of the generic module of a real root"""
    return _run(cmd_ccmap, _config("ccmap", quiver=request.quiver), request.object, request.root)


@app.post("/verify", response_model=SuiteReport)
def verify(request: VerifyRequest):
    """
    Run a verification suite

    Failed checks are part of the report (status 'fail'), not HTTP errors
    """
    config = _config("verify", quiver=request.quiver, n_max=request.n_max, n_max_cc=request.n_max_cc)
    return _run(cmd_verify, config, request.suite)
