import logging
import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field


class Settings(BaseModel):
    """Runtime settings, read from the environment (and an optional .env file)"""
    app_name: str = Field("Cluster Forge", description="Service name shown by the HTTP root endpoint")
    app_version: str = Field("1.0.0", description="Service version")
    host: str = Field("0.0.0.0", description="HTTP bind address")
    port: int = Field(8000, description="HTTP port")
    reload: bool = Field(False, description="Auto-reload the HTTP server on code changes")
    environment: str = Field("development", description="Deployment environment label")
    log_level: str = Field("INFO", description="Root log level")
    seed: int = Field(0, description="RNG seed for generic representation sampling")
    prime: int = Field(101, description="Prime used for structural linear algebra")
    max_seeds: int = Field(100_000, gt=0, description="Exchange graph exploration cap on nodes")
    max_depth: int = Field(64, gt=0, description="Exchange graph exploration cap on BFS depth")
    budget: int = Field(10_000_000, gt=0, description="Grassmannian enumeration budget")
    attempts: int = Field(200, gt=0, description="Sampling attempts for generic representations")


_ENV_KEYS = {
    "app_name": "APP_NAME",
    "app_version": "APP_VERSION",
    "host": "HOST",
    "port": "PORT",
    "reload": "RELOAD",
    "environment": "ENVIRONMENT",
    "log_level": "LOG_LEVEL",
    "seed": "CLUSTER_FORGE_SEED",
    "prime": "CLUSTER_FORGE_PRIME",
    "max_seeds": "CLUSTER_FORGE_MAX_SEEDS",
    "max_depth": "CLUSTER_FORGE_MAX_DEPTH",
    "budget": "CLUSTER_FORGE_BUDGET",
    "attempts": "CLUSTER_FORGE_ATTEMPTS",
}


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Load settings once per process"""
    load_dotenv()
    values = {field: os.environ[key] for field, key in _ENV_KEYS.items() if key in os.environ}
    return Settings(**values)


def configure_logging(level: str = None):
    """Send log records to stderr so JSON on stdout stays clean"""
    level = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
