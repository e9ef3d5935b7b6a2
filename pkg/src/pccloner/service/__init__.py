"""HTTP service exposing the cloning simulations (FastAPI + pydantic)."""

from .app import create_app

__all__ = ["create_app"]
