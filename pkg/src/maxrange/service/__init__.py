"""FastAPI service exposing the trajectory planner to multiple clients."""
from .app import create_app

__all__ = ["create_app"]
