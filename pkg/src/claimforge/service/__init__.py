"""FastAPI service exposing the edit engine, scoring, and policy suggestions."""

from claimforge.service.app import ServiceState, create_app

__all__ = ["ServiceState", "create_app"]
