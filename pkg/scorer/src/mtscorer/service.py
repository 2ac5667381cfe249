"""HTTP face of the scorer: POST /score and GET /health.

Validation is done by :func:`mtscorer.metric.score_batch` rather than a
schema layer so that every protocol violation comes back as the same
``400 {"error": ...}`` envelope regardless of whether it is a shape or a
semantic problem.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .metric import BUILTIN_MODEL, ProtocolError, score_batch


def create_app() -> FastAPI:
    app = FastAPI(title="mtscorer", version=__version__)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__, "builtin_model": BUILTIN_MODEL}

    @app.post("/score")
    async def score(request: Request):
        try:
            body = await request.json()
        except Exception:
            return JSONResponse(status_code=400, content={"error": "body must be JSON"})
        if not isinstance(body, dict):
            return JSONResponse(status_code=400, content={"error": "body must be a JSON object"})
        try:
            batch = score_batch(body.get("items"), body.get("model"))
        except ProtocolError as exc:
            return JSONResponse(status_code=400, content={"error": str(exc)})
        return {"model": batch.model, "mode": batch.mode, "items": batch.items}

    return app
