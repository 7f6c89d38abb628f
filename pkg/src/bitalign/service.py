"""HTTP front door for the annotation store.

A small JSON API (mounted under ``/v1``) drives the annotation workflow:
fetch the next pending pair, save or discard it, watch progress, export
the finished gold file. An optional static directory can be mounted at
the root to serve an annotation UI next to the API.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .annotation import AnnotationStore, AnnotationTask, validate_guidelines
from .core import FormatError, parse_pharaoh, serialize_pharaoh

__all__ = ["create_app"]


class LinksBody(BaseModel):
    links: str
    base_version: int


class DiscardBody(BaseModel):
    reason: str


def _task_payload(task: AnnotationTask) -> dict:
    return {
        "id": task.id,
        "src_tokens": list(task.pair.src_tokens),
        "tgt_tokens": list(task.pair.tgt_tokens),
        "links": serialize_pharaoh(task.links),
        "status": task.status,
        "version": task.version,
        "note": task.note,
        "warnings": validate_guidelines(task.pair, task.links),
    }


def create_app(store: AnnotationStore, ui_dir: str | Path | None = None) -> FastAPI:
    """Build the annotation API around an existing store."""
    app = FastAPI(title="bitalign annotation service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/v1/pairs/next")
    def get_next_pending() -> dict:
        task = store.next_pending()
        if task is None:
            raise HTTPException(status_code=404, detail="no pending pairs")
        return _task_payload(task)

    @app.get("/v1/pairs/{pair_id}")
    def get_pair(pair_id: int) -> dict:
        try:
            task = store.get(pair_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no pair with id {pair_id}")
        return _task_payload(task)

    @app.put("/v1/pairs/{pair_id}/links")
    def put_links(pair_id: int, body: LinksBody) -> dict:
        try:
            links = parse_pharaoh(body.links)
            task = store.get(pair_id)
            links.validate_for(task.pair)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no pair with id {pair_id}")
        except (FormatError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        saved, previous_version = store.set_links(
            pair_id, links, base_version=body.base_version
        )
        return {
            "id": saved.id,
            "status": saved.status,
            "version": saved.version,
            "previous_version": previous_version,
            "conflict": body.base_version != previous_version,
            "warnings": validate_guidelines(saved.pair, saved.links),
        }

    @app.post("/v1/pairs/{pair_id}/discard")
    def post_discard(pair_id: int, body: DiscardBody) -> dict:
        try:
            task = store.discard(pair_id, body.reason)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no pair with id {pair_id}")
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return _task_payload(task)

    @app.get("/v1/progress")
    def get_progress() -> dict:
        return store.progress()

    @app.get("/v1/export", response_class=PlainTextResponse)
    def get_export() -> str:
        return store.export_tsv()

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
