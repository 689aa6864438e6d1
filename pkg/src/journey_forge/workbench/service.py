"""Local HTTP service over run directories.

Stateless across restarts: every byte served comes from (or goes to) the
run directories. JSON bodies mirror the canonical file schemas exactly.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Optional

from fastapi import Body, FastAPI, HTTPException, Query, Response
from fastapi.staticfiles import StaticFiles

from ..analytics.filters import parse_predicates
from ..journey.derive import NoShortcutError
from ..model.types import TraversalConstraints
from .store import RederivePreview, RunStore, UnknownNodeError, UnknownRunError

ANNOTATION_OFFSET_HEADER = "X-Annotation-Log-Offset"


def create_app(runs_root: Path | str, static_dir: Optional[Path | str] = None) -> FastAPI:
    store = RunStore(runs_root)
    app = FastAPI(title="journey-forge workbench", docs_url=None, redoc_url=None)

    @app.get("/healthz")
    def healthz() -> dict[str, str]:
        return {"status": "ok"}

    @app.get("/runs")
    def list_runs(filter: str = Query(default="")) -> dict[str, Any]:
        try:
            predicates = parse_predicates(filter) if filter else []
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        listing = store.list_runs(predicates)
        return {
            "runs": [
                {
                    "run_id": s.run_id,
                    "problem_id": s.problem_id,
                    "iteration_tag": s.iteration_tag,
                    "has_correct_leaf": s.has_correct_leaf,
                    "thought_variants": list(s.thought_variants),
                    "node_count": s.node_count,
                    "annotation_count": s.annotation_count,
                }
                for s in listing.summaries
            ],
            "warnings": listing.warnings,
        }

    @app.get("/runs/{run_id}/tree")
    def get_tree(run_id: str, response: Response) -> dict[str, Any]:
        doc, offset = _guard(lambda: store.tree_document(run_id))
        response.headers[ANNOTATION_OFFSET_HEADER] = str(offset)
        return doc

    @app.get("/runs/{run_id}/problem")
    def get_problem(run_id: str) -> dict[str, Any]:
        return _guard(lambda: store.problem_doc(run_id))

    @app.get("/runs/{run_id}/traversals")
    def get_traversals(run_id: str) -> dict[str, Any]:
        return {"traversals": _guard(lambda: store.traversal_docs(run_id))}

    @app.get("/runs/{run_id}/thoughts")
    def get_thoughts(run_id: str) -> dict[str, Any]:
        return {"thoughts": _guard(lambda: store.thought_docs(run_id))}

    @app.get("/runs/{run_id}/annotations")
    def get_annotations(run_id: str) -> dict[str, Any]:
        return {"annotations": _guard(lambda: store.annotation_docs(run_id))}

    @app.post("/runs/{run_id}/annotations", status_code=201)
    def post_annotation(run_id: str, body: dict[str, Any] = Body(...)) -> dict[str, Any]:
        for field in ("node_id", "verdict"):
            if field not in body:
                raise HTTPException(status_code=422, detail=f"missing field {field!r}")
        try:
            record = store.post_annotation(
                run_id,
                node_id=body["node_id"],
                verdict=body["verdict"],
                comment=body.get("comment", ""),
                author=body.get("author", ""),
            )
        except UnknownRunError:
            raise HTTPException(status_code=404, detail=f"unknown run {run_id}")
        except (UnknownNodeError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {
            "id": record.id,
            "record": {
                "id": record.id,
                "node_id": record.node_id,
                "verdict": record.verdict.value,
                "comment": record.comment,
                "author": record.author,
                "timestamp": record.timestamp,
            },
        }

    @app.post("/runs/{run_id}/rederive")
    def rederive(run_id: str, body: dict[str, Any] = Body(default={})) -> dict[str, Any]:
        constraints = TraversalConstraints(
            max_trials_K=int(body.get("trials", 2)),
            seed=int(body.get("seed", 0)),
        )
        try:
            preview: RederivePreview = store.rederive(run_id, constraints, mid_descent=bool(body.get("mid_descent", True)))
        except UnknownRunError:
            raise HTTPException(status_code=404, detail=f"unknown run {run_id}")
        except NoShortcutError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return {
            "preview_id": preview.preview_id,
            "traversal": preview.traversal_doc,
            "thought": preview.thought_doc,
            "paths": {"traversal": str(preview.traversal_path), "thought": str(preview.thought_path)},
        }

    @app.post("/runs/{run_id}/previews/{preview_id}/promote")
    def promote(run_id: str, preview_id: str) -> dict[str, Any]:
        try:
            meta = store.promote_preview(run_id, preview_id)
        except UnknownRunError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return {"meta": meta}

    def _guard(fn):
        try:
            return fn()
        except UnknownRunError as exc:
            raise HTTPException(status_code=404, detail=f"unknown run: {exc}")
        except FileNotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc))

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
