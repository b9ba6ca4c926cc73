"""HTTP API over the assessment engine.

Spaces are imported once and then treated as immutable snapshots:
assessment and clustering are read-only, freely concurrent, and
synchronous (spaces are desk-scale). Re-importing the same space id is
serialized per id; a second importer racing the first gets 409. Imported
spaces are persisted as JSON files under the configured data directory.
"""

from __future__ import annotations

import json
import os
import re
import threading
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import analysis, spaceio
from .config import RunConfig
from .embedding import make_provider
from .errors import (
    DuplicateInstance,
    ParseError,
    ProviderUnavailable,
    SchemaError,
    TooFewConcepts,
    VariantError,
)
from .levels import LEVELS
from .rqid import assess as run_assessment
from .spaces import validate_space

__all__ = ["create_app"]

_ID_RE = re.compile(r"^[A-Za-z0-9._-]{1,64}$")


class ImportBody(BaseModel):
    space_id: str | None = None
    problem: str = ""
    rows: list[dict[str, Any]] | None = None
    csv: str | None = None


class AssessBody(BaseModel):
    provider: str = "hash"
    provider_params: dict[str, Any] = Field(default_factory=dict)
    weights: Any = "paper-default"
    k: int | None = None
    separator: str | None = None


class ClusterBody(BaseModel):
    k: int
    method: str = "medoids"


def create_app(data_dir: str = "variant-data") -> FastAPI:
    app = FastAPI(title="variant", version="0.1.0")
    os.makedirs(data_dir, exist_ok=True)

    spaces: dict[str, Any] = {}
    results: dict[str, Any] = {}
    import_locks: dict[str, threading.Lock] = {}
    registry_lock = threading.Lock()
    app.state.spaces = spaces
    app.state.results = results
    app.state.import_locks = import_locks

    def space_path(space_id: str) -> str:
        return os.path.join(data_dir, f"{space_id}.json")

    def get_space(space_id: str):
        if space_id in spaces:
            return spaces[space_id]
        path = space_path(space_id)
        if os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                space = spaceio.load_space_json(fh.read())
            spaces[space_id] = space
            return space
        return None

    @app.exception_handler(RequestValidationError)
    async def bad_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/spaces")
    def import_space(body: ImportBody):
        if (body.rows is None) == (body.csv is None):
            return JSONResponse(
                status_code=400,
                content={"detail": "provide exactly one of 'rows' or 'csv'"},
            )
        space_id = body.space_id or f"space-{len(spaces) + 1:04d}"
        if not _ID_RE.match(space_id):
            return JSONResponse(
                status_code=400,
                content={"detail": "space_id must match [A-Za-z0-9._-]{1,64}"},
            )
        with registry_lock:
            lock = import_locks.setdefault(space_id, threading.Lock())
        if not lock.acquire(blocking=False):
            return JSONResponse(
                status_code=409,
                content={"detail": f"space {space_id} is being imported by another request"},
            )
        try:
            try:
                if body.csv is not None:
                    space = spaceio.load_space_csv(
                        body.csv, space_id=space_id, problem=body.problem
                    )
                else:
                    space = spaceio.load_space_json(
                        json.dumps(
                            {
                                "space_id": space_id,
                                "problem": body.problem,
                                "concepts": _rows_to_concepts(body.rows),
                            }
                        )
                    )
            except (ParseError, SchemaError, DuplicateInstance, ValueError, KeyError) as exc:
                return JSONResponse(status_code=400, content={"detail": str(exc)})
            report = validate_space(space)
            spaces[space_id] = space
            results.pop(space_id, None)
            with open(space_path(space_id), "w", encoding="utf-8") as fh:
                json.dump(spaceio.space_to_dict(space), fh, indent=2, ensure_ascii=False)
            return {
                "space_id": space_id,
                "n_concepts": len(space),
                "validation": [
                    {"code": v.code, "severity": v.severity, "message": v.message}
                    for v in report
                ],
            }
        finally:
            lock.release()

    @app.get("/spaces/{space_id}")
    def read_space(space_id: str):
        space = get_space(space_id)
        if space is None:
            return JSONResponse(status_code=404, content={"detail": f"no space {space_id}"})
        return spaceio.space_to_dict(space)

    @app.get("/spaces/{space_id}/concepts/{concept_id}/instances/{instance_id}")
    def read_instance(space_id: str, concept_id: int, instance_id: int):
        space = get_space(space_id)
        if space is None:
            return JSONResponse(status_code=404, content={"detail": f"no space {space_id}"})
        for concept in space.concepts:
            if concept.concept_id != concept_id:
                continue
            for inst in concept.instances:
                if inst.instance_id == instance_id:
                    return {
                        "concept_id": concept_id,
                        "concept_name": concept.name,
                        "instance_id": instance_id,
                        "constructs": {lvl.column: inst.text(lvl) for lvl in LEVELS},
                    }
        return JSONResponse(
            status_code=404,
            content={"detail": f"no instance {instance_id} on concept {concept_id}"},
        )

    @app.post("/spaces/{space_id}/assess")
    def assess_space(space_id: str, body: AssessBody):
        space = get_space(space_id)
        if space is None:
            return JSONResponse(status_code=404, content={"detail": f"no space {space_id}"})
        try:
            cfg = RunConfig(
                provider=body.provider,
                provider_params=body.provider_params,
                weights_spec=body.weights,
                k=body.k,
            )
            provider = make_provider(cfg.provider, cfg.provider_params)
            kwargs = {} if body.separator is None else {"separator": body.separator}
            result = run_assessment(space, provider, cfg.weights, **kwargs)
        except ProviderUnavailable as exc:
            return JSONResponse(status_code=502, content={"detail": str(exc)})
        except (TooFewConcepts, ValueError) as exc:
            return JSONResponse(status_code=400, content={"detail": str(exc)})

        clusters = None
        if cfg.k is not None:
            try:
                labels = analysis.cluster(result.weighted_matrix, cfg.k)
            except VariantError as exc:
                return JSONResponse(status_code=400, content={"detail": str(exc)})
            clusters = {"k": cfg.k, "labels": labels}
        dgram = analysis.dendrogram(result.weighted_matrix, result.concept_ids)
        config_echo = cfg.describe()
        config_echo["provider_id"] = result.provider_id
        config_echo["space_id"] = space_id
        doc = spaceio.result_to_dict(result, config_echo, clusters=clusters, dgram=dgram)
        results[space_id] = {"result": result, "doc": doc}
        return doc

    @app.post("/spaces/{space_id}/cluster")
    def cluster_space(space_id: str, body: ClusterBody):
        if get_space(space_id) is None:
            return JSONResponse(status_code=404, content={"detail": f"no space {space_id}"})
        cached = results.get(space_id)
        if cached is None:
            return JSONResponse(
                status_code=400,
                content={"detail": "no assessment for this space yet; call assess first"},
            )
        result = cached["result"]
        try:
            labels = analysis.cluster(result.weighted_matrix, body.k, method=body.method)
        except VariantError as exc:
            return JSONResponse(status_code=400, content={"detail": str(exc)})
        return {
            "k": body.k,
            "labels": labels,
            "concept_ids": list(result.concept_ids),
        }

    @app.get("/spaces/{space_id}/dendrogram")
    def dendrogram_of(space_id: str):
        if get_space(space_id) is None:
            return JSONResponse(status_code=404, content={"detail": f"no space {space_id}"})
        cached = results.get(space_id)
        if cached is None:
            return JSONResponse(
                status_code=400,
                content={"detail": "no assessment for this space yet; call assess first"},
            )
        result = cached["result"]
        dgram = analysis.dendrogram(result.weighted_matrix, result.concept_ids)
        return {
            "leaves": list(dgram.leaves),
            "merges": [[a, b, h] for a, b, h in dgram.merges],
        }

    return app


def _rows_to_concepts(rows: list[dict[str, Any]]) -> list[dict[str, Any]]:
    """Regroup flat grid rows into the nested document shape."""
    by_concept: dict[int, dict[str, Any]] = {}
    for row in rows:
        cid = int(row["concept_id"])
        entry = by_concept.setdefault(
            cid,
            {"concept_id": cid, "name": str(row.get("concept_name", "")), "instances": []},
        )
        entry["instances"].append(
            {
                "instance_id": int(row.get("instance_id", 1)),
                "constructs": {
                    lvl.column: str(row.get(lvl.column, "")) for lvl in LEVELS
                },
            }
        )
    return list(by_concept.values())
