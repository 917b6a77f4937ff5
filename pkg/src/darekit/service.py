"""Stateless HTTP facade over the rephrasing pipeline and reports.

The app is built once from a config: lexicons load at construction and
the compiled matchers are shared read-only by every request. /v1/check
holds no per-request state, so identical bodies always produce identical
responses. Error bodies all follow one schema:
{"code": ..., "message": ..., "detail": ...?} with codes bad_request,
too_long, not_found, and internal.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .config import AppConfig, default_config
from .dare import RephraseStrategy, dare_process
from .detect import FilterConfig
from .lexicon import MatcherBundle, build_matchers, load_manifest
from .report import (
    attribute_counts_to_dict,
    attribute_project_heatmap,
    heatmap_to_dict,
    load_results,
    offences_per_attribute,
    offences_per_project,
    project_report_to_dict,
)
from .taxonomy import TAXONOMY

_RUN_ID_RE = re.compile(r"^[A-Za-z0-9_-]+$")
_VIEWS = ("projects", "attributes", "heatmap")


def _error(status: int, code: str, message: str, detail: str | None = None) -> JSONResponse:
    body: dict = {"code": code, "message": message}
    if detail is not None:
        body["detail"] = detail
    return JSONResponse(status_code=status, content=body)


def create_app(config: AppConfig | None = None) -> FastAPI:
    """Build the service; lexicons load eagerly so bad config fails fast."""
    if config is None:
        config = default_config()
    matchers: MatcherBundle = build_matchers(load_manifest(config.manifest_path))
    filter_cfg: FilterConfig = config.filter
    max_len = config.max_text_length
    runs_dir = Path(config.runs_dir) if config.runs_dir else None

    app = FastAPI(title="darekit", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(Exception)
    async def on_unhandled(request: Request, exc: Exception) -> JSONResponse:
        return _error(500, "internal", "internal error")

    @app.post("/v1/check")
    async def check(request: Request) -> JSONResponse:
        try:
            body = json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError):
            return _error(400, "bad_request", "body must be valid JSON")
        if not isinstance(body, dict) or not isinstance(body.get("text"), str):
            return _error(400, "bad_request", "body must carry a string 'text' field")
        text = body["text"]
        if len(text) > max_len:
            return _error(
                413, "too_long", f"text exceeds the {max_len}-scalar limit"
            )
        strategy_name = body.get("strategy", config.strategy)
        try:
            strategy = RephraseStrategy(strategy_name)
        except ValueError:
            return _error(
                400, "bad_request", f"unknown strategy: {strategy_name!r}"
            )
        output = dare_process(text, matchers, filter_cfg, strategy)
        return JSONResponse(status_code=200, content=output.to_dict())

    @app.get("/v1/taxonomy")
    async def taxonomy() -> JSONResponse:
        return JSONResponse(status_code=200, content=TAXONOMY.to_dict())

    @app.get("/v1/reports/{view}")
    async def reports(view: str, request: Request) -> JSONResponse:
        if view not in _VIEWS:
            return _error(400, "bad_request", f"unknown view: {view!r}")
        run_id = request.query_params.get("run", "")
        if not _RUN_ID_RE.match(run_id):
            return _error(400, "bad_request", "missing or malformed run id")
        top_k_raw = request.query_params.get("top_k", "15")
        try:
            top_k = int(top_k_raw)
        except ValueError:
            return _error(400, "bad_request", f"top_k must be an integer: {top_k_raw!r}")
        if top_k < 1:
            return _error(400, "bad_request", "top_k must be >= 1")
        if runs_dir is None:
            return _error(404, "not_found", "no runs directory configured")
        run_dir = runs_dir / run_id
        results_path = run_dir / "results.jsonl"
        if not results_path.is_file():
            return _error(404, "not_found", f"unknown run: {run_id}")
        records = load_results(results_path)
        if view == "projects":
            total = _projects_seen(run_dir)
            payload = project_report_to_dict(offences_per_project(records, total))
        elif view == "attributes":
            payload = attribute_counts_to_dict(offences_per_attribute(records))
        else:
            payload = heatmap_to_dict(attribute_project_heatmap(records, top_k))
        return JSONResponse(status_code=200, content=payload)

    return app


def _projects_seen(run_dir: Path) -> int | None:
    summary_path = run_dir / "summary.json"
    if not summary_path.is_file():
        return None
    try:
        summary = json.loads(summary_path.read_text(encoding="utf-8"))
        return int(summary["counters"]["projects_seen"])
    except (ValueError, KeyError, TypeError):
        return None
