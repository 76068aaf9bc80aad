"""Stateless HTTP JSON API consumed by the what-if explorer.

The corpus is read once at startup; every response is a deterministic
function of the request body, serialized with the same canonical JSON the
CLI emits.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response

from .engine import whatif_diff
from .harness import recommend_payload
from .jsonio import canonical_json, diff_to_json, scenario_from_json, scenario_to_json, schema_json
from .model import Scenario
from .xasformat import load_corpus_dir


def _json_response(payload: object, status: int = 200) -> Response:
    return Response(content=canonical_json(payload), status_code=status,
                    media_type="application/json")


def _error_response(messages: list[str], status: int = 400) -> Response:
    errors = [{"kind": "bad_value", "message": m, "line": None, "column": None}
              for m in messages]
    return _json_response({"errors": errors}, status=status)


async def _read_json(request: Request) -> tuple[Optional[object], Optional[Response]]:
    raw = await request.body()
    try:
        return json.loads(raw), None
    except ValueError as exc:
        return None, _error_response([f"invalid JSON body: {exc}"])


def create_app(corpus_dir: str | Path, static_dir: Optional[str] = None) -> FastAPI:
    pairs, errors = load_corpus_dir(corpus_dir)
    if errors:
        raise ValueError("corpus failed to load:\n" + "\n".join(str(e) for e in errors))
    fixtures: dict[str, tuple[Scenario, Optional[dict]]] = {
        s.id: (s, golden) for s, golden in pairs}

    app = FastAPI(title="arexplain", docs_url=None, redoc_url=None, openapi_url=None)

    @app.get("/api/schema")
    async def get_schema() -> Response:
        return _json_response(schema_json())

    @app.get("/api/corpus")
    async def get_corpus() -> Response:
        summaries = [
            {
                "id": s.id,
                "activity": s.user_state.activity,
                "description": s.ai_output.description,
                "has_golden": golden is not None,
            }
            for s, golden in fixtures.values()
        ]
        summaries.sort(key=lambda item: item["id"])
        return _json_response({"fixtures": summaries})

    @app.get("/api/corpus/{fixture_id}")
    async def get_fixture(fixture_id: str) -> Response:
        found = fixtures.get(fixture_id)
        if found is None:
            return _error_response([f"unknown fixture {fixture_id!r}"], status=404)
        scenario, golden = found
        return _json_response({
            "id": scenario.id,
            "scenario": scenario_to_json(scenario),
            "golden": golden,
        })

    @app.post("/api/recommend")
    async def post_recommend(request: Request) -> Response:
        body, failure = await _read_json(request)
        if failure is not None:
            return failure
        scenario, violations = scenario_from_json(body)
        if scenario is None:
            return _error_response(violations)
        return _json_response(recommend_payload(scenario))

    @app.post("/api/diff")
    async def post_diff(request: Request) -> Response:
        body, failure = await _read_json(request)
        if failure is not None:
            return failure
        if not isinstance(body, dict) or "a" not in body or "b" not in body:
            return _error_response(["body must be an object with scenarios 'a' and 'b'"])
        a, errors_a = scenario_from_json(body["a"])
        b, errors_b = scenario_from_json(body["b"])
        problems = [f"a: {m}" for m in errors_a] + [f"b: {m}" for m in errors_b]
        if problems:
            return _error_response(problems)
        return _json_response(diff_to_json(whatif_diff(a, b)))

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="explorer")

    return app
