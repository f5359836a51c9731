"""HTTP JSON facade: validation, per-client rate limiting, classification,
record persistence, feedback intake, and CORS preflight handling."""

from __future__ import annotations

import ipaddress
import math
import time
import uuid as uuid_module
from dataclasses import dataclass
from typing import Callable

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .core.model import ModelArtifact, classify
from .core.text import normalize
from .ratelimit import FixedWindowLimiter
from .store import (
    ConflictError,
    FeedbackRecord,
    NotFoundError,
    PredictionRecord,
    StoreError,
    utc_now_ms,
)

PREDICT_ROUTE = "POST /predict"
FEEDBACK_ROUTE = "POST /feedback"


@dataclass(frozen=True)
class ServiceConfig:
    allowed_origins: tuple[str, ...] = ("*",)
    rate_capacity: int = 2
    rate_window_seconds: float = 60.0
    max_text_len: int = 500
    trust_proxy: bool = False


def _error(status: int, code: str, message: str, headers: dict | None = None) -> JSONResponse:
    return JSONResponse(
        {"error": code, "message": message}, status_code=status, headers=headers
    )


def client_ip(request: Request, trust_proxy: bool) -> str:
    """Client key: socket address, or first forwarded-for hop when trusted."""
    if trust_proxy:
        forwarded = request.headers.get("x-forwarded-for")
        if forwarded:
            first = forwarded.split(",")[0].strip()
            try:
                ipaddress.ip_address(first)
                return first
            except ValueError:
                pass
    if request.client and request.client.host:
        return request.client.host
    return "unknown"


def create_app(
    model: ModelArtifact | None,
    store,
    config: ServiceConfig | None = None,
    *,
    clock: Callable[[], float] = time.monotonic,
    uuid_source: Callable[[], uuid_module.UUID] = uuid_module.uuid4,
    limiter: FixedWindowLimiter | None = None,
) -> FastAPI:
    """Build the service with injectable model, store, clock, and uuid source."""
    config = config or ServiceConfig()
    limiter = limiter or FixedWindowLimiter(config.rate_capacity, config.rate_window_seconds)
    app = FastAPI(openapi_url=None, docs_url=None, redoc_url=None)

    def allowed_origin(request: Request) -> str | None:
        origin = request.headers.get("origin")
        if origin is None:
            return None
        if "*" in config.allowed_origins:
            return "*"
        if origin in config.allowed_origins:
            return origin
        return None

    def with_cors(request: Request, response: Response) -> Response:
        origin = allowed_origin(request)
        if origin is not None:
            response.headers["Access-Control-Allow-Origin"] = origin
        return response

    @app.post("/predict")
    async def handle_predict(request: Request) -> Response:
        try:
            body = await request.json()
        except Exception:
            return with_cors(request, _error(400, "bad_request", "body must be valid JSON"))
        if not isinstance(body, dict) or not isinstance(body.get("text"), str):
            return with_cors(
                request, _error(400, "bad_request", "body must be a JSON object with a string 'text' field")
            )
        text = body["text"]
        if len(text) > config.max_text_len:
            return with_cors(
                request,
                _error(422, "invalid_text", f"text exceeds {config.max_text_len} characters"),
            )
        if not normalize(text):
            return with_cors(request, _error(422, "invalid_text", "text is empty"))

        ip = client_ip(request, config.trust_proxy)
        decision = limiter.check(f"{PREDICT_ROUTE}|{ip}", clock())
        if not decision.allowed:
            retry_after = max(1, math.ceil(decision.retry_after))
            return with_cors(
                request,
                _error(
                    429,
                    "rate_limited",
                    f"try again in {retry_after} seconds",
                    headers={"Retry-After": str(retry_after)},
                ),
            )

        if model is None:
            return with_cors(request, _error(503, "model_not_loaded", "no model is loaded"))
        request_id = str(uuid_source())
        prediction = classify(model, text)
        record = PredictionRecord(
            uuid=request_id,
            text=text,
            score=prediction.score,
            label=prediction.label,
            ip=ip,
            created_at=utc_now_ms(),
        )
        try:
            store.insert_request(record)
        except StoreError:
            return with_cors(
                request, _error(500, "storage_failure", "prediction could not be recorded")
            )
        return with_cors(
            request,
            JSONResponse(
                {
                    "id": request_id,
                    "prediction": prediction.score,
                    "label": prediction.label.value,
                },
                status_code=200,
            ),
        )

    @app.post("/feedback")
    async def handle_feedback(request: Request) -> Response:
        try:
            body = await request.json()
        except Exception:
            return with_cors(request, _error(400, "bad_request", "body must be valid JSON"))
        if (
            not isinstance(body, dict)
            or not isinstance(body.get("id"), str)
            or not isinstance(body.get("correct"), bool)
        ):
            return with_cors(
                request,
                _error(
                    400,
                    "bad_request",
                    "body must be a JSON object with string 'id' and boolean 'correct'",
                ),
            )
        fb = FeedbackRecord(
            prediction_uuid=body["id"], correct=body["correct"], created_at=utc_now_ms()
        )
        try:
            store.insert_feedback(fb)
        except NotFoundError:
            return with_cors(request, _error(404, "not_found", f"no prediction with id {body['id']}"))
        except ConflictError:
            return with_cors(
                request, _error(409, "conflict", "feedback for this prediction was already recorded")
            )
        except StoreError:
            return with_cors(
                request, _error(500, "storage_failure", "feedback could not be recorded")
            )
        return with_cors(
            request, JSONResponse({"id": body["id"], "status": "recorded"}, status_code=200)
        )

    # Browsers send an OPTIONS preflight before cross-origin JSON POSTs;
    # preflights never touch the limiter.
    async def handle_preflight(request: Request) -> Response:
        response = Response(status_code=204)
        origin = allowed_origin(request)
        if origin is not None:
            response.headers["Access-Control-Allow-Origin"] = origin
        response.headers["Access-Control-Allow-Methods"] = "POST, OPTIONS"
        response.headers["Access-Control-Allow-Headers"] = "Content-Type"
        return response

    app.add_api_route("/predict", handle_preflight, methods=["OPTIONS"])
    app.add_api_route("/feedback", handle_preflight, methods=["OPTIONS"])

    @app.get("/health")
    async def handle_health(request: Request) -> Response:
        return with_cors(
            request,
            JSONResponse({"status": "ok", "model_loaded": model is not None}, status_code=200),
        )

    return app
