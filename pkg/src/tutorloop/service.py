"""HTTP service exposing the tutoring engine.

The service is a thin JSON veneer: every route delegates to one engine
call, state transitions mirror the session state machine exactly, and all
writes flow through the engine's write-ahead log, so restarting the
process against the same log reconstructs identical session states.

Error mapping: unknown session or intervention → 404; an event that is
not legal in the session's current phase → 409 with a body naming the
state and the event; malformed request bodies → 422 (handled by the
framework's schema validation).
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, model_validator

from .analytics import AttemptFilter, build_report
from .engine import TutorEngine, TurnOutcome, UnknownSessionError
from .errors import IllegalTransition, SchemaError, TutorError
from .feedback_models import FeatureExtractor, ModelTier
from .storage import load_exercises, load_model
from .tutoring_core import Exercise, Intervention, Mode, ModelBundle, SessionState
from .wiki_explanations import ingest_corpus, train_quality_model

__all__ = [
    "ServiceConfig",
    "build_engine",
    "create_app",
    "load_config",
]

CONFIG_ENV_VAR = "TUTOR_CONFIG"


@dataclass(frozen=True)
class ServiceConfig:
    """Startup configuration, loaded from a JSON file.

    ``model_paths`` maps tier names to ranking-model artifacts; tiers may
    be omitted (the engine then serves the remaining intervention types).
    The optional wiki fields enable passage-based explanations.
    """

    bank_path: Path
    log_path: Path
    bind_host: str = "127.0.0.1"
    bind_port: int = 8000
    model_paths: dict[str, Path] = field(default_factory=dict)
    mode: Mode = Mode.EXPERIMENT
    master_seed: int = 0
    wiki_corpus_path: Optional[Path] = None
    wiki_synonyms_path: Optional[Path] = None

    def __post_init__(self) -> None:
        for tier_name in self.model_paths:
            try:
                ModelTier(tier_name)
            except ValueError:
                raise TutorError(
                    f"unknown model tier {tier_name!r} in config"
                ) from None
        if self.mode not in (Mode.EXPERIMENT, Mode.PRODUCTION):
            raise TutorError(f"unknown mode {self.mode!r}")
        missing = [
            str(p)
            for p in self._input_paths()
            if not Path(p).exists()
        ]
        if missing:
            raise TutorError(
                "config references missing paths: " + ", ".join(missing)
            )
        log_parent = Path(self.log_path).parent
        if not log_parent.exists():
            raise TutorError(
                f"log directory does not exist: {log_parent}"
            )

    def _input_paths(self) -> list[Path]:
        paths = [self.bank_path, *self.model_paths.values()]
        if self.wiki_corpus_path is not None:
            paths.append(self.wiki_corpus_path)
        if self.wiki_synonyms_path is not None:
            paths.append(self.wiki_synonyms_path)
        return paths

    @classmethod
    def from_dict(cls, payload: dict, base_dir: Path) -> "ServiceConfig":
        def resolve(value: Union[str, Path]) -> Path:
            path = Path(value)
            return path if path.is_absolute() else base_dir / path

        known = {
            "bank_path",
            "log_path",
            "bind_host",
            "bind_port",
            "model_paths",
            "mode",
            "master_seed",
            "wiki_corpus_path",
            "wiki_synonyms_path",
        }
        unknown = set(payload) - known
        if unknown:
            raise SchemaError(
                "unknown config keys: " + ", ".join(sorted(unknown))
            )
        for required in ("bank_path", "log_path"):
            if required not in payload:
                raise SchemaError(f"config is missing {required!r}")
        return cls(
            bank_path=resolve(payload["bank_path"]),
            log_path=resolve(payload["log_path"]),
            bind_host=payload.get("bind_host", "127.0.0.1"),
            bind_port=int(payload.get("bind_port", 8000)),
            model_paths={
                tier: resolve(p)
                for tier, p in payload.get("model_paths", {}).items()
            },
            mode=Mode(payload.get("mode", "experiment")),
            master_seed=int(payload.get("master_seed", 0)),
            wiki_corpus_path=(
                resolve(payload["wiki_corpus_path"])
                if payload.get("wiki_corpus_path")
                else None
            ),
            wiki_synonyms_path=(
                resolve(payload["wiki_synonyms_path"])
                if payload.get("wiki_synonyms_path")
                else None
            ),
        )


def load_config(path: Optional[Union[str, Path]] = None) -> ServiceConfig:
    """Read the config file; the TUTOR_CONFIG env var overrides the path."""
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        path = env_path
    if path is None:
        raise TutorError(
            f"no config path given and {CONFIG_ENV_VAR} is not set"
        )
    path = Path(path)
    if not path.exists():
        raise TutorError(f"config file not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise SchemaError(f"{path}: config must be a JSON object")
    return ServiceConfig.from_dict(payload, base_dir=path.parent)


def build_engine(config: ServiceConfig) -> TutorEngine:
    bank = load_exercises(config.bank_path)
    extractor = FeatureExtractor.from_exercises(bank)
    tier_models = {}
    for tier_name, model_path in config.model_paths.items():
        artifact = load_model(model_path)
        tier_models[ModelTier(tier_name)] = artifact.model
    wiki_index = None
    wiki_model = None
    if config.wiki_corpus_path is not None:
        wiki_index = ingest_corpus(
            config.wiki_corpus_path, config.wiki_synonyms_path
        )
        wiki_model = train_quality_model(wiki_index, seed=config.master_seed)
    bundle = ModelBundle(
        extractor=extractor,
        tier_models=tier_models,
        wiki_index=wiki_index,
        wiki_model=wiki_model,
    )
    return TutorEngine(
        bank,
        bundle,
        mode=config.mode,
        master_seed=config.master_seed,
        log_path=config.log_path,
    )


# ---------------------------------------------------------------------------
# Request/response schemas


class SessionBody(BaseModel):
    student_id: str

    @model_validator(mode="after")
    def _non_empty(self) -> "SessionBody":
        if not self.student_id.strip():
            raise ValueError("student_id must be non-empty")
        return self


class AttemptBody(BaseModel):
    text: Optional[str] = None
    latex: Optional[str] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "AttemptBody":
        if (self.text is None) == (self.latex is None):
            raise ValueError("provide exactly one of 'text' or 'latex'")
        return self

    @property
    def attempt(self) -> str:
        return self.text if self.text is not None else self.latex


class RatingBody(BaseModel):
    helpful: bool


def _exercise_payload(exercise: Exercise) -> dict:
    return {
        "id": exercise.id,
        "question": exercise.question,
        "math_entry": exercise.math_expectation is not None,
        "tags": list(exercise.tags),
        "difficulty": exercise.difficulty,
    }


def _intervention_payload(
    intervention: Intervention, intervention_id: str
) -> dict:
    return {
        "id": intervention_id,
        "type": intervention.type.value,
        "tier": intervention.tier.value if intervention.tier else None,
        "content_id": intervention.content_id,
        "text": intervention.text,
        "score": intervention.score,
        "extra": dict(intervention.extra),
    }


def _state_name(state: SessionState) -> str:
    return state.phase.value


def _outcome_payload(outcome: TurnOutcome) -> dict:
    payload: dict = {
        "session_id": outcome.session_id,
        "state": _state_name(outcome.state),
        "attempt_index": outcome.state.attempt_index,
    }
    if outcome.grade is not None:
        payload["grade"] = outcome.grade.grade.value
        payload["score"] = outcome.grade.score
    if outcome.intervention is not None:
        payload["intervention"] = _intervention_payload(
            outcome.intervention, outcome.intervention_id
        )
    return payload


# ---------------------------------------------------------------------------
# Application


def create_app(engine: TutorEngine) -> FastAPI:
    app = FastAPI(title="tutorloop", docs_url=None, redoc_url=None)
    app.state.engine = engine

    @app.exception_handler(UnknownSessionError)
    async def _unknown(request: Request, exc: UnknownSessionError):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(IllegalTransition)
    async def _illegal(request: Request, exc: IllegalTransition):
        return JSONResponse(
            status_code=409,
            content={
                "detail": str(exc),
                "state": exc.state,
                "event": exc.event,
            },
        )

    @app.exception_handler(TutorError)
    async def _domain(request: Request, exc: TutorError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.post("/sessions")
    def open_session(body: SessionBody) -> dict:
        session_id, exercise = engine.open_session(body.student_id)
        return {
            "session_id": session_id,
            "state": "AwaitingAttempt",
            "exercise": _exercise_payload(exercise),
        }

    @app.post("/sessions/{session_id}/attempts")
    def submit_attempt(session_id: str, body: AttemptBody) -> dict:
        return _outcome_payload(engine.attempt(session_id, body.attempt))

    @app.post("/sessions/{session_id}/help")
    def request_help(session_id: str) -> dict:
        return _outcome_payload(engine.request_help(session_id))

    @app.post("/sessions/{session_id}/skip")
    def skip(session_id: str) -> dict:
        return _outcome_payload(engine.skip(session_id))

    @app.post("/interventions/{intervention_id}/rating")
    def rate(intervention_id: str, body: RatingBody) -> dict:
        engine.rate(intervention_id, body.helpful)
        return {}

    @app.get("/analytics/learning-gains")
    def learning_gains(
        filter: Optional[str] = Query(default=None),
    ) -> dict:
        wanted: Optional[AttemptFilter] = None
        if filter is not None:
            try:
                wanted = AttemptFilter(filter)
            except ValueError:
                raise TutorError(
                    f"unknown filter {filter!r}; expected one of "
                    + ", ".join(f.value for f in AttemptFilter)
                ) from None
        report = build_report(engine.records())
        payload = report.to_dict()
        if wanted is not None:
            payload["cells"] = [
                cell
                for cell in payload["cells"]
                if cell["filter"] == wanted.value
            ]
        return payload

    return app
