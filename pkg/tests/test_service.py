"""HTTP service: endpoint contracts, error mapping, config loading."""
from __future__ import annotations

import json
import warnings
from datetime import datetime, timezone

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore", DeprecationWarning)
    from fastapi.testclient import TestClient

from tutorloop.engine import TutorEngine, calibrated_bundle, default_bank
from tutorloop.errors import SchemaError, TutorError
from tutorloop.feedback_models import ModelTier, train_decision_tree
from tutorloop.feedback_models import FeatureVector, TrainingExample
from tutorloop.service import (
    CONFIG_ENV_VAR,
    ServiceConfig,
    build_engine,
    create_app,
    load_config,
)
from tutorloop.storage import ModelArtifact, feature_schema_hash, save_model
from tutorloop.tutoring_core import Mode

from tests.test_tutoring_core import make_bundle, math_exercise, text_exercise

RIGHT = "A model is underfitting when it has a high bias."


@pytest.fixture
def client(tmp_path):
    engine = TutorEngine(
        [text_exercise(), math_exercise()],
        make_bundle(baseline=0.3, shallow=0.5, deep=0.7),
        mode=Mode.EXPERIMENT,
        master_seed=7,
        log_path=tmp_path / "service.jsonl",
    )
    with TestClient(create_app(engine)) as test_client:
        yield test_client
    engine.close()


def open_session(client, student="alice"):
    response = client.post("/sessions", json={"student_id": student})
    assert response.status_code == 200
    return response.json()


class TestSessionFlow:
    def test_open_session_payload(self, client):
        payload = open_session(client)
        assert payload["session_id"] == "alice-s1"
        assert payload["state"] == "AwaitingAttempt"
        exercise = payload["exercise"]
        assert exercise["id"] == "ml-001"
        assert exercise["question"]
        assert exercise["math_entry"] is False
        assert "expectations" not in exercise

    def test_correct_attempt_solves(self, client):
        session = open_session(client)["session_id"]
        response = client.post(
            f"/sessions/{session}/attempts", json={"text": RIGHT}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["grade"] == "Correct"
        assert body["state"] == "Solved"
        assert "intervention" not in body

    def test_incorrect_attempt_carries_intervention(self, client):
        session = open_session(client)["session_id"]
        response = client.post(
            f"/sessions/{session}/attempts", json={"text": "no idea"}
        )
        body = response.json()
        assert body["grade"] == "Incorrect"
        assert body["state"] == "InterventionShown"
        intervention = body["intervention"]
        assert intervention["id"] == f"{session}-t1"
        assert intervention["type"] in {
            "TextHint",
            "WikiExplanation",
            "MathGapHint",
            "MathDiffHint",
        }
        assert intervention["text"]
        assert 0.0 <= intervention["score"] <= 1.0

    def test_second_incorrect_attempt_still_intervenes(self, client):
        session = open_session(client)["session_id"]
        client.post(f"/sessions/{session}/attempts", json={"text": "nope"})
        response = client.post(
            f"/sessions/{session}/attempts", json={"text": "still nope"}
        )
        body = response.json()
        assert body["attempt_index"] == 3
        assert body["intervention"]["id"] == f"{session}-t2"

    def test_latex_attempt_routes_to_math(self, client):
        session = open_session(client, "bob")["session_id"]
        session2 = open_session(client, "bob")["session_id"]
        response = client.post(
            f"/sessions/{session2}/attempts",
            json={"latex": r"y = b + m \cdot x"},
        )
        body = response.json()
        assert body["grade"] == "Correct"
        assert body["state"] == "Solved"

    def test_help_returns_intervention(self, client):
        session = open_session(client)["session_id"]
        response = client.post(f"/sessions/{session}/help")
        body = response.json()
        assert body["state"] == "InterventionShown"
        assert body["intervention"]["text"]

    def test_skip_terminal(self, client):
        session = open_session(client)["session_id"]
        response = client.post(f"/sessions/{session}/skip")
        assert response.json()["state"] == "Skipped"


class TestErrorMapping:
    def test_unknown_session_404(self, client):
        response = client.post("/sessions/ghost/attempts", json={"text": "x"})
        assert response.status_code == 404
        assert "ghost" in response.json()["detail"]

    def test_post_to_solved_session_409_names_state_and_event(self, client):
        session = open_session(client)["session_id"]
        client.post(f"/sessions/{session}/attempts", json={"text": RIGHT})
        response = client.post(
            f"/sessions/{session}/attempts", json={"text": "more"}
        )
        assert response.status_code == 409
        body = response.json()
        assert body["state"] == "Solved"
        assert body["event"] == "attempt"
        assert "Solved" in body["detail"] and "attempt" in body["detail"]

    def test_help_while_intervention_shown_409(self, client):
        session = open_session(client)["session_id"]
        client.post(f"/sessions/{session}/attempts", json={"text": "wrong"})
        response = client.post(f"/sessions/{session}/help")
        assert response.status_code == 409
        assert response.json()["state"] == "InterventionShown"
        assert response.json()["event"] == "help"

    def test_schema_violations_422(self, client):
        session = open_session(client)["session_id"]
        no_body = client.post(f"/sessions/{session}/attempts", json={})
        both = client.post(
            f"/sessions/{session}/attempts",
            json={"text": "a", "latex": "b"},
        )
        missing_student = client.post("/sessions", json={})
        blank_student = client.post("/sessions", json={"student_id": "  "})
        bad_rating = client.post(
            "/interventions/x-t1/rating", json={"helpful": "very"}
        )
        for response in (no_body, both, missing_student, blank_student, bad_rating):
            assert response.status_code == 422

    def test_empty_attempt_is_domain_error(self, client):
        session = open_session(client)["session_id"]
        response = client.post(
            f"/sessions/{session}/attempts", json={"text": "   "}
        )
        assert response.status_code == 400
        assert "empty" in response.json()["detail"]


class TestRatings:
    def test_rating_posts_once(self, client):
        session = open_session(client)["session_id"]
        body = client.post(
            f"/sessions/{session}/attempts", json={"text": "??"}
        ).json()
        intervention_id = body["intervention"]["id"]
        first = client.post(
            f"/interventions/{intervention_id}/rating", json={"helpful": True}
        )
        assert first.status_code == 200
        assert first.json() == {}
        second = client.post(
            f"/interventions/{intervention_id}/rating", json={"helpful": False}
        )
        assert second.status_code == 400
        assert "already rated" in second.json()["detail"]

    def test_rating_unknown_intervention_404(self, client):
        response = client.post(
            "/interventions/ghost-t9/rating", json={"helpful": True}
        )
        assert response.status_code == 404


class TestAnalyticsEndpoint:
    def seed_trials(self, client):
        for student in ("s1", "s2", "s3", "s4"):
            session = open_session(client, student)["session_id"]
            client.post(f"/sessions/{session}/attempts", json={"text": "??"})
            client.post(f"/sessions/{session}/attempts", json={"text": RIGHT})

    def test_report_shape(self, client):
        self.seed_trials(client)
        response = client.get("/analytics/learning-gains")
        assert response.status_code == 200
        body = response.json()
        assert {"cells", "comparisons", "level"} <= set(body)
        filters = {cell["filter"] for cell in body["cells"]}
        assert filters <= {"AllAttempts", "BeforeSecondAttempt"}

    def test_filter_param(self, client):
        self.seed_trials(client)
        response = client.get(
            "/analytics/learning-gains", params={"filter": "AllAttempts"}
        )
        assert response.status_code == 200
        assert all(
            cell["filter"] == "AllAttempts"
            for cell in response.json()["cells"]
        )

    def test_unknown_filter_400(self, client):
        response = client.get(
            "/analytics/learning-gains", params={"filter": "Sometimes"}
        )
        assert response.status_code == 400
        assert "Sometimes" in response.json()["detail"]


# ---------------------------------------------------------------------------
# Config loading and engine assembly


def write_config(tmp_path, **overrides):
    bank_src = default_bank()
    from tutorloop.storage import save_exercises

    bank_path = tmp_path / "bank.jsonl"
    if not bank_path.exists():
        save_exercises(bank_path, bank_src)
    payload = {
        "bank_path": "bank.jsonl",
        "log_path": "service-log.jsonl",
        "mode": "experiment",
        "master_seed": 9,
    }
    payload.update(overrides)
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(payload))
    return config_path


def tiny_artifact(tier: ModelTier) -> ModelArtifact:
    from tutorloop.feedback_models import feature_names

    names = feature_names(tier)
    examples = [
        TrainingExample(
            features=FeatureVector(
                names=names,
                values=tuple(float(i % 2) for _ in names),
                tier=tier,
            ),
            label=i % 2,
        )
        for i in range(8)
    ]
    model = train_decision_tree(examples, max_depth=2)
    return ModelArtifact(
        tier=tier,
        feature_names=names,
        model=model,
        seed=0,
        data_hash=feature_schema_hash(names),
        created=datetime.now(timezone.utc).strftime("%Y-%m-%d"),
    )


class TestConfig:
    def test_load_and_build(self, tmp_path):
        config_path = write_config(tmp_path)
        config = load_config(config_path)
        assert config.mode is Mode.EXPERIMENT
        assert config.master_seed == 9
        assert config.bank_path == tmp_path / "bank.jsonl"
        engine = build_engine(config)
        try:
            sid, exercise = engine.open_session("x")
            assert exercise.id == "ml-001"
        finally:
            engine.close()

    def test_env_var_overrides_path(self, tmp_path, monkeypatch):
        config_path = write_config(tmp_path)
        monkeypatch.setenv(CONFIG_ENV_VAR, str(config_path))
        config = load_config(tmp_path / "does-not-exist.json")
        assert config.bank_path == tmp_path / "bank.jsonl"

    def test_no_path_and_no_env(self, monkeypatch):
        monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
        with pytest.raises(TutorError, match=CONFIG_ENV_VAR):
            load_config(None)

    def test_missing_referenced_path_rejected(self, tmp_path):
        config_path = write_config(tmp_path, bank_path="nope.jsonl")
        with pytest.raises(TutorError, match="missing paths"):
            load_config(config_path)

    def test_unknown_key_rejected(self, tmp_path):
        config_path = write_config(tmp_path, database_url="postgres://x")
        with pytest.raises(SchemaError, match="database_url"):
            load_config(config_path)

    def test_missing_required_key_rejected(self, tmp_path):
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps({"log_path": "log.jsonl"}))
        with pytest.raises(SchemaError, match="bank_path"):
            load_config(config_path)

    def test_invalid_json_rejected(self, tmp_path):
        config_path = tmp_path / "config.json"
        config_path.write_text("{nope")
        with pytest.raises(SchemaError, match="invalid JSON"):
            load_config(config_path)

    def test_unknown_tier_rejected(self, tmp_path):
        artifact_path = tmp_path / "m.json"
        save_model(artifact_path, tiny_artifact(ModelTier.DEEP))
        config_path = write_config(
            tmp_path, model_paths={"galactic": "m.json"}
        )
        with pytest.raises(TutorError, match="galactic"):
            load_config(config_path)

    def test_model_artifacts_are_loaded(self, tmp_path):
        artifact_path = tmp_path / "deep.json"
        save_model(artifact_path, tiny_artifact(ModelTier.DEEP))
        config_path = write_config(
            tmp_path, model_paths={"deep": "deep.json"}
        )
        engine = build_engine(load_config(config_path))
        try:
            assert set(engine.models.tier_models) == {ModelTier.DEEP}
        finally:
            engine.close()

    def test_wiki_corpus_enables_explanations(self, tmp_path):
        from tests.test_wiki_explanations import write_corpus

        corpus = write_corpus(tmp_path / "corpus.jsonl")
        config_path = write_config(
            tmp_path, wiki_corpus_path=corpus.name
        )
        engine = build_engine(load_config(config_path))
        try:
            assert engine.models.wiki_index is not None
            assert engine.models.wiki_model is not None
        finally:
            engine.close()

    def test_restart_through_service_layer(self, tmp_path):
        config_path = write_config(tmp_path)
        config = load_config(config_path)
        engine = build_engine(config)
        with TestClient(create_app(engine)) as client:
            session = open_session(client)["session_id"]
            client.post(f"/sessions/{session}/attempts", json={"text": "??"})
        states = engine.session_states()
        engine.close()
        engine2 = build_engine(config)
        try:
            assert engine2.session_states() == states
        finally:
            engine2.close()
