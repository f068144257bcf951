"""Command-line frontend.

Each command is a thin wrapper over one module operation. Exit codes: 0 on
success, 1 on domain errors (bad data, unknown ids, schema violations),
2 on usage errors (unknown flags, out-of-range values). ``--json`` on the
top-level group switches all command output to JSON on stdout.
"""
from __future__ import annotations

import functools
import json as json_lib
import sys
from datetime import datetime, timezone
from typing import Optional

import click

from .analytics import build_report
from .engine import (
    build_training_examples,
    calibrated_bundle,
    default_bank,
)
from .errors import TutorError
from .feedback_models import (
    ModelTier,
    cross_validate,
    smote_oversample,
    train_decision_tree,
    train_random_forest,
)
from .math_hints import check_equivalence
from .storage import (
    ModelArtifact,
    feature_schema_hash,
    load_exercises,
    load_log,
    load_model,
    save_model,
)
from .tutoring_core import (
    EventKind,
    InteractionTurn,
    MathExpectation,
    Mode,
    ModelBundle,
    StudentProfile,
    grade_attempt,
    parse_math_attempt,
    select_intervention,
)
from .wiki_explanations import ingest_corpus


def domain_errors(fn):
    """Render TutorError subclasses as exit-code-1 failures."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except TutorError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(1)

    return wrapper


def emit(ctx: click.Context, payload: dict, text: str) -> None:
    if ctx.obj.get("json"):
        click.echo(json_lib.dumps(payload, indent=2, sort_keys=True))
    else:
        click.echo(text)


def _load_bank(path: Optional[str]):
    if path is None:
        return default_bank()
    return load_exercises(path)


TIER_CHOICES = click.Choice([t.value for t in ModelTier])


@click.group()
@click.option(
    "--json", "as_json", is_flag=True, help="Emit JSON instead of text."
)
@click.pass_context
def main(ctx: click.Context, as_json: bool) -> None:
    """Inner-loop tutoring toolkit: grading, hints, simulation, serving."""
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json


@main.command("ingest-wiki")
@click.option(
    "--corpus",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Article corpus (JSONL).",
)
@click.option(
    "--synonyms",
    type=click.Path(exists=True, dir_okay=False),
    help="Optional keyword synonym table (JSON).",
)
@click.pass_context
@domain_errors
def ingest_wiki(ctx, corpus: str, synonyms: Optional[str]) -> None:
    """Validate and index an article corpus."""
    index = ingest_corpus(corpus, synonyms)
    payload = {
        "articles": len(index.articles),
        "keywords": len(index.keyword_to_titles),
        "skipped_empty": index.skipped,
    }
    emit(
        ctx,
        payload,
        f"indexed {payload['articles']} articles "
        f"({payload['keywords']} keywords, "
        f"{payload['skipped_empty']} empty skipped)",
    )


def _examples_from_log(log_path: str, bank_path: Optional[str], tier):
    bank = _load_bank(bank_path)
    records = load_log(log_path)
    from .feedback_models import FeatureExtractor

    extractor = FeatureExtractor.from_exercises(bank)
    return build_training_examples(records, bank, extractor, tier)


@main.command()
@click.option("--tier", required=True, type=TIER_CHOICES)
@click.option(
    "--log",
    "log_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Interaction log to learn from.",
)
@click.option("--bank", "bank_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--seed", default=0, show_default=True)
@click.option("--trees", default=100, show_default=True)
@click.option("--max-depth", default=8, show_default=True)
@click.pass_context
@domain_errors
def train(ctx, tier, log_path, bank_path, out, seed, trees, max_depth) -> None:
    """Train a hint-ranking forest for one tier from logged interactions."""
    tier = ModelTier(tier)
    examples = _examples_from_log(log_path, bank_path, tier)
    if not examples:
        raise TutorError(f"log contains no {tier.value}-tier hint trials")
    positives = sum(e.label for e in examples)
    negatives = len(examples) - positives
    balanced = examples
    if positives >= 2 and negatives >= 2 and positives != negatives:
        balanced = smote_oversample(examples, seed=seed)
    model = train_random_forest(
        balanced, n_trees=trees, max_depth=max_depth, seed=seed
    )
    names = examples[0].features.names
    artifact = ModelArtifact(
        tier=tier,
        feature_names=tuple(names),
        model=model,
        seed=seed,
        data_hash=feature_schema_hash(names),
        created=datetime.now(timezone.utc).strftime("%Y-%m-%d"),
    )
    save_model(out, artifact)
    payload = {
        "tier": tier.value,
        "examples": len(examples),
        "positives": positives,
        "negatives": negatives,
        "balanced_size": len(balanced),
        "trees": trees,
        "out": str(out),
    }
    emit(
        ctx,
        payload,
        f"trained {tier.value} forest on {len(examples)} trials "
        f"({positives} successes) -> {out}",
    )


@main.command()
@click.option("--folds", default=50, show_default=True, type=click.IntRange(min=2))
@click.option("--tier", required=True, type=TIER_CHOICES)
@click.option(
    "--log",
    "log_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@click.option("--bank", "bank_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", default=0, show_default=True)
@click.option(
    "--limit",
    type=click.IntRange(min=1),
    help="Truncate the example set to its first N entries.",
)
@click.pass_context
@domain_errors
def cv(ctx, folds, tier, log_path, bank_path, seed, limit) -> None:
    """Cross-validate the ranking model on logged hint trials."""
    tier = ModelTier(tier)
    examples = _examples_from_log(log_path, bank_path, tier)
    if limit is not None:
        examples = examples[:limit]
    if len(examples) < folds:
        raise TutorError(
            f"{len(examples)} examples cannot fill {folds} folds"
        )
    report = cross_validate(
        examples,
        folds,
        lambda ex: train_decision_tree(ex, max_depth=6, seed=seed),
        seed=seed,
    )
    payload = {
        "tier": tier.value,
        "examples": len(examples),
        "folds": [
            {
                "fold": f.fold,
                "n_test": f.n_test,
                "accuracy": f.accuracy,
                "f1": f.f1,
            }
            for f in report.folds
        ],
        "mean_accuracy": report.mean_accuracy,
        "accuracy_ci": list(report.accuracy_ci),
        "mean_f1": report.mean_f1,
        "f1_ci": list(report.f1_ci),
    }
    lines = [
        f"{folds}-fold cross-validation, {tier.value} tier, "
        f"{len(examples)} examples"
    ]
    for f in report.folds:
        lines.append(
            f"  fold {f.fold:>3}: n={f.n_test:>3}  "
            f"accuracy={f.accuracy:.3f}  f1={f.f1:.3f}"
        )
    lines.append(
        f"accuracy {report.mean_accuracy:.4f} "
        f"[{report.accuracy_ci[0]:.4f}, {report.accuracy_ci[1]:.4f}]"
    )
    lines.append(
        f"f1       {report.mean_f1:.4f} "
        f"[{report.f1_ci[0]:.4f}, {report.f1_ci[1]:.4f}]"
    )
    emit(ctx, payload, "\n".join(lines))


@main.command()
@click.option("--exercise-id", required=True)
@click.option("--bank", "bank_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--model",
    "model_paths",
    multiple=True,
    metavar="TIER=PATH",
    help="Trained ranking artifact per tier; defaults to calibrated demo models.",
)
@click.option("--seed", default=0, show_default=True)
@click.pass_context
@domain_errors
def hint(ctx, exercise_id, bank_path, model_paths, seed) -> None:
    """Show the intervention a fresh student would get on this exercise."""
    bank = _load_bank(bank_path)
    by_id = {e.id: e for e in bank}
    exercise = by_id.get(exercise_id)
    if exercise is None:
        raise TutorError(f"unknown exercise {exercise_id!r}")
    bundle = calibrated_bundle(bank)
    if model_paths:
        tier_models = {}
        for spec_item in model_paths:
            tier_name, _, path = spec_item.partition("=")
            if not path:
                raise click.UsageError("--model expects TIER=PATH")
            tier_models[ModelTier(tier_name)] = load_model(path).model
        bundle = ModelBundle(
            extractor=bundle.extractor, tier_models=tier_models
        )
    last_turn = InteractionTurn(
        sequence=1,
        exercise_id=exercise.id,
        attempt_index=1,
        kind=EventKind.HELP,
    )
    intervention = select_intervention(
        StudentProfile(id="cli"),
        last_turn,
        exercise,
        bundle,
        rng_seed=seed,
        mode=Mode.PRODUCTION,
    )
    payload = {
        "exercise_id": exercise.id,
        "type": intervention.type.value,
        "tier": intervention.tier.value if intervention.tier else None,
        "content_id": intervention.content_id,
        "score": intervention.score,
        "text": intervention.text,
    }
    emit(
        ctx,
        payload,
        f"[{payload['type']}] {intervention.text}",
    )


@main.group()
def math() -> None:
    """Math attempt checking utilities."""


@math.command("check")
@click.option("--attempt", required=True)
@click.option("--expected", required=True)
@click.option(
    "--function",
    "functions",
    multiple=True,
    help="Declare a name as a function (repeatable).",
)
@click.option("--seed", default=0, show_default=True)
@click.pass_context
@domain_errors
def math_check(ctx, attempt, expected, functions, seed) -> None:
    """Decide whether two expressions are equivalent."""
    expectation = MathExpectation(latex=expected, functions=tuple(functions))
    attempt_tree, expectation_tree = parse_math_attempt(attempt, expectation)
    verdict = check_equivalence(attempt_tree, expectation_tree, seed=seed)
    payload = {"verdict": verdict.status.value}
    if verdict.diff is not None:
        payload["diff"] = {
            "kind": verdict.diff.kind.value,
            "message": verdict.diff.message(),
        }
    emit(ctx, payload, verdict.status.value)


@main.command()
@click.option("--attempt", required=True)
@click.option("--exercise-id", required=True)
@click.option("--bank", "bank_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", default=0, show_default=True)
@click.pass_context
@domain_errors
def grade(ctx, attempt, exercise_id, bank_path, seed) -> None:
    """Grade one attempt against a bank exercise."""
    bank = _load_bank(bank_path)
    by_id = {e.id: e for e in bank}
    exercise = by_id.get(exercise_id)
    if exercise is None:
        raise TutorError(f"unknown exercise {exercise_id!r}")
    result = grade_attempt(attempt, exercise, seed=seed)
    payload = {
        "grade": result.grade.value,
        "score": result.score,
    }
    if result.verdict is not None:
        payload["verdict"] = result.verdict.status.value
    emit(
        ctx,
        payload,
        f"{result.grade.value} (score {result.score:.3f})",
    )


@main.command()
@click.option(
    "--students", required=True, type=click.IntRange(min=1), metavar="N"
)
@click.option("--seed", default=0, show_default=True)
@click.option(
    "--out",
    default="simulation.jsonl",
    show_default=True,
    type=click.Path(dir_okay=False),
)
@click.option("--bank", "bank_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--responsiveness",
    nargs=2,
    type=float,
    default=(0.0, 0.0),
    show_default=True,
    help="Cohort hint-responsiveness range (low high).",
)
@click.option(
    "--mode",
    type=click.Choice([m.value for m in Mode]),
    default=Mode.EXPERIMENT.value,
    show_default=True,
)
@click.pass_context
@domain_errors
def simulate(ctx, students, seed, out, bank_path, responsiveness, mode) -> None:
    """Run a simulated cohort through every exercise and write the log."""
    from .simulate import simulate as run_simulation

    bank = _load_bank(bank_path)
    result = run_simulation(
        bank,
        calibrated_bundle(bank),
        students,
        seed,
        out_path=out,
        mode=Mode(mode),
        responsiveness_range=tuple(responsiveness),
    )
    solved = sum(1 for s in result.states.values() if s.phase.value == "Solved")
    payload = {
        "students": students,
        "seed": seed,
        "sessions": len(result.states),
        "solved": solved,
        "turns": len(result.records),
        "log": str(out),
    }
    emit(
        ctx,
        payload,
        f"simulated {students} students: {payload['sessions']} sessions, "
        f"{solved} solved, {payload['turns']} turns -> {out}",
    )


@main.command()
@click.option(
    "--log",
    "log_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@click.option(
    "--level",
    default=0.95,
    show_default=True,
    type=click.FloatRange(min=0.5, max=0.999),
    help="Confidence level for interval estimates.",
)
@click.pass_context
@domain_errors
def report(ctx, log_path, level) -> None:
    """Per-tier learning gains (with CIs and pairwise tests) from a log."""
    records = load_log(log_path)
    gains = build_report(records, level=level)
    if ctx.obj.get("json"):
        click.echo(gains.to_json())
    else:
        click.echo(gains.render_text())


@main.command()
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    help="Service config (JSON); TUTOR_CONFIG env var overrides.",
)
@click.pass_context
@domain_errors
def serve(ctx, config_path) -> None:
    """Start the HTTP service."""
    import uvicorn

    from .service import build_engine, create_app, load_config

    config = load_config(config_path)
    engine = build_engine(config)
    app = create_app(engine)
    try:
        uvicorn.run(app, host=config.bind_host, port=config.bind_port)
    finally:
        engine.close()


if __name__ == "__main__":
    main()
