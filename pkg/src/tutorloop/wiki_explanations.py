"""Encyclopedia-style explanations from an offline article corpus.

Articles live in a JSONL file (one ``{"title", "text", "links", "tags"}``
object per line). The first sentence of an article is the extracted
definitional explanation; remaining sentences that mention a keyword become
generated candidates, with a leading ``It``/``This``/``They`` replaced by the
keyword so the sentence stands alone. A small decision tree scores candidate
quality over five shallow features; ties resolve in favour of the extracted
first sentence.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

from .errors import SchemaError, TutorError
from .feedback_models.features import FeatureVector, ModelTier, TrainingExample
from .feedback_models.smote import smote_oversample
from .feedback_models.trees import DecisionTree, train_decision_tree
from .text_analysis import (
    PUNCT,
    CorpusStats,
    NGramModel,
    cosine_similarity,
    extract_noun_phrases,
    split_sentences,
    stem,
    tfidf_vector,
    tokenize,
)

logger = logging.getLogger(__name__)

LEADING_PRONOUNS = {"it", "this", "they"}
QUALITY_THRESHOLD = 0.5
EXPLANATION_FEATURE_NAMES = (
    "length",
    "keyword_cosine",
    "lm_score",
    "capital_density",
    "keyword_position",
)


class ExplanationKind(str, Enum):
    EXTRACTED = "Extracted"
    GENERATED = "Generated"


@dataclass(frozen=True)
class WikiArticle:
    title: str
    sentences: tuple[str, ...]
    outlinks: frozenset[str] = frozenset()
    domain_tags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.sentences:
            raise TutorError(f"article {self.title!r} has no sentences")


@dataclass(frozen=True)
class ExplanationCandidate:
    text: str
    kind: ExplanationKind
    source: tuple[str, tuple[int, int]]
    features: Optional[FeatureVector] = None
    quality: Optional[float] = None


@dataclass
class ArticleIndex:
    articles: dict[str, WikiArticle]
    keyword_to_titles: dict[str, tuple[str, ...]]
    corpus_stats: CorpusStats
    lm: NGramModel
    synonyms: dict[str, tuple[str, ...]] = field(default_factory=dict)
    skipped: int = 0

    def lookup(self, keyword: str) -> tuple[WikiArticle, ...]:
        key = keyword.strip().lower()
        titles = self.keyword_to_titles.get(key)
        if titles is None:
            for alias in self.synonyms.get(key, ()):
                titles = self.keyword_to_titles.get(alias.lower())
                if titles:
                    break
        if not titles:
            return ()
        return tuple(self.articles[t] for t in titles)


def _normalized_tokens(text: str) -> list[str]:
    return [t.normalized for t in tokenize(text) if t.tag != PUNCT]


def _index_keywords(article: WikiArticle, first_paragraph: str) -> set[str]:
    keywords = {article.title.lower()}
    keywords.update(_normalized_tokens(article.title))
    for np in extract_noun_phrases(tokenize(first_paragraph)):
        keywords.add(np.keyword)
    return {k for k in keywords if k}


def load_synonyms(path: str | Path) -> dict[str, tuple[str, ...]]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise SchemaError("synonym table must be a JSON object")
    return {
        str(term).lower(): tuple(str(s) for s in alts)
        for term, alts in raw.items()
    }


def ingest_corpus(
    path: str | Path, synonyms_path: Optional[str | Path] = None
) -> ArticleIndex:
    articles: dict[str, WikiArticle] = {}
    keyword_map: dict[str, list[str]] = {}
    skipped = 0
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(
                    f"{path}: malformed JSON on line {line_no}: {exc.msg}"
                )
            if not isinstance(record, dict) or "title" not in record:
                raise SchemaError(
                    f"{path}: line {line_no} is not an article object"
                )
            title = str(record["title"])
            text = str(record.get("text", "")).strip()
            if not text:
                skipped += 1
                logger.warning("skipping empty article %r (line %d)", title, line_no)
                continue
            first_paragraph = text.split("\n\n")[0]
            sentences = tuple(
                s for part in text.split("\n\n") for s in split_sentences(part)
            )
            article = WikiArticle(
                title=title,
                sentences=sentences,
                outlinks=frozenset(str(x) for x in record.get("links", [])),
                domain_tags=tuple(str(x) for x in record.get("tags", [])),
            )
            if title in articles:
                raise SchemaError(
                    f"{path}: duplicate article title {title!r} on line {line_no}"
                )
            articles[title] = article
            for keyword in _index_keywords(article, first_paragraph):
                keyword_map.setdefault(keyword, []).append(title)
    if not articles:
        raise SchemaError(f"{path}: corpus contains no usable articles")
    sentences = [
        sentence
        for article in articles.values()
        for sentence in article.sentences
        if sentence.strip()
    ]
    stats = CorpusStats.from_documents(sentences)
    lm = NGramModel.train_on_texts(sentences, order=2, k=0.1)
    synonyms = load_synonyms(synonyms_path) if synonyms_path else {}
    return ArticleIndex(
        articles=articles,
        keyword_to_titles={
            k: tuple(sorted(set(v), key=v.index)) for k, v in keyword_map.items()
        },
        corpus_stats=stats,
        lm=lm,
        synonyms=synonyms,
        skipped=skipped,
    )


def extract_explanation(article: WikiArticle) -> ExplanationCandidate:
    return ExplanationCandidate(
        text=article.sentences[0],
        kind=ExplanationKind.EXTRACTED,
        source=(article.title, (0, 0)),
    )


def _mentions_keyword(sentence: str, keyword: str) -> bool:
    kw_stems = [stem(w) for w in keyword.lower().split()]
    token_stems = [stem(t) for t in _normalized_tokens(sentence)]
    if not kw_stems or len(kw_stems) > len(token_stems):
        return False
    for i in range(len(token_stems) - len(kw_stems) + 1):
        if token_stems[i : i + len(kw_stems)] == kw_stems:
            return True
    return False


def _capitalize(text: str) -> str:
    return text[0].upper() + text[1:] if text else text


def _substitute_leading_pronoun(sentence: str, keyword: str) -> tuple[str, bool]:
    tokens = sentence.split(maxsplit=1)
    if not tokens:
        return sentence, False
    head = tokens[0].rstrip(",")
    if head.lower() in LEADING_PRONOUNS:
        rest = tokens[1] if len(tokens) > 1 else ""
        return (f"{_capitalize(keyword)} {rest}".rstrip(), True)
    return sentence, False


def generate_candidates(
    article: WikiArticle, keyword: str
) -> list[ExplanationCandidate]:
    if len(article.sentences) < 2:
        return []
    candidates: list[ExplanationCandidate] = []
    for i, sentence in enumerate(article.sentences[1:], start=1):
        substituted, was_substituted = _substitute_leading_pronoun(
            sentence, keyword
        )
        if not (
            _mentions_keyword(sentence, keyword)
            or (was_substituted and _mentions_keyword(substituted, keyword))
        ):
            continue
        candidates.append(
            ExplanationCandidate(
                text=substituted,
                kind=ExplanationKind.GENERATED,
                source=(article.title, (i, i)),
            )
        )
        if i + 1 < len(article.sentences):
            candidates.append(
                ExplanationCandidate(
                    text=f"{substituted} {article.sentences[i + 1]}",
                    kind=ExplanationKind.GENERATED,
                    source=(article.title, (i, i + 1)),
                )
            )
    return candidates


def _keyword_position(keyword: str, tokens: Sequence[str]) -> float:
    kw_stems = [stem(w) for w in keyword.lower().split()]
    stems = [stem(t) for t in tokens]
    if not kw_stems or not stems:
        return 1.0
    for i in range(len(stems) - len(kw_stems) + 1):
        if stems[i : i + len(kw_stems)] == kw_stems:
            return i / len(stems)
    return 1.0


def explanation_features(
    candidate: ExplanationCandidate, keyword: str, index: ArticleIndex
) -> FeatureVector:
    raw_tokens = [t for t in tokenize(candidate.text) if t.tag != PUNCT]
    tokens = [t.normalized for t in raw_tokens]
    vec = tfidf_vector(candidate.text, index.corpus_stats)
    kw_vec = tfidf_vector(keyword, index.corpus_stats)
    capitals = sum(
        1
        for t in raw_tokens[1:]
        if t.surface[:1].isupper() and t.surface[1:].islower()
    )
    return FeatureVector(
        names=EXPLANATION_FEATURE_NAMES,
        values=(
            float(len(tokens)),
            cosine_similarity(vec, kw_vec),
            index.lm.score(tokens) if tokens else 0.0,
            capitals / len(raw_tokens) if raw_tokens else 0.0,
            _keyword_position(keyword, tokens),
        ),
        tier=ModelTier.BASELINE,
    )


def build_training_set(index: ArticleIndex) -> list[TrainingExample]:
    """First sentences are positives; pronoun-substituted body sentences are
    negatives. Articles supply their own title as the keyword."""
    examples: list[TrainingExample] = []
    for article in index.articles.values():
        keyword = article.title
        extracted = extract_explanation(article)
        examples.append(
            TrainingExample(
                features=explanation_features(extracted, keyword, index),
                label=1,
            )
        )
        for candidate in generate_candidates(article, keyword):
            lo, hi = candidate.source[1]
            if lo != hi:
                continue
            original = article.sentences[lo]
            if original == candidate.text:
                continue  # not substituted; leave unlabeled
            examples.append(
                TrainingExample(
                    features=explanation_features(candidate, keyword, index),
                    label=0,
                )
            )
    return examples


def train_quality_model(index: ArticleIndex, seed: int = 0) -> DecisionTree:
    examples = build_training_set(index)
    positives = sum(1 for e in examples if e.label == 1)
    negatives = len(examples) - positives
    if positives >= 2 and negatives >= 2 and positives != negatives:
        examples = smote_oversample(examples, k_neighbors=3, seed=seed)
    return train_decision_tree(examples, max_depth=4, min_samples_leaf=2, seed=seed)


def score_and_select(
    keyword: str, index: ArticleIndex, model: DecisionTree
) -> Optional[ExplanationCandidate]:
    articles = index.lookup(keyword)
    if not articles:
        return None
    scored: list[ExplanationCandidate] = []
    for article in articles:
        pool = [extract_explanation(article)]
        pool.extend(generate_candidates(article, keyword))
        for candidate in pool:
            fv = explanation_features(candidate, keyword, index)
            if len(fv) != model.n_features:
                raise TutorError(
                    "quality model feature schema does not match "
                    f"({model.n_features} != {len(fv)})"
                )
            quality = model.predict_proba(fv.as_array())
            scored.append(replace(candidate, features=fv, quality=quality))
    viable = [c for c in scored if c.quality >= QUALITY_THRESHOLD]
    if not viable:
        return None
    viable.sort(
        key=lambda c: (
            -c.quality,
            0 if c.kind is ExplanationKind.EXTRACTED else 1,
            c.text,
        )
    )
    return viable[0]
