"""Deterministic shallow NLP substrate.

Tokenization with a closed-class lexicon plus suffix heuristics, noun-phrase
chunking, rule-based clause segmentation, TF-IDF, cosine similarity, and an
add-k smoothed n-gram language model. Everything here is a pure function of
its inputs: no model weights, no global state, no randomness.
"""
from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .errors import TutorError

NOUN = "NOUN"
VERB = "VERB"
ADJ = "ADJ"
ADV = "ADV"
DET = "DET"
PRON = "PRON"
PREP = "PREP"
CONJ = "CONJ"
NUM = "NUM"
PUNCT = "PUNCT"
OTHER = "OTHER"

TAGS = {NOUN, VERB, ADJ, ADV, DET, PRON, PREP, CONJ, NUM, PUNCT, OTHER}

# Clause introducers checked by surface form, independent of POS tag.
SUBORDINATORS = {
    "when", "whenever", "if", "because", "since", "while", "unless",
    "although", "though", "whereas", "until", "once", "that", "whereby",
    "where",
}
COORDINATORS = {"and", "but", "or", "nor", "so", "yet"}

# Auxiliaries that force a VERB reading for a following -ing form.
AUXILIARIES = {"is", "are", "was", "were", "be", "been", "being", "am"}

INTERROGATIVE_PRONOUNS = {"what", "who", "whom", "whose", "which", "why", "how", "where", "when"}

_WORD_RE = re.compile(r"[A-Za-z]+(?:['\-][A-Za-z]+)*|\d+(?:\.\d+)?|\S")
_NUMERIC_RE = re.compile(r"\d+(?:\.\d+)?$")
_PUNCT_CHARS = set(".,;:!?()[]{}\"'`…–—-")

_ADJ_SUFFIXES = ("ful", "ous", "ive", "able", "ible", "ical", "ic", "al", "less")
_NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ity", "ance", "ence", "ship", "ism")


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    tag: str
    span: tuple[int, int]

    def __repr__(self) -> str:  # compact, for test diffs
        return f"{self.surface}/{self.tag}"


def _load_default_lexicon() -> dict[str, str]:
    path = resources.files("tutorloop.data").joinpath("lexicon.txt")
    return load_lexicon_text(path.read_text(encoding="utf-8"))


def load_lexicon_text(text: str) -> dict[str, str]:
    """Parse the ``word<TAB>TAG`` lexicon format."""
    lexicon: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or parts[1] not in TAGS:
            raise TutorError(f"bad lexicon entry at line {lineno}: {line!r}")
        lexicon[parts[0].lower()] = parts[1]
    return lexicon


_DEFAULT_LEXICON: dict[str, str] | None = None


def default_lexicon() -> dict[str, str]:
    global _DEFAULT_LEXICON
    if _DEFAULT_LEXICON is None:
        _DEFAULT_LEXICON = _load_default_lexicon()
    return _DEFAULT_LEXICON


def stem(word: str) -> str:
    """Suffix stripping (ing/ed/es/s) used for keyword matching."""
    for suffix in ("ing", "ed", "es", "s"):
        if word.endswith(suffix) and len(word) - len(suffix) >= 2:
            return word[: -len(suffix)]
    return word


def _suffix_tag(word: str, prev_tag_word: str | None) -> str:
    if word.endswith("ly") and len(word) > 3:
        return ADV
    if word.endswith("ing") and len(word) > 4:
        # gerund by default; participle after an auxiliary
        if prev_tag_word in AUXILIARIES:
            return VERB
        return NOUN
    if word.endswith("ed") and len(word) > 3:
        return VERB
    for suffix in _NOUN_SUFFIXES:
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            return NOUN
    for suffix in _ADJ_SUFFIXES:
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            return ADJ
    return NOUN


def tokenize(text: str, lexicon: Mapping[str, str] | None = None) -> list[Token]:
    """Segment ``text`` into tagged tokens with exact character spans."""
    if lexicon is None:
        lexicon = default_lexicon()
    tokens: list[Token] = []
    prev_word: str | None = None
    for match in _WORD_RE.finditer(text):
        surface = match.group(0)
        lowered = surface.lower()
        if _NUMERIC_RE.fullmatch(surface):
            tag = NUM
            normalized = lowered
        elif surface[0].isalpha():
            tag = lexicon.get(lowered) or _suffix_tag(lowered, prev_word)
            normalized = lowered
        elif all(c in _PUNCT_CHARS for c in surface):
            tag = PUNCT
            normalized = ""
        else:
            tag = OTHER
            normalized = lowered
        tokens.append(Token(surface, normalized, tag, (match.start(), match.end())))
        if tag != PUNCT:
            prev_word = lowered
    return tokens


@dataclass(frozen=True)
class NounPhrase:
    """A maximal DET? ADJ* NOUN+ chunk."""

    tokens: tuple[Token, ...]
    head: int  # index into tokens
    text: str

    @property
    def head_token(self) -> Token:
        return self.tokens[self.head]

    @property
    def keyword(self) -> str:
        """Citation form used for keyword matching: determiners dropped."""
        words = [t.normalized for t in self.tokens if t.tag != DET]
        return " ".join(words)


def extract_noun_phrases(tokens: Sequence[Token]) -> list[NounPhrase]:
    phrases: list[NounPhrase] = []
    i = 0
    n = len(tokens)
    while i < n:
        start = i
        if tokens[i].tag == DET:
            i += 1
        while i < n and tokens[i].tag == ADJ:
            i += 1
        noun_start = i
        while i < n and tokens[i].tag == NOUN:
            i += 1
        if i == noun_start:
            # no noun head; restart after the first token of the failed chunk
            i = start + 1
            continue
        chunk = tuple(tokens[start:i])
        head = len(chunk) - 1
        text = " ".join(t.surface for t in chunk)
        phrases.append(NounPhrase(chunk, head, text))
    return phrases


@dataclass(frozen=True)
class ClauseSpan:
    tokens: tuple[Token, ...]
    start: int  # index into the sentence token list
    end: int  # exclusive
    introducer: Token | None
    contains_keyword: bool
    text: str

    def token_count(self) -> int:
        return sum(1 for t in self.tokens if t.tag != PUNCT)


def keyword_in_tokens(tokens: Sequence[Token], keyword: str) -> bool:
    """Stemmed containment check; multi-word keywords must appear contiguously."""
    kw_stems = [stem(w) for w in keyword.lower().split()]
    if not kw_stems:
        return False
    token_stems = [stem(t.normalized) for t in tokens if t.tag != PUNCT]
    if len(kw_stems) == 1:
        return kw_stems[0] in token_stems
    for i in range(len(token_stems) - len(kw_stems) + 1):
        if token_stems[i : i + len(kw_stems)] == kw_stems:
            return True
    return False


def _span_text(tokens: Sequence[Token], source_text: str | None) -> str:
    # trailing punctuation is dropped from the rendered span
    last = len(tokens) - 1
    while last >= 0 and tokens[last].tag == PUNCT:
        last -= 1
    if last < 0:
        return ""
    kept = tokens[: last + 1]
    if source_text is not None:
        return source_text[kept[0].span[0] : kept[-1].span[1]]
    return " ".join(t.surface for t in kept)


def segment_clauses(
    sentence_tokens: Sequence[Token],
    keywords: Iterable[str],
    source_text: str | None = None,
) -> list[ClauseSpan]:
    """Split a sentence into clause spans at subordinators and clause-level
    coordinators. The spans partition the token list."""
    if not sentence_tokens:
        raise TutorError("cannot segment an empty sentence")
    keywords = list(keywords)
    has_verb_before = [False] * len(sentence_tokens)
    seen = False
    for i, tok in enumerate(sentence_tokens):
        has_verb_before[i] = seen
        if tok.tag == VERB:
            seen = True
    has_verb_after = [False] * len(sentence_tokens)
    seen = False
    for i in range(len(sentence_tokens) - 1, -1, -1):
        has_verb_after[i] = seen
        if sentence_tokens[i].tag == VERB:
            seen = True

    boundaries = [0]
    for i, tok in enumerate(sentence_tokens):
        if i == 0:
            continue
        if tok.normalized in SUBORDINATORS:
            boundaries.append(i)
        elif tok.normalized in COORDINATORS and has_verb_before[i] and has_verb_after[i]:
            boundaries.append(i)
    boundaries.append(len(sentence_tokens))

    spans: list[ClauseSpan] = []
    for a, b in zip(boundaries, boundaries[1:]):
        chunk = tuple(sentence_tokens[a:b])
        introducer = chunk[0] if chunk[0].normalized in SUBORDINATORS else None
        contains = any(keyword_in_tokens(chunk, kw) for kw in keywords)
        spans.append(
            ClauseSpan(chunk, a, b, introducer, contains, _span_text(chunk, source_text))
        )
    return spans


_SENTENCE_RE = re.compile(r"(?<=[.!?])\s+(?=[A-Z0-9\"'(])")


def split_sentences(text: str) -> list[str]:
    text = text.strip()
    if not text:
        return []
    return [s for s in (_SENTENCE_RE.split(text)) if s.strip()]


# --------------------------------------------------------------------------
# TF-IDF
# --------------------------------------------------------------------------

@dataclass
class CorpusStats:
    document_count: int
    document_frequency: dict[str, int]
    vocabulary: set[str] = field(default_factory=set)

    def __post_init__(self) -> None:
        if self.document_count < 1:
            raise TutorError("document_count must be >= 1")
        if not self.vocabulary:
            self.vocabulary = set(self.document_frequency)
        for term, count in self.document_frequency.items():
            if not 1 <= count <= self.document_count:
                raise TutorError(
                    f"document frequency for {term!r} out of range: {count}"
                )

    @classmethod
    def from_documents(cls, documents: Iterable[str]) -> "CorpusStats":
        df: Counter[str] = Counter()
        n = 0
        for doc in documents:
            n += 1
            terms = {t.normalized for t in tokenize(doc) if t.tag != PUNCT}
            df.update(terms)
        if n == 0:
            raise TutorError("corpus must contain at least one document")
        return cls(document_count=n, document_frequency=dict(df))


def tfidf_vector(text: str, stats: CorpusStats) -> dict[str, float]:
    """weight(t) = tf(t) * ln(N / df(t)); unseen terms get df = 1."""
    counts = Counter(
        t.normalized for t in tokenize(text) if t.tag != PUNCT and t.normalized
    )
    n = stats.document_count
    return {
        term: tf * math.log(n / stats.document_frequency.get(term, 1))
        for term, tf in counts.items()
    }


def cosine_similarity(u: Mapping[str, float], v: Mapping[str, float]) -> float:
    norm_u = math.sqrt(sum(x * x for x in u.values()))
    norm_v = math.sqrt(sum(x * x for x in v.values()))
    if norm_u == 0.0 or norm_v == 0.0:
        return 0.0
    if len(u) > len(v):
        u, v = v, u
    dot = sum(w * v.get(term, 0.0) for term, w in u.items())
    return min(1.0, dot / (norm_u * norm_v))


# --------------------------------------------------------------------------
# Add-k n-gram language model
# --------------------------------------------------------------------------

START = "<s>"


@dataclass
class NGramModel:
    order: int
    k: float
    counts: dict[tuple[str, ...], int]
    context_counts: dict[tuple[str, ...], int] = field(default_factory=dict)
    vocabulary: set[str] = field(default_factory=set)

    def __post_init__(self) -> None:
        if self.order < 1:
            raise TutorError("order must be >= 1")
        if self.k <= 0:
            raise TutorError("smoothing constant must be positive")
        if not self.context_counts:
            ctx: Counter[tuple[str, ...]] = Counter()
            for ngram, count in self.counts.items():
                ctx[ngram[:-1]] += count
            self.context_counts = dict(ctx)
        if not self.vocabulary:
            self.vocabulary = {w for ngram in self.counts for w in ngram}

    @classmethod
    def train(
        cls, sentences: Iterable[Sequence[str]], order: int = 2, k: float = 0.1
    ) -> "NGramModel":
        counts: Counter[tuple[str, ...]] = Counter()
        vocab: set[str] = set()
        n_sentences = 0
        for sent in sentences:
            words = [w.lower() for w in sent]
            if not words:
                continue
            n_sentences += 1
            vocab.update(words)
            padded = [START] * (order - 1) + words
            for i in range(order - 1, len(padded)):
                counts[tuple(padded[i - order + 1 : i + 1])] += 1
        if n_sentences == 0:
            raise TutorError("training corpus must contain at least one sentence")
        vocab.add(START)
        return cls(order=order, k=k, counts=dict(counts), vocabulary=vocab)

    @classmethod
    def train_on_texts(
        cls, texts: Iterable[str], order: int = 2, k: float = 0.1
    ) -> "NGramModel":
        sentences = []
        for text in texts:
            for sent in split_sentences(text):
                words = [t.normalized for t in tokenize(sent) if t.tag != PUNCT]
                if words:
                    sentences.append(words)
        return cls.train(sentences, order=order, k=k)

    def log_probability(self, ngram: tuple[str, ...]) -> float:
        v = len(self.vocabulary)
        count = self.counts.get(ngram, 0)
        context = self.context_counts.get(ngram[:-1], 0)
        return math.log((count + self.k) / (context + self.k * v))

    def score(self, tokens: Sequence[Token | str]) -> float:
        """Mean per-token log probability under add-k smoothing."""
        words = [
            (t.normalized if isinstance(t, Token) else t.lower())
            for t in tokens
            if not (isinstance(t, Token) and t.tag == PUNCT)
        ]
        words = [w for w in words if w]
        if not words:
            raise TutorError("empty input")
        padded = [START] * (self.order - 1) + words
        total = 0.0
        for i in range(self.order - 1, len(padded)):
            total += self.log_probability(tuple(padded[i - self.order + 1 : i + 1]))
        return total / len(words)

    def to_json(self) -> str:
        payload = {
            "order": self.order,
            "k": self.k,
            "counts": {" ".join(ngram): c for ngram, c in sorted(self.counts.items())},
        }
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "NGramModel":
        payload = json.loads(text)
        counts = {tuple(key.split(" ")): c for key, c in payload["counts"].items()}
        return cls(order=payload["order"], k=payload["k"], counts=counts)


def lm_score(tokens: Sequence[Token | str], model: NGramModel) -> float:
    return model.score(tokens)
