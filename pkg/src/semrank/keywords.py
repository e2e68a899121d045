"""Keyword extraction: BM25 scoring or semantic word-graph ranking,
followed by collapsing winners into representative n-grams.

Candidates are content tokens (stopwords excluded). A scored token
collapses to the longest n-gram containing it whose document frequency
exceeds both half the token's frequency and a minimum count; n-grams are
contiguous runs of content tokens within one sentence.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .embedding_store import VectorStore, cosine
from .errors import EmptyDocumentError, OutOfVocabularyError
from .graph_rank import WeightedGraph, weighted_rank
from .text_core import TokenizedDocument


@dataclass(frozen=True)
class KeywordRequest:
    document: TokenizedDocument
    method: str = "bm25"
    top_k: int = 10
    max_n: int = 10
    window: int = 2
    min_ngram_count: int = 2
    k1: float = 1.5
    b: float = 0.75

    def __post_init__(self):
        if self.method not in ("bm25", "semantic_graph"):
            raise ValueError(f"unknown method {self.method!r}")
        for name, value in (
            ("top_k", self.top_k),
            ("max_n", self.max_n),
            ("window", self.window),
            ("min_ngram_count", self.min_ngram_count),
        ):
            if value < 1:
                raise ValueError(f"{name} must be >= 1, got {value}")
        if self.k1 <= 0.0:
            raise ValueError("k1 must be positive")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError("b must be in [0, 1]")


@dataclass(frozen=True)
class KeywordEntry:
    ngram: tuple[str, ...]
    score: float
    source_word: str


@dataclass(frozen=True)
class KeywordResult:
    keywords: tuple[KeywordEntry, ...]
    method_used: str


def score_bm25(document: TokenizedDocument, request: KeywordRequest) -> dict[str, float]:
    """Each sentence is a BM25 document; each content token a one-term query."""
    if not document.sentences:
        raise EmptyDocumentError("document has no sentences")
    sequences = [s.content_tokens for s in document.sentences]
    lengths = [len(seq) for seq in sequences]
    total = sum(lengths)
    if total == 0:
        return {}
    n_sentences = len(sequences)
    avg_length = total / n_sentences
    per_sentence = [Counter(seq) for seq in sequences]
    containing: Counter[str] = Counter()
    for counts in per_sentence:
        containing.update(counts.keys())
    k1, b = request.k1, request.b
    scores: dict[str, float] = {}
    for token, n_t in containing.items():
        idf = math.log((n_sentences - n_t + 0.5) / (n_t + 0.5) + 1.0)
        score = 0.0
        for counts, length in zip(per_sentence, lengths):
            f = counts.get(token, 0)
            if f == 0:
                continue
            norm = k1 * (1.0 - b + b * length / avg_length)
            score += idf * f * (k1 + 1.0) / (f + norm)
        scores[token] = score
    return scores


def score_semantic_graph(
    document: TokenizedDocument,
    request: KeywordRequest,
    word_store: VectorStore,
) -> dict[str, float]:
    """Rank in-vocabulary content tokens on a co-occurrence graph.

    Tokens co-occur when within ``request.window`` positions of each other
    in a sentence's content-token sequence; edge weight is the clamped
    cosine of their vectors.
    """
    sequences = [s.content_tokens for s in document.sentences]
    tokens = sorted({t for seq in sequences for t in seq if t in word_store})
    if not tokens:
        raise OutOfVocabularyError(message="no in-vocabulary content tokens")
    index = {t: i for i, t in enumerate(tokens)}
    edges: dict[tuple[int, int], float] = {}
    for seq in sequences:
        positions = [(i, index[t]) for i, t in enumerate(seq) if t in index]
        for a in range(len(positions)):
            pos_a, node_a = positions[a]
            for b in range(a + 1, len(positions)):
                pos_b, node_b = positions[b]
                if pos_b - pos_a > request.window - 1:
                    break
                if node_a == node_b:
                    continue
                pair = (min(node_a, node_b), max(node_a, node_b))
                if pair not in edges:
                    weight = max(
                        0.0,
                        cosine(word_store.vector(tokens[pair[0]]),
                               word_store.vector(tokens[pair[1]])),
                    )
                    if weight > 0.0:
                        edges[pair] = weight
    graph = WeightedGraph.undirected_graph(len(tokens), edges)
    ranks = weighted_rank(graph)
    return {t: float(ranks.scores[index[t]]) for t in tokens}


def _ngram_tables(document: TokenizedDocument, max_n: int):
    """Counts and first positions of all content n-grams (n in [2, max_n])."""
    counts: Counter[tuple[str, ...]] = Counter()
    first_pos: dict[tuple[str, ...], tuple[int, int]] = {}
    for si, sentence in enumerate(document.sentences):
        seq = sentence.content_tokens
        for n in range(2, max_n + 1):
            for off in range(len(seq) - n + 1):
                gram = seq[off:off + n]
                counts[gram] += 1
                first_pos.setdefault(gram, (si, off))
    return counts, first_pos


def collapse_to_ngrams(
    important: Mapping[str, float],
    document: TokenizedDocument,
    request: KeywordRequest,
) -> KeywordResult:
    """Collapse the top_k scored tokens into their representative n-grams.

    A token w collapses to the longest n-gram containing it with
    count(ngram) > count(w)/2 and count(ngram) > min_ngram_count; ties go
    to the higher count, then the earlier first occurrence. Tokens with no
    qualifying n-gram stay unigrams. Duplicate collapses keep the
    higher-scored source word.
    """
    word_counts = Counter(document.content_tokens())
    ngram_counts, first_pos = _ngram_tables(document, request.max_n)
    ranked = sorted(important, key=lambda t: (-important[t], t))[: request.top_k]
    chosen: dict[tuple[str, ...], KeywordEntry] = {}
    for word in ranked:
        count_w = word_counts.get(word, 0)
        best: tuple[int, int, tuple[int, int]] | None = None
        best_gram: tuple[str, ...] = (word,)
        for gram, count in ngram_counts.items():
            if word not in gram:
                continue
            if not (count > count_w / 2 and count > request.min_ngram_count):
                continue
            key = (-len(gram), -count, first_pos[gram])
            if best is None or key < best:
                best = key
                best_gram = gram
        if best_gram not in chosen:
            chosen[best_gram] = KeywordEntry(
                ngram=best_gram, score=important[word], source_word=word
            )
    entries = sorted(chosen.values(), key=lambda e: (-e.score, e.source_word))
    return KeywordResult(keywords=tuple(entries), method_used=request.method)


def extract_keywords(
    request: KeywordRequest, word_store: VectorStore | None = None
) -> KeywordResult:
    if request.method == "bm25":
        scores = score_bm25(request.document, request)
    else:
        if word_store is None:
            raise ValueError("semantic_graph method requires a word store")
        scores = score_semantic_graph(request.document, request, word_store)
    if not scores:
        return KeywordResult(keywords=(), method_used=request.method)
    return collapse_to_ngrams(scores, request.document, request)
