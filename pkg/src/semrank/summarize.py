"""Extractive summarization by ranking sentences on a similarity graph.

Two edge weightings: "semantic" uses cosine similarity between per-sentence
document vectors (inferred from the trained model, or token averages);
"baseline_overlap" uses shared-token counts normalized by log sentence
lengths. Sentences are ranked with the weighted recommendation scheme and
the top ones returned in their original order.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .embedding_store import cosine, doc_vector_by_average
from .embedding_train import Embeddings, derived_seed, infer_doc_vector
from .errors import EmptyDocumentError, OutOfVocabularyError
from .graph_rank import RankVector, WeightedGraph, weighted_rank
from .text_core import TokenizedDocument

DEFAULT_RATIO = 0.2


@dataclass(frozen=True)
class SummaryRequest:
    """What to summarize and how much of it to keep.

    Exactly one of ratio/word_limit applies; leaving both unset means
    ratio 0.2. ``similarity_floor`` drops semantic edges at or below it.
    """

    document: TokenizedDocument
    ratio: float | None = None
    word_limit: int | None = None
    method: str = "semantic"
    doc_vector_source: str = "trained_inference"
    similarity_floor: float = 0.0

    def __post_init__(self):
        if self.ratio is not None and self.word_limit is not None:
            raise ValueError("ratio and word_limit are mutually exclusive")
        if self.ratio is None and self.word_limit is None:
            object.__setattr__(self, "ratio", DEFAULT_RATIO)
        if self.ratio is not None and not 0.0 < self.ratio <= 1.0:
            raise ValueError(f"ratio must be in (0, 1], got {self.ratio}")
        if self.word_limit is not None and self.word_limit < 1:
            raise ValueError(f"word_limit must be positive, got {self.word_limit}")
        if self.method not in ("semantic", "baseline_overlap"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.doc_vector_source not in ("trained_inference", "average"):
            raise ValueError(f"unknown doc_vector_source {self.doc_vector_source!r}")
        if self.similarity_floor < 0.0:
            raise ValueError("similarity_floor must be >= 0")


@dataclass(frozen=True)
class Summary:
    selected: tuple[int, ...]
    scores: RankVector
    request_echo: SummaryRequest

    def sentences(self) -> list[str]:
        return [self.request_echo.document.sentence_text(i) for i in self.selected]

    def text(self) -> str:
        return " ".join(self.sentences())


def sentence_vectors(
    document: TokenizedDocument,
    doc_vector_source: str,
    stores: Embeddings,
    seed: int = 0,
) -> list[np.ndarray | None]:
    """One vector per sentence, or None where no token is in vocabulary.

    trained_inference falls back to token averaging for sentences the
    model cannot infer; a sentence OOV under both gets None and a warning.
    Inference seeds derive from (seed, sentence index), so a fixed seed
    fixes every sentence's vector.
    """
    vectors: list[np.ndarray | None] = []
    for i, sentence in enumerate(document.sentences):
        tokens = sentence.content_tokens
        vector: np.ndarray | None = None
        if doc_vector_source == "trained_inference":
            try:
                vector = infer_doc_vector(
                    tokens, stores.words, stores.config, derived_seed(seed, i)
                )
            except OutOfVocabularyError:
                vector = None
        if vector is None:
            try:
                vector = doc_vector_by_average(tokens, stores.words)
            except OutOfVocabularyError:
                warnings.warn(
                    f"sentence {i} has no in-vocabulary tokens; kept without edges"
                )
                vector = None
        vectors.append(vector)
    return vectors


def sentence_graph(
    document: TokenizedDocument,
    method: str = "semantic",
    doc_vector_source: str = "trained_inference",
    stores: Embeddings | None = None,
    similarity_floor: float = 0.0,
    seed: int = 0,
) -> WeightedGraph:
    """Undirected sentence-similarity graph; one node per sentence."""
    n = len(document.sentences)
    if n == 0:
        raise EmptyDocumentError("document has no sentences")
    edges: dict[tuple[int, int], float] = {}
    if method == "semantic":
        if stores is None:
            raise ValueError("semantic method requires embedding stores")
        vectors = sentence_vectors(document, doc_vector_source, stores, seed)
        for i in range(n):
            if vectors[i] is None:
                continue
            for j in range(i + 1, n):
                if vectors[j] is None:
                    continue
                weight = max(0.0, cosine(vectors[i], vectors[j]))
                if weight > similarity_floor:
                    edges[(i, j)] = weight
    elif method == "baseline_overlap":
        token_sets = [frozenset(s.content_tokens) for s in document.sentences]
        lengths = [len(s.content_tokens) for s in document.sentences]
        for i in range(n):
            for j in range(i + 1, n):
                shared = len(token_sets[i] & token_sets[j])
                if shared == 0:
                    continue
                if lengths[i] <= 1 or lengths[j] <= 1:
                    denominator = 1.0
                else:
                    denominator = math.log(lengths[i]) + math.log(lengths[j])
                weight = shared / denominator
                if weight > similarity_floor:
                    edges[(i, j)] = weight
    else:
        raise ValueError(f"unknown method {method!r}")
    return WeightedGraph.undirected_graph(n, edges)


def rank_order(scores: Sequence[float]) -> list[int]:
    """Sentence indices by descending score; ties go to the earlier sentence."""
    return sorted(range(len(scores)), key=lambda i: (-scores[i], i))


def select_by_ratio(order: Sequence[int], ratio: float) -> list[int]:
    count = max(1, math.ceil(ratio * len(order)))
    return sorted(order[:count])


def select_by_word_limit(
    order: Sequence[int], word_counts: Sequence[int], word_limit: int
) -> list[int]:
    """Greedy in rank order while the running total stays within the limit.

    The top-ranked sentence is always taken; after that, selection stops at
    the first sentence that would push the total past the limit.
    """
    selected = [order[0]]
    total = word_counts[order[0]]
    for i in order[1:]:
        if total + word_counts[i] > word_limit:
            break
        selected.append(i)
        total += word_counts[i]
    return sorted(selected)


def summarize(
    request: SummaryRequest,
    stores: Embeddings | None = None,
    seed: int = 0,
) -> Summary:
    document = request.document
    graph = sentence_graph(
        document,
        method=request.method,
        doc_vector_source=request.doc_vector_source,
        stores=stores,
        similarity_floor=request.similarity_floor,
        seed=seed,
    )
    ranks = weighted_rank(graph)
    order = rank_order(ranks.scores.tolist())
    if request.ratio is not None:
        selected = select_by_ratio(order, request.ratio)
    else:
        word_counts = [
            len(document.sentence_text(i).split())
            for i in range(len(document.sentences))
        ]
        selected = select_by_word_limit(order, word_counts, request.word_limit)
    return Summary(selected=tuple(selected), scores=ranks, request_echo=request)


def resized(request: SummaryRequest, ratio: float) -> SummaryRequest:
    """Same request at a different ratio (clears any word limit)."""
    return replace(request, ratio=ratio, word_limit=None)
