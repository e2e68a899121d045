"""Sequential topic clustering of paragraphs, and per-topic summarization.

Adjacent paragraphs merge into one cluster while their embedding
similarity to the cluster stays above a threshold calibrated on a
training corpus (mean + population std of consecutive-pair similarities).
Summarizing each cluster independently guarantees every topic contributes
at least one sentence, which a single whole-document ranking does not.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .embedding_store import cosine, doc_vector_by_average
from .embedding_train import Embeddings, derived_seed, infer_doc_vector
from .errors import (
    EmptyDocumentError,
    FormatError,
    InsufficientCalibrationError,
    OutOfVocabularyError,
)
from .summarize import Summary, SummaryRequest, summarize
from .text_core import TokenizedDocument

METRICS = ("similarity", "one_minus_similarity")
REPRESENTATIVES = ("previous", "mean")


@dataclass(frozen=True)
class ThresholdCalibration:
    """Merge-threshold statistics: compare at mean + std in ``metric`` space."""

    mean: float
    std: float
    sample_count: int
    source_corpus_id: str = ""
    metric: str = "similarity"

    def __post_init__(self):
        if self.sample_count < 2:
            raise ValueError("sample_count must be >= 2")
        if self.std < 0.0:
            raise ValueError("std must be >= 0")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")

    @property
    def threshold(self) -> float:
        return self.mean + self.std


@dataclass(frozen=True)
class ClusterSet:
    clusters: tuple[tuple[int, ...], ...]
    calibration_used: ThresholdCalibration


def paragraph_vectors(
    document: TokenizedDocument,
    stores: Embeddings,
    source: str = "average",
    seed: int = 0,
    document_index: int | None = None,
) -> list[np.ndarray | None]:
    """One vector per paragraph; None (with a warning) where uncomputable.

    A zero-norm average counts as uncomputable. Inference seeds derive
    from (seed, paragraph index) — or (seed, document_index, paragraph
    index) when calibrating over a corpus — so results are reproducible.
    """
    vectors: list[np.ndarray | None] = []
    for p in range(len(document.paragraphs)):
        tokens = document.paragraph_content_tokens(p)
        vector: np.ndarray | None = None
        if source == "trained_inference":
            key = (p,) if document_index is None else (document_index, p)
            try:
                vector = infer_doc_vector(
                    tokens, stores.words, stores.config, derived_seed(seed, *key)
                )
            except OutOfVocabularyError:
                vector = None
        elif source != "average":
            raise ValueError(f"unknown source {source!r}")
        if vector is None:
            try:
                vector = doc_vector_by_average(tokens, stores.words)
            except OutOfVocabularyError:
                vector = None
        if vector is not None and not np.linalg.norm(vector) > 0.0:
            vector = None
        if vector is None:
            warnings.warn(f"paragraph {p} has no computable vector")
        vectors.append(vector)
    return vectors


def calibrate(
    training_corpus: Sequence[TokenizedDocument],
    stores: Embeddings,
    source: str = "average",
    metric: str = "similarity",
    seed: int = 0,
    corpus_id: str = "",
) -> ThresholdCalibration:
    """Mean and population std over consecutive-paragraph pair values.

    Values are cosine similarities, or 1 - similarity under the
    one_minus_similarity metric. Pairs with an uncomputable side are
    skipped; fewer than 2 usable pairs is an error.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    values: list[float] = []
    for d, document in enumerate(training_corpus):
        vectors = paragraph_vectors(
            document, stores, source=source, seed=seed, document_index=d
        )
        for p in range(len(vectors) - 1):
            if vectors[p] is None or vectors[p + 1] is None:
                continue
            sim = cosine(vectors[p], vectors[p + 1])
            values.append(sim if metric == "similarity" else 1.0 - sim)
    if len(values) < 2:
        raise InsufficientCalibrationError(
            f"need >= 2 consecutive-paragraph pairs, found {len(values)}"
        )
    sample = np.asarray(values, dtype=np.float64)
    return ThresholdCalibration(
        mean=float(sample.mean()),
        std=float(sample.std()),
        sample_count=len(values),
        source_corpus_id=corpus_id,
        metric=metric,
    )


def _joins(similarity: float, calibration: ThresholdCalibration) -> bool:
    if calibration.metric == "similarity":
        return similarity > calibration.threshold
    return (1.0 - similarity) < calibration.threshold


def _representative(members: list[np.ndarray], mode: str) -> np.ndarray | None:
    if not members:
        return None
    if mode == "previous":
        return members[-1]
    mean = np.mean(np.stack(members), axis=0)
    if not np.linalg.norm(mean) > 0.0:
        return None
    return mean


def cluster(
    document: TokenizedDocument,
    calibration: ThresholdCalibration,
    stores: Embeddings,
    source: str = "average",
    seed: int = 0,
    representative: str = "previous",
) -> ClusterSet:
    """Left-to-right merge of paragraphs into contiguous topic clusters.

    Paragraph p+1 joins the current cluster iff its similarity to the
    cluster representative clears the calibrated threshold. The default
    representative is the previous vectorizable paragraph, which makes
    each boundary decision independent of earlier ones (so a higher
    threshold can only split more); "mean" compares against the running
    mean of member vectors instead. Paragraphs without a vector attach to
    the current cluster; a cluster with no vectorizable member yet cannot
    be compared against, so the next vectorizable paragraph starts fresh.
    """
    if representative not in REPRESENTATIVES:
        raise ValueError(f"unknown representative {representative!r}")
    if not document.paragraphs:
        raise EmptyDocumentError("document has no paragraphs")
    vectors = paragraph_vectors(document, stores, source=source, seed=seed)
    clusters: list[list[int]] = [[0]]
    members: list[np.ndarray] = [] if vectors[0] is None else [vectors[0]]
    for p in range(1, len(vectors)):
        v = vectors[p]
        if v is None:
            clusters[-1].append(p)
            continue
        rep = _representative(members, representative)
        if rep is not None and _joins(cosine(v, rep), calibration):
            clusters[-1].append(p)
            members.append(v)
        else:
            clusters.append([p])
            members = [v]
    return ClusterSet(
        clusters=tuple(tuple(c) for c in clusters),
        calibration_used=calibration,
    )


@dataclass(frozen=True)
class TopicSummary:
    """One cluster's summary; ``sentence_indices`` are whole-document indices."""

    cluster: tuple[int, ...]
    summary: Summary
    sentence_indices: tuple[int, ...]


def _sub_document(
    document: TokenizedDocument, paragraph_ids: Sequence[int]
) -> tuple[TokenizedDocument, list[int]]:
    sentence_ids = [s for p in paragraph_ids for s in document.paragraphs[p]]
    new_paragraphs: list[tuple[int, ...]] = []
    k = 0
    for p in paragraph_ids:
        size = len(document.paragraphs[p])
        new_paragraphs.append(tuple(range(k, k + size)))
        k += size
    sub = TokenizedDocument(
        raw_text=document.raw_text,
        paragraphs=tuple(new_paragraphs),
        sentences=tuple(document.sentences[s] for s in sentence_ids),
        language=document.language,
    )
    return sub, sentence_ids


def summarize_by_topics(
    document: TokenizedDocument,
    calibration: ThresholdCalibration,
    request_template: SummaryRequest,
    stores: Embeddings,
    source: str = "average",
    seed: int = 0,
    representative: str = "previous",
) -> list[TopicSummary]:
    """Cluster, then summarize each cluster's sub-document independently.

    The template's sizing/method settings apply per cluster; its document
    field is replaced. Concatenating the results in order yields the full
    coverage summary, with >= 1 sentence from every cluster.
    """
    cluster_set = cluster(
        document,
        calibration,
        stores,
        source=source,
        seed=seed,
        representative=representative,
    )
    out: list[TopicSummary] = []
    for topic in cluster_set.clusters:
        sub, sentence_ids = _sub_document(document, topic)
        summary = summarize(replace(request_template, document=sub), stores, seed=seed)
        out.append(
            TopicSummary(
                cluster=topic,
                summary=summary,
                sentence_indices=tuple(sentence_ids[i] for i in summary.selected),
            )
        )
    return out


def save_calibration(calibration: ThresholdCalibration, path: str | Path) -> None:
    lines = [
        f"metric: {calibration.metric}",
        f"mean: {calibration.mean!r}",
        f"std: {calibration.std!r}",
        f"sample_count: {calibration.sample_count}",
        f"source_corpus_id: {calibration.source_corpus_id}",
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_calibration(path: str | Path) -> ThresholdCalibration:
    fields: dict[str, str] = {}
    for number, raw in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise FormatError("expected 'key: value'", line=number)
        fields[key.strip()] = value.strip()
    try:
        return ThresholdCalibration(
            mean=float(fields["mean"]),
            std=float(fields["std"]),
            sample_count=int(fields["sample_count"]),
            source_corpus_id=fields.get("source_corpus_id", ""),
            metric=fields.get("metric", "similarity"),
        )
    except KeyError as missing:
        raise FormatError(f"missing calibration field {missing.args[0]!r}") from None
    except ValueError as bad:
        raise FormatError(f"bad calibration value: {bad}") from None
