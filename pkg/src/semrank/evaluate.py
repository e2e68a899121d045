"""ROUGE-2 scoring and the repeated-run evaluation harness.

Summaries are scored by clipped bigram recall against gold summaries.
Because semantic summarization infers sentence vectors with seeded
randomness, each document is summarized ``runs_per_document`` times (one
seed per run) and both the per-document average and best are reported;
the deterministic overlap baseline is computed once and replicated.

Corpus layout: ``<root>/News Articles/<category>/<id>.txt`` with gold
summaries at ``<root>/Summaries/<category>/<id>.txt``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .embedding_train import Embeddings
from .errors import (
    DegenerateReferenceError,
    EmptyCorpusError,
    EmptyDocumentError,
)
from .summarize import SummaryRequest, summarize
from .text_core import (
    LanguageProfile,
    TokenizedDocument,
    builtin_profile,
    get_profile,
    segment,
    tokenize,
)

ARTICLES_DIR = "News Articles"
SUMMARIES_DIR = "Summaries"


@dataclass(frozen=True)
class EvalConfig:
    runs_per_document: int = 10
    ratios: tuple[float, ...] = (0.2, 0.5, 0.8)
    seeds: tuple[int, ...] = tuple(range(1, 11))
    methods: tuple[str, ...] = ("semantic", "baseline_overlap")
    doc_vector_source: str = "trained_inference"

    def __post_init__(self):
        if self.runs_per_document < 1:
            raise ValueError("runs_per_document must be >= 1")
        if len(self.seeds) != self.runs_per_document:
            raise ValueError(
                f"need {self.runs_per_document} seeds, got {len(self.seeds)}"
            )
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("seeds must be pairwise distinct")
        for r in self.ratios:
            if not 0.0 < r <= 1.0:
                raise ValueError(f"ratio must be in (0, 1], got {r}")
        if not self.ratios:
            raise ValueError("at least one ratio required")
        if not self.methods:
            raise ValueError("at least one method required")
        for m in self.methods:
            if m not in ("semantic", "baseline_overlap"):
                raise ValueError(f"unknown method {m!r}")


@dataclass(frozen=True)
class MethodScores:
    run_scores: tuple[float, ...]
    average: float
    best: float


@dataclass(frozen=True)
class EvalReport:
    per_document: Mapping[str, Mapping[tuple[float, str], MethodScores]]
    corpus_average: Mapping[tuple[float, str], float]
    corpus_best_average: Mapping[tuple[float, str], float]
    skipped: tuple[str, ...] = field(default_factory=tuple)


def _bigrams(tokens: Sequence[str]) -> Counter:
    return Counter(zip(tokens, tokens[1:]))


def rouge2(
    candidate: Sequence[str], references: Sequence[Sequence[str]]
) -> float:
    """Clipped bigram recall of the candidate against the references."""
    if not references:
        raise DegenerateReferenceError("at least one reference required")
    for ref in references:
        if len(ref) < 2:
            raise DegenerateReferenceError(
                f"reference needs >= 2 tokens, got {len(ref)}"
            )
    candidate_counts = _bigrams(candidate)
    matched = 0
    total = 0
    for ref in references:
        for gram, count in _bigrams(ref).items():
            matched += min(candidate_counts.get(gram, 0), count)
            total += count
    return matched / total


def rouge_tokens(text: str, profile: LanguageProfile) -> tuple[str, ...]:
    """ROUGE scoring tokens: normalized surface tokens, stopwords retained."""
    return tokenize(text, profile)


def _resolve_profile(
    document: TokenizedDocument, profile: LanguageProfile | None
) -> LanguageProfile:
    return profile if profile is not None else get_profile(document.language)


def evaluate_document(
    document: TokenizedDocument,
    gold_summary: str,
    config: EvalConfig,
    stores: Embeddings,
    profile: LanguageProfile | None = None,
) -> dict[tuple[float, str], MethodScores]:
    """Score every (ratio, method) combination over the configured runs."""
    profile = _resolve_profile(document, profile)
    reference = rouge_tokens(gold_summary, profile)
    record: dict[tuple[float, str], MethodScores] = {}
    for ratio in config.ratios:
        for method in config.methods:
            request = SummaryRequest(
                document=document,
                ratio=ratio,
                method=method,
                doc_vector_source=config.doc_vector_source,
            )
            if method == "semantic":
                scores = []
                for seed in config.seeds:
                    summary = summarize(request, stores, seed=seed)
                    scores.append(
                        rouge2(rouge_tokens(summary.text(), profile), [reference])
                    )
            else:
                summary = summarize(request, stores)
                one = rouge2(rouge_tokens(summary.text(), profile), [reference])
                scores = [one] * config.runs_per_document
            record[(ratio, method)] = MethodScores(
                run_scores=tuple(scores),
                average=sum(scores) / len(scores),
                best=max(scores),
            )
    return record


def corpus_documents(corpus_dir: str | Path) -> tuple[list[tuple[str, Path, Path]], list[str]]:
    """(doc_id, article_path, summary_path) triples plus skipped entries."""
    root = Path(corpus_dir)
    articles_root = root / ARTICLES_DIR
    if not articles_root.is_dir():
        raise EmptyCorpusError(f"missing '{ARTICLES_DIR}' directory under {root}")
    usable: list[tuple[str, Path, Path]] = []
    skipped: list[str] = []
    for article in sorted(articles_root.glob("*/*.txt")):
        doc_id = f"{article.parent.name}/{article.stem}"
        gold = root / SUMMARIES_DIR / article.parent.name / article.name
        if not gold.is_file():
            skipped.append(f"{doc_id}: no gold summary")
            continue
        usable.append((doc_id, article, gold))
    return usable, skipped


def evaluate_corpus(
    corpus_dir: str | Path,
    config: EvalConfig,
    stores: Embeddings,
    profile: LanguageProfile | None = None,
) -> EvalReport:
    profile = profile if profile is not None else builtin_profile("en")
    usable, skipped = corpus_documents(corpus_dir)
    per_document: dict[str, dict[tuple[float, str], MethodScores]] = {}
    for doc_id, article_path, gold_path in usable:
        try:
            document = segment(
                article_path.read_text(encoding="utf-8", errors="replace"), profile
            )
            gold = gold_path.read_text(encoding="utf-8", errors="replace")
            per_document[doc_id] = evaluate_document(
                document, gold, config, stores, profile
            )
        except (EmptyDocumentError, DegenerateReferenceError) as reason:
            skipped.append(f"{doc_id}: {reason}")
    if not per_document:
        raise EmptyCorpusError(f"no usable documents under {corpus_dir}")
    corpus_average: dict[tuple[float, str], float] = {}
    corpus_best: dict[tuple[float, str], float] = {}
    n = len(per_document)
    for ratio in config.ratios:
        for method in config.methods:
            key = (ratio, method)
            corpus_average[key] = sum(r[key].average for r in per_document.values()) / n
            corpus_best[key] = sum(r[key].best for r in per_document.values()) / n
    return EvalReport(
        per_document=per_document,
        corpus_average=corpus_average,
        corpus_best_average=corpus_best,
        skipped=tuple(skipped),
    )


def render_report(report: EvalReport) -> str:
    """Stable line-per-record text form; identical reports render identically."""
    lines = ["# evaluation report", "# fields are tab-separated"]
    for doc_id in sorted(report.per_document):
        record = report.per_document[doc_id]
        for ratio, method in sorted(record):
            scores = record[(ratio, method)]
            runs = ",".join(repr(s) for s in scores.run_scores)
            lines.append(
                "\t".join(
                    [
                        "document",
                        f"id={doc_id}",
                        f"ratio={ratio!r}",
                        f"method={method}",
                        f"runs={runs}",
                        f"average={scores.average!r}",
                        f"best={scores.best!r}",
                    ]
                )
            )
    for ratio, method in sorted(report.corpus_average):
        lines.append(
            "\t".join(
                [
                    "corpus",
                    f"ratio={ratio!r}",
                    f"method={method}",
                    f"average={report.corpus_average[(ratio, method)]!r}",
                    f"best_average={report.corpus_best_average[(ratio, method)]!r}",
                ]
            )
        )
    for entry in report.skipped:
        lines.append(f"skipped\t{entry}")
    return "\n".join(lines) + "\n"
