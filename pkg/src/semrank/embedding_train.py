"""Seedable desk-scale embedding trainer.

Word vectors come from skip-gram with negative sampling; document vectors
from a distributed-bag-of-words model in which a per-unit vector learns to
predict the unit's words. Document units are paragraphs, keyed
"<name>#<paragraph-index>".

Training runs in two phases. Phase one trains word input/output matrices
with unigram^0.75 negative sampling. Phase two trains document vectors
against the *frozen word input vectors* with uniform negatives — the same
objective ``infer_doc_vector`` optimizes, so an inferred vector for a
training unit lands near its trained one. The update loop is
single-threaded with one RNG consumed in a fixed order: identical
(corpus, config, seed) gives bit-identical stores.
"""
from __future__ import annotations

import math
import weakref
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .embedding_store import VectorStore
from .errors import EmptyCorpusError, OutOfVocabularyError
from .text_core import TokenizedDocument

NEGATIVE_EXPONENT = 0.75
FINAL_RATE_FRACTION = 0.01


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters; every numeric field must be strictly positive."""

    dimension: int = 100
    window: int = 5
    negative_samples: int = 5
    epochs: int = 20
    initial_learning_rate: float = 0.025
    min_count: int = 2
    seed: int = 1
    mode: str = "docs_and_words"

    def __post_init__(self):
        numeric = {
            "dimension": self.dimension,
            "window": self.window,
            "negative_samples": self.negative_samples,
            "epochs": self.epochs,
            "initial_learning_rate": self.initial_learning_rate,
            "min_count": self.min_count,
        }
        for name, value in numeric.items():
            if value <= 0:
                raise ValueError(f"{name} must be strictly positive, got {value}")
        if self.dimension < 2:
            raise ValueError("dimension must be at least 2")
        if self.mode not in ("words_only", "docs_and_words"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class Corpus:
    """Tokenized documents plus the vocabulary derived from them.

    ``vocab`` maps surviving tokens (frequency >= min_count, counted over
    content tokens) to their frequency; ``unigram_table`` holds sampling
    probabilities proportional to frequency^0.75, indexed like ``index``.
    """

    documents: tuple[TokenizedDocument, ...]
    names: tuple[str, ...]
    vocab: dict[str, int]
    index: dict[str, int]
    unigram_table: np.ndarray


def build_corpus(
    named_documents: Sequence[tuple[str, TokenizedDocument]],
    min_count: int = 2,
) -> Corpus:
    """Count content tokens, apply the min-count filter, build the unigram table."""
    counts: Counter[str] = Counter()
    for _, doc in named_documents:
        counts.update(doc.content_tokens())
    vocab = {t: c for t, c in counts.items() if c >= min_count}
    if not vocab:
        raise EmptyCorpusError(
            f"no token reaches min_count={min_count} over {len(named_documents)} documents"
        )
    tokens = sorted(vocab)
    index = {t: i for i, t in enumerate(tokens)}
    weights = np.array([vocab[t] for t in tokens], dtype=np.float64) ** NEGATIVE_EXPONENT
    return Corpus(
        documents=tuple(doc for _, doc in named_documents),
        names=tuple(name for name, _ in named_documents),
        vocab=vocab,
        index=index,
        unigram_table=weights / weights.sum(),
    )


@dataclass(frozen=True)
class Embeddings:
    """The trained resources the pipeline consumes."""

    words: VectorStore
    config: TrainConfig
    docs: VectorStore | None = None


@dataclass(frozen=True)
class TrainResult:
    word_store: VectorStore
    doc_store: VectorStore | None
    epoch_losses: tuple[float, ...]

    def __iter__(self):
        # unpackable as (word_store, doc_store)
        return iter((self.word_store, self.doc_store))

    def embeddings(self, config: TrainConfig) -> Embeddings:
        return Embeddings(words=self.word_store, config=config, docs=self.doc_store)


def _sigmoid(x: float) -> float:
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def _log_sigmoid(x: float) -> float:
    if x >= 0.0:
        return -math.log1p(math.exp(-x))
    return x - math.log1p(math.exp(x))


def sgns_loss(center: np.ndarray, context: np.ndarray, negatives: Sequence[np.ndarray]) -> float:
    """Negative-sampling loss: -log s(c.w) - sum_n log s(-n.w)."""
    loss = -_log_sigmoid(float(np.dot(center, context)))
    for neg in negatives:
        loss -= _log_sigmoid(-float(np.dot(center, neg)))
    return loss


@dataclass(frozen=True)
class SgnsGradient:
    center: np.ndarray
    context: np.ndarray
    negatives: tuple[np.ndarray, ...]


def sgns_gradient(
    center: np.ndarray,
    context: np.ndarray,
    negatives: Sequence[np.ndarray],
) -> SgnsGradient:
    """Exact analytic gradient of ``sgns_loss`` for each parameter vector."""
    g_pos = _sigmoid(float(np.dot(center, context))) - 1.0
    grad_center = g_pos * context
    grad_negatives = []
    for neg in negatives:
        g_neg = _sigmoid(float(np.dot(center, neg)))
        grad_center = grad_center + g_neg * neg
        grad_negatives.append(g_neg * center)
    return SgnsGradient(
        center=grad_center,
        context=g_pos * center,
        negatives=tuple(grad_negatives),
    )


def learning_rate(step: int, total_steps: int, initial: float) -> float:
    """Linear decay from ``initial`` to ``initial/100`` at the last step."""
    floor = initial * FINAL_RATE_FRACTION
    if total_steps <= 1:
        return initial
    value = initial + (floor - initial) * (step / (total_steps - 1))
    return max(value, floor)


def _doc_units(corpus: Corpus) -> list[tuple[str, list[int]]]:
    """Paragraph units with their in-vocabulary content-token index sequences."""
    units = []
    for name, doc in zip(corpus.names, corpus.documents):
        for p, sentence_ids in enumerate(doc.paragraphs):
            seq: list[int] = []
            for s in sentence_ids:
                seq.extend(
                    corpus.index[t]
                    for t in doc.sentences[s].content_tokens
                    if t in corpus.index
                )
            units.append((f"{name}#{p}", seq))
    return units


def _sentence_sequences(corpus: Corpus) -> list[list[int]]:
    sequences = []
    for doc in corpus.documents:
        for sentence in doc.sentences:
            seq = [corpus.index[t] for t in sentence.content_tokens if t in corpus.index]
            if len(seq) >= 1:
                sequences.append(seq)
    return sequences


def train(
    corpus: Corpus,
    config: TrainConfig,
    loss_hook: Callable[[int, float], None] | None = None,
) -> TrainResult:
    """Train word vectors (and document vectors unless mode=words_only).

    Returns per-epoch mean word-phase losses alongside the stores;
    ``loss_hook(epoch, mean_loss)``, when given, observes them as they
    complete.
    """
    if not corpus.vocab:
        raise EmptyCorpusError("corpus has an empty vocabulary")
    vocab_size = len(corpus.index)
    dim = config.dimension
    rng = np.random.default_rng(config.seed)

    w_in = (rng.random((vocab_size, dim)) - 0.5) / dim
    w_out = np.zeros((vocab_size, dim))
    cumulative = np.cumsum(corpus.unigram_table)

    sequences = _sentence_sequences(corpus)
    word_positions = sum(len(s) for s in sequences)
    units = _doc_units(corpus) if config.mode == "docs_and_words" else []
    doc_positions = sum(len(seq) for _, seq in units)
    total_steps = config.epochs * (word_positions + doc_positions)
    step = 0

    epoch_losses: list[float] = []
    for epoch in range(config.epochs):
        loss_sum = 0.0
        loss_count = 0
        for seq in sequences:
            for pos, center in enumerate(seq):
                alpha = learning_rate(step, total_steps, config.initial_learning_rate)
                step += 1
                reach = int(rng.integers(1, config.window + 1))
                lo = max(0, pos - reach)
                hi = min(len(seq), pos + reach + 1)
                for ctx_pos in range(lo, hi):
                    if ctx_pos == pos:
                        continue
                    context = seq[ctx_pos]
                    draws = np.searchsorted(
                        cumulative, rng.random(config.negative_samples)
                    )
                    negatives = [int(n) for n in draws if n != context]
                    loss_sum += _pair_update(
                        w_in, w_out, center, context, negatives, alpha
                    )
                    loss_count += 1
        mean_loss = loss_sum / loss_count if loss_count else 0.0
        epoch_losses.append(mean_loss)
        if loss_hook is not None:
            loss_hook(epoch, mean_loss)

    doc_store = None
    if config.mode == "docs_and_words":
        doc_vectors = (rng.random((len(units), dim)) - 0.5) / dim
        for _ in range(config.epochs):
            for u, (_, seq) in enumerate(units):
                for target in seq:
                    alpha = learning_rate(step, total_steps, config.initial_learning_rate)
                    step += 1
                    draws = rng.integers(0, vocab_size, size=config.negative_samples)
                    negatives = [int(n) for n in draws if n != target]
                    _vector_update(doc_vectors[u], w_in, target, negatives, alpha)
        doc_store = VectorStore.from_entries(
            dim, {unit_id: doc_vectors[u] for u, (unit_id, _) in enumerate(units)}
        )

    tokens = sorted(corpus.index)
    word_store = VectorStore.from_entries(
        dim, {t: w_in[corpus.index[t]] for t in tokens}
    )
    return TrainResult(
        word_store=word_store,
        doc_store=doc_store,
        epoch_losses=tuple(epoch_losses),
    )


def _pair_update(
    w_in: np.ndarray,
    w_out: np.ndarray,
    center: int,
    context: int,
    negatives: list[int],
    alpha: float,
) -> float:
    """One SGD step on a (center, context) pair; returns the pre-update loss."""
    v = w_in[center]
    u_ctx = w_out[context]
    dot_pos = float(np.dot(v, u_ctx))
    loss = -_log_sigmoid(dot_pos)
    g_pos = _sigmoid(dot_pos) - 1.0
    grad_v = g_pos * u_ctx
    w_out[context] = u_ctx - alpha * g_pos * v
    for neg in negatives:
        u_neg = w_out[neg]
        dot_neg = float(np.dot(v, u_neg))
        loss -= _log_sigmoid(-dot_neg)
        g_neg = _sigmoid(dot_neg)
        grad_v = grad_v + g_neg * u_neg
        w_out[neg] = u_neg - alpha * g_neg * v
    w_in[center] = v - alpha * grad_v
    return loss


def _vector_update(
    doc_vector: np.ndarray,
    targets: np.ndarray,
    positive: int,
    negatives: list[int],
    alpha: float,
) -> None:
    """SGD step moving ``doc_vector`` toward target row ``positive``; targets stay frozen."""
    g_pos = _sigmoid(float(np.dot(doc_vector, targets[positive]))) - 1.0
    grad = g_pos * targets[positive]
    for neg in negatives:
        g_neg = _sigmoid(float(np.dot(doc_vector, targets[neg])))
        grad = grad + g_neg * targets[neg]
    doc_vector -= alpha * grad


_inference_contexts: "weakref.WeakKeyDictionary[VectorStore, tuple[dict[str, int], np.ndarray]]"
_inference_contexts = weakref.WeakKeyDictionary()


def _inference_context(store: VectorStore) -> tuple[dict[str, int], np.ndarray]:
    cached = _inference_contexts.get(store)
    if cached is None:
        vocab = sorted(store.keys())
        cached = (
            {t: i for i, t in enumerate(vocab)},
            np.stack([store.entries[t] for t in vocab]),
        )
        _inference_contexts[store] = cached
    return cached


def infer_doc_vector(
    tokens: Iterable[str],
    word_store: VectorStore,
    config: TrainConfig,
    seed: int,
) -> np.ndarray:
    """Fit a fresh document vector to a token sequence, word vectors frozen.

    The vector starts from the seeded RNG and takes ``config.epochs`` passes
    of negative-sampling steps toward the in-vocabulary tokens, with uniform
    negatives over the store vocabulary. Same seed, same result; inference
    involves randomness, so different seeds give different vectors.
    """
    token_list = list(tokens)
    vocab_index, targets = _inference_context(word_store)
    seq = [vocab_index[t] for t in token_list if t in vocab_index]
    if not seq:
        raise OutOfVocabularyError(
            message=f"no in-vocabulary tokens among: {token_list!r}"
        )
    rng = np.random.default_rng(seed)
    vector = (rng.random(config.dimension) - 0.5) / config.dimension
    total_steps = config.epochs * len(seq)
    step = 0
    for _ in range(config.epochs):
        for positive in seq:
            alpha = learning_rate(step, total_steps, config.initial_learning_rate)
            step += 1
            draws = rng.integers(0, targets.shape[0], size=config.negative_samples)
            negatives = [int(n) for n in draws if n != positive]
            _vector_update(vector, targets, positive, negatives, alpha)
    return vector


def derived_seed(base_seed: int, *key: int) -> int:
    """Deterministic child seed for per-unit inference (sentence i, paragraph (d, p), ...)."""
    ss = np.random.SeedSequence(entropy=base_seed, spawn_key=tuple(key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
