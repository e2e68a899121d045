"""Dense vector stores and the cosine-similarity primitive.

Vectors are float64 throughout; a store is immutable after construction and
safe for concurrent readers. The on-disk format is the plain text layout:
a "V D" header line, then V lines of "token v1 ... vD" with values written
at 9 significant digits.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    DimensionError,
    FormatError,
    OutOfVocabularyError,
    ZeroVectorError,
)


@dataclass(frozen=True, eq=False)
class VectorStore:
    """Token/doc-id -> dense vector map of a single fixed dimension."""

    dimension: int
    entries: dict[str, np.ndarray]
    norm_cache: dict[str, float]

    @classmethod
    def from_entries(cls, dimension: int, entries: Mapping[str, np.ndarray]) -> "VectorStore":
        if dimension < 1:
            raise ValueError("dimension must be positive")
        held: dict[str, np.ndarray] = {}
        norms: dict[str, float] = {}
        for key, vec in entries.items():
            arr = np.asarray(vec, dtype=np.float64)
            if arr.shape != (dimension,):
                raise DimensionError(
                    f"entry {key!r} has shape {arr.shape}, expected ({dimension},)"
                )
            norm = float(np.linalg.norm(arr))
            if norm == 0.0:
                raise ZeroVectorError(f"entry {key!r} is a zero vector")
            arr.setflags(write=False)
            held[key] = arr
            norms[key] = norm
        return cls(dimension=dimension, entries=held, norm_cache=norms)

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def vector(self, key: str) -> np.ndarray:
        try:
            return self.entries[key]
        except KeyError:
            raise OutOfVocabularyError(key) from None

    def keys(self) -> Iterable[str]:
        return self.entries.keys()


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity dot(a,b) / (|a||b|), clamped into [-1, 1].

    Exactly symmetric: elementwise products and the summation order are
    identical for either operand order.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise ZeroVectorError("cosine undefined for a zero vector")
    value = float(np.dot(a, b)) / (na * nb)
    return min(1.0, max(-1.0, value))


def nearest_neighbors(
    target: np.ndarray,
    store: VectorStore,
    k: int,
    exclude: frozenset[str] = frozenset(),
) -> list[tuple[str, float]]:
    """Top-k store entries by cosine to ``target``, ties broken by token."""
    scored = [
        (key, cosine(target, vec))
        for key, vec in store.entries.items()
        if key not in exclude
    ]
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored[:k]


def analogy(a: str, b: str, c: str, store: VectorStore, k: int) -> list[str]:
    """The k tokens nearest to v(b) - v(a) + v(c), excluding a, b and c."""
    for token in (a, b, c):
        if token not in store:
            raise OutOfVocabularyError(token)
    composite = store.vector(b) - store.vector(a) + store.vector(c)
    return [t for t, _ in nearest_neighbors(composite, store, k, exclude=frozenset({a, b, c}))]


def doc_vector_by_average(tokens: Iterable[str], store: VectorStore) -> np.ndarray:
    """Arithmetic mean of the in-vocabulary token vectors.

    Out-of-vocabulary tokens are skipped silently; only a fully
    out-of-vocabulary input is an error.
    """
    tokens = list(tokens)
    known = [store.entries[t] for t in tokens if t in store.entries]
    if not known:
        raise OutOfVocabularyError(
            message=f"no in-vocabulary tokens among: {tokens!r}"
        )
    return np.mean(np.stack(known), axis=0)


def load_word_vectors(path: str | Path) -> VectorStore:
    """Parse a text vector file into a store.

    Raises FormatError (with the line number) for a malformed header, a
    dimension mismatch, a duplicate token, a non-finite value, or a zero
    vector.
    """
    path = Path(path)
    with path.open(encoding="utf-8") as handle:
        header = handle.readline()
        parts = header.split()
        if len(parts) != 2:
            raise FormatError(f"header must be 'V D', got {header!r}", line=1)
        try:
            count, dimension = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"header must be two integers, got {header!r}", line=1) from None
        if count < 0 or dimension < 1:
            raise FormatError(f"invalid header counts {count} {dimension}", line=1)

        entries: dict[str, np.ndarray] = {}
        norms: dict[str, float] = {}
        for lineno in range(2, count + 2):
            line = handle.readline()
            if not line:
                raise FormatError(
                    f"expected {count} entries, file ended after {len(entries)}",
                    line=lineno,
                )
            fields = line.split()
            if len(fields) != dimension + 1:
                raise FormatError(
                    f"expected token + {dimension} values, got {len(fields)} fields",
                    line=lineno,
                )
            token = fields[0]
            if token in entries:
                raise FormatError(f"duplicate token {token!r}", line=lineno)
            try:
                vec = np.array([float(v) for v in fields[1:]], dtype=np.float64)
            except ValueError:
                raise FormatError("unparseable value", line=lineno) from None
            if not np.all(np.isfinite(vec)):
                raise FormatError(f"non-finite value for token {token!r}", line=lineno)
            norm = float(np.linalg.norm(vec))
            if norm == 0.0:
                raise FormatError(f"zero vector for token {token!r}", line=lineno)
            vec.setflags(write=False)
            entries[token] = vec
            norms[token] = norm
        trailer = handle.readline()
        if trailer.strip():
            raise FormatError("trailing content after declared entries", line=count + 2)
    return VectorStore(dimension=dimension, entries=entries, norm_cache=norms)


def save_word_vectors(store: VectorStore, path: str | Path) -> None:
    """Write a store in the documented text format, tokens sorted."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        handle.write(f"{len(store.entries)} {store.dimension}\n")
        for token in sorted(store.entries):
            values = " ".join(format(v, ".9g") for v in store.entries[token])
            handle.write(f"{token} {values}\n")
