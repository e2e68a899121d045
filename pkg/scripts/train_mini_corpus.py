"""Train word and paragraph vectors on the bundled mini corpus.

Writes a word-vector file and prints nearest neighbours for a few probe
words so a fresh checkout can sanity-check training end to end:

    python3 scripts/train_mini_corpus.py --output /tmp/mini_vectors.txt
"""
from __future__ import annotations

import argparse
import time
from pathlib import Path

from semrank import (
    TrainConfig,
    build_corpus,
    builtin_profile,
    nearest_neighbors,
    save_word_vectors,
    segment,
    train,
)

DEFAULT_CORPUS = Path(__file__).resolve().parent.parent / "tests" / "data" / "bbc_mini"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", type=Path, default=DEFAULT_CORPUS,
                        help="corpus root containing 'News Articles/'")
    parser.add_argument("--output", type=Path, default=Path("mini_vectors.txt"))
    parser.add_argument("--doc-output", type=Path, default=None)
    parser.add_argument("--dimension", type=int, default=48)
    parser.add_argument("--epochs", type=int, default=8)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--probes", nargs="*",
                        default=["game", "club", "company"])
    args = parser.parse_args()

    profile = builtin_profile("en")
    named = []
    for path in sorted((args.corpus / "News Articles").glob("*/*.txt")):
        text = path.read_text(encoding="utf-8", errors="replace")
        named.append((f"{path.parent.name}/{path.stem}", segment(text, profile)))
    print(f"read {len(named)} articles from {args.corpus}")

    config = TrainConfig(
        dimension=args.dimension,
        window=5,
        negative_samples=5,
        epochs=args.epochs,
        initial_learning_rate=0.05,
        min_count=2,
        seed=args.seed,
    )
    started = time.perf_counter()
    result = train(build_corpus(named, min_count=config.min_count), config)
    elapsed = time.perf_counter() - started
    print(f"trained {len(result.word_store)} word vectors in {elapsed:.1f}s "
          f"(loss {result.epoch_losses[0]:.4f} -> {result.epoch_losses[-1]:.4f})")

    save_word_vectors(result.word_store, args.output)
    print(f"word vectors -> {args.output}")
    if args.doc_output is not None and result.doc_store is not None:
        save_word_vectors(result.doc_store, args.doc_output)
        print(f"paragraph vectors -> {args.doc_output}")

    for probe in args.probes:
        if probe not in result.word_store:
            print(f"{probe}: not in vocabulary")
            continue
        neighbours = nearest_neighbors(
            result.word_store.vector(probe),
            result.word_store,
            k=6,
            exclude=frozenset({probe}),
        )
        listing = ", ".join(f"{token} ({score:.2f})" for token, score in neighbours)
        print(f"{probe}: {listing}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
