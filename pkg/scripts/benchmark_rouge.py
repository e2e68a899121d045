"""Run the full summarization benchmark over a gold-summary corpus.

Trains desk-scale embeddings on the corpus articles, evaluates both
summarization methods at several ratios, and prints a compact table of
corpus-level ROUGE-2 means:

    python3 scripts/benchmark_rouge.py --ratios 0.2 0.5
"""
from __future__ import annotations

import argparse
import time
import warnings
from pathlib import Path

from semrank import (
    EvalConfig,
    TrainConfig,
    build_corpus,
    builtin_profile,
    evaluate_corpus,
    render_report,
    segment,
    train,
)

DEFAULT_CORPUS = Path(__file__).resolve().parent.parent / "tests" / "data" / "bbc_mini"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", type=Path, default=DEFAULT_CORPUS)
    parser.add_argument("--ratios", type=float, nargs="+", default=[0.2, 0.5])
    parser.add_argument("--runs", type=int, default=10)
    parser.add_argument("--dimension", type=int, default=48)
    parser.add_argument("--epochs", type=int, default=8)
    parser.add_argument("--report", type=Path, default=None,
                        help="also write the full per-document report here")
    args = parser.parse_args()

    profile = builtin_profile("en")
    named = []
    for path in sorted((args.corpus / "News Articles").glob("*/*.txt")):
        text = path.read_text(encoding="utf-8", errors="replace")
        named.append((f"{path.parent.name}/{path.stem}", segment(text, profile)))
    print(f"read {len(named)} articles from {args.corpus}")

    train_config = TrainConfig(
        dimension=args.dimension,
        window=5,
        negative_samples=5,
        epochs=args.epochs,
        initial_learning_rate=0.05,
        min_count=2,
        seed=1,
    )
    started = time.perf_counter()
    stores = train(build_corpus(named, min_count=2), train_config).embeddings(train_config)
    print(f"trained {len(stores.words)} word vectors in "
          f"{time.perf_counter() - started:.1f}s")

    config = EvalConfig(
        runs_per_document=args.runs,
        ratios=tuple(args.ratios),
        seeds=tuple(range(1, args.runs + 1)),
        methods=("semantic", "baseline_overlap"),
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = evaluate_corpus(args.corpus, config, stores)

    print(f"\n{'ratio':>6} {'method':<18} {'mean':>8} {'best mean':>10}")
    for ratio in config.ratios:
        for method in config.methods:
            key = (ratio, method)
            print(f"{ratio:>6.2f} {method:<18} "
                  f"{report.corpus_average[key]:>8.4f} "
                  f"{report.corpus_best_average[key]:>10.4f}")
    for entry in report.skipped:
        print(f"skipped: {entry}")

    if args.report is not None:
        args.report.write_text(render_report(report), encoding="utf-8")
        print(f"\nfull report -> {args.report}")
    print(f"\ntotal {time.perf_counter() - started:.1f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
