"""Command-line surface: summarize, keywords, cluster, train-embeddings,
calibrate, evaluate.

Exit codes: 0 success, 1 usage error, 2 data/format error. Plain output is
for reading; structured output is one JSON record per line with stable
field names. The default language profile comes from SEMRANK_LANGUAGE.
"""
from __future__ import annotations

import json
from pathlib import Path

import click

from .embedding_store import load_word_vectors, save_word_vectors
from .embedding_train import Embeddings, TrainConfig, build_corpus, train
from .errors import SemrankError
from .evaluate import EvalConfig, evaluate_corpus, render_report
from .keywords import KeywordRequest, extract_keywords
from .summarize import SummaryRequest, summarize
from .text_core import get_profile, segment
from .topics import (
    calibrate as calibrate_corpus,
    cluster as cluster_document,
    load_calibration,
    save_calibration,
    summarize_by_topics,
)

SETTINGS = {"show_default": True, "help_option_names": ["-h", "--help"]}

language_option = click.option(
    "--language",
    "-l",
    default="en",
    envvar="SEMRANK_LANGUAGE",
    show_envvar=True,
    help="Language profile id (en, fa) or path to a profile file.",
)
format_option = click.option(
    "--output-format",
    type=click.Choice(["plain", "structured"]),
    default="plain",
    help="plain for humans, structured for line-delimited JSON records.",
)
vectors_option = click.option(
    "--vectors",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Word-vector file trained by train-embeddings.",
)
seed_option = click.option("--seed", type=int, default=0, help="Base random seed.")


def _embeddings(vectors: str | None) -> Embeddings | None:
    if vectors is None:
        return None
    words = load_word_vectors(vectors)
    return Embeddings(words=words, config=TrainConfig(dimension=words.dimension))


def _document(path: str, language: str):
    profile = get_profile(language)
    return segment(Path(path).read_text(encoding="utf-8"), profile), profile


def _emit(records, output_format: str, plain) -> None:
    if output_format == "structured":
        for record in records:
            click.echo(json.dumps(record, ensure_ascii=False, sort_keys=True))
    else:
        for line in plain:
            click.echo(line)


@click.group(context_settings=SETTINGS)
def cli() -> None:
    """Graph-based summarization, keyword extraction, and topic tools."""


@cli.command(name="summarize")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--ratio", type=click.FloatRange(0.0, 1.0, min_open=True), default=None,
              help="Fraction of sentences to keep [default: 0.2 unless --words].")
@click.option("--words", type=click.IntRange(min=1), default=None,
              help="Word budget instead of --ratio.")
@click.option("--method", type=click.Choice(["semantic", "baseline_overlap"]),
              default="semantic")
@click.option("--source", type=click.Choice(["trained_inference", "average"]),
              default="trained_inference", help="How sentence vectors are produced.")
@click.option("--floor", type=click.FloatRange(min=0.0), default=0.0,
              help="Drop sentence-graph edges at or below this similarity.")
@vectors_option
@seed_option
@language_option
@format_option
def summarize_command(input_file, ratio, words, method, source, floor, vectors,
                      seed, language, output_format):
    """Print the top-ranked sentences of INPUT_FILE in original order."""
    if method == "semantic" and vectors is None:
        raise click.UsageError("--vectors is required for the semantic method")
    document, _ = _document(input_file, language)
    request = SummaryRequest(
        document=document,
        ratio=ratio,
        word_limit=words,
        method=method,
        doc_vector_source=source,
        similarity_floor=floor,
    )
    summary = summarize(request, _embeddings(vectors), seed=seed)
    _emit(
        (
            {
                "record": "sentence",
                "index": i,
                "score": float(summary.scores.scores[i]),
                "text": document.sentence_text(i),
            }
            for i in summary.selected
        ),
        output_format,
        (document.sentence_text(i) for i in summary.selected),
    )


@cli.command(name="keywords")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(["bm25", "semantic_graph"]), default="bm25")
@click.option("--top-k", type=click.IntRange(min=1), default=10)
@click.option("--max-n", type=click.IntRange(min=1), default=10,
              help="Longest n-gram a keyword may collapse to.")
@click.option("--window", type=click.IntRange(min=1), default=2,
              help="Co-occurrence window for the semantic graph.")
@click.option("--min-ngram-count", type=click.IntRange(min=1), default=2,
              help="An n-gram must occur strictly more often than this.")
@click.option("--k1", type=float, default=1.5, help="BM25 k1.")
@click.option("--b", type=float, default=0.75, help="BM25 b.")
@vectors_option
@language_option
@format_option
def keywords_command(input_file, method, top_k, max_n, window, min_ngram_count,
                     k1, b, vectors, language, output_format):
    """Extract the most important words/n-grams of INPUT_FILE."""
    if method == "semantic_graph" and vectors is None:
        raise click.UsageError("--vectors is required for the semantic_graph method")
    document, _ = _document(input_file, language)
    request = KeywordRequest(
        document=document,
        method=method,
        top_k=top_k,
        max_n=max_n,
        window=window,
        min_ngram_count=min_ngram_count,
        k1=k1,
        b=b,
    )
    store = _embeddings(vectors)
    result = extract_keywords(request, store.words if store else None)
    _emit(
        (
            {
                "record": "keyword",
                "ngram": list(entry.ngram),
                "score": entry.score,
                "source_word": entry.source_word,
            }
            for entry in result.keywords
        ),
        output_format,
        (" ".join(entry.ngram) for entry in result.keywords),
    )


@cli.command(name="cluster")
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--calibration", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Threshold file written by the calibrate command.")
@click.option("--vectors", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Word-vector file trained by train-embeddings.")
@click.option("--source", type=click.Choice(["average", "trained_inference"]),
              default="average", help="How paragraph vectors are produced.")
@click.option("--representative", type=click.Choice(["previous", "mean"]),
              default="previous", help="What a new paragraph is compared against.")
@click.option("--summary-ratio", type=click.FloatRange(0.0, 1.0, min_open=True),
              default=None, help="Also summarize each topic at this ratio.")
@seed_option
@language_option
@format_option
def cluster_command(input_file, calibration, vectors, source, representative,
                    summary_ratio, seed, language, output_format):
    """Group INPUT_FILE's paragraphs into contiguous topic clusters."""
    document, _ = _document(input_file, language)
    stores = _embeddings(vectors)
    loaded = load_calibration(calibration)
    records = []
    plain = []
    if summary_ratio is None:
        result = cluster_document(
            document, loaded, stores,
            source=source, seed=seed, representative=representative,
        )
        for i, topic in enumerate(result.clusters):
            records.append(
                {"record": "cluster", "index": i, "paragraphs": list(topic)}
            )
            plain.append(f"cluster {i}: paragraphs {', '.join(map(str, topic))}")
    else:
        template = SummaryRequest(document=document, ratio=summary_ratio)
        for i, topic in enumerate(
            summarize_by_topics(
                document, loaded, template, stores,
                source=source, seed=seed, representative=representative,
            )
        ):
            records.append(
                {
                    "record": "topic_summary",
                    "index": i,
                    "paragraphs": list(topic.cluster),
                    "sentence_indices": list(topic.sentence_indices),
                    "text": topic.summary.text(),
                }
            )
            plain.append(f"cluster {i}: paragraphs {', '.join(map(str, topic.cluster))}")
            plain.extend(f"  {line}" for line in topic.summary.sentences())
    _emit(records, output_format, plain)


@cli.command(name="train-embeddings")
@click.argument("inputs", type=click.Path(exists=True, dir_okay=False), nargs=-1,
                required=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), required=True,
              help="Where to write the word-vector file.")
@click.option("--doc-output", type=click.Path(dir_okay=False), default=None,
              help="Where to write paragraph vectors (docs_and_words mode).")
@click.option("--dimension", type=click.IntRange(min=2), default=100)
@click.option("--window", type=click.IntRange(min=1), default=5)
@click.option("--negative", type=click.IntRange(min=1), default=5,
              help="Negative samples per positive pair.")
@click.option("--epochs", type=click.IntRange(min=1), default=20)
@click.option("--learning-rate", type=click.FloatRange(min=0.0, min_open=True),
              default=0.025)
@click.option("--min-count", type=click.IntRange(min=1), default=2,
              help="Discard tokens occurring fewer times than this.")
@click.option("--train-seed", type=click.IntRange(min=0), default=1, help="Training seed.")
@click.option("--mode", type=click.Choice(["docs_and_words", "words_only"]),
              default="docs_and_words")
@language_option
@format_option
def train_command(inputs, output, doc_output, dimension, window, negative, epochs,
                  learning_rate, min_count, train_seed, mode, language, output_format):
    """Train word (and paragraph) vectors on the INPUTS text files."""
    profile = get_profile(language)
    named = [
        (Path(path).name, segment(Path(path).read_text(encoding="utf-8"), profile))
        for path in inputs
    ]
    corpus = build_corpus(named, min_count=min_count)
    config = TrainConfig(
        dimension=dimension,
        window=window,
        negative_samples=negative,
        epochs=epochs,
        initial_learning_rate=learning_rate,
        min_count=min_count,
        seed=train_seed,
        mode=mode,
    )
    result = train(corpus, config)
    save_word_vectors(result.word_store, output)
    doc_count = 0
    if doc_output is not None and result.doc_store is not None:
        save_word_vectors(result.doc_store, doc_output)
        doc_count = len(result.doc_store)
    _emit(
        [
            {
                "record": "training",
                "vocabulary": len(result.word_store),
                "documents": len(named),
                "paragraph_vectors": doc_count,
                "epochs": epochs,
                "final_loss": result.epoch_losses[-1],
            }
        ],
        output_format,
        [
            f"trained {len(result.word_store)} word vectors"
            f" ({doc_count} paragraph vectors) over {len(named)} files"
        ],
    )


@cli.command(name="calibrate")
@click.argument("inputs", type=click.Path(exists=True, dir_okay=False), nargs=-1,
                required=True)
@click.option("--vectors", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Word-vector file trained by train-embeddings.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), required=True,
              help="Where to write the calibration file.")
@click.option("--metric", type=click.Choice(["similarity", "one_minus_similarity"]),
              default="similarity")
@click.option("--source", type=click.Choice(["average", "trained_inference"]),
              default="average", help="How paragraph vectors are produced.")
@click.option("--corpus-id", default="", help="Identifier recorded in the output.")
@seed_option
@language_option
@format_option
def calibrate_command(inputs, vectors, output, metric, source, corpus_id, seed,
                      language, output_format):
    """Measure the topic-merge threshold over the INPUTS training texts."""
    profile = get_profile(language)
    documents = [
        segment(Path(path).read_text(encoding="utf-8"), profile) for path in inputs
    ]
    calibration = calibrate_corpus(
        documents,
        _embeddings(vectors),
        source=source,
        metric=metric,
        seed=seed,
        corpus_id=corpus_id,
    )
    save_calibration(calibration, output)
    _emit(
        [
            {
                "record": "calibration",
                "mean": calibration.mean,
                "std": calibration.std,
                "sample_count": calibration.sample_count,
                "metric": calibration.metric,
            }
        ],
        output_format,
        [
            f"mean {calibration.mean:.6f}, std {calibration.std:.6f}"
            f" over {calibration.sample_count} paragraph pairs -> {output}"
        ],
    )


def _parse_seeds(text: str) -> tuple[int, ...]:
    text = text.strip()
    if ".." in text:
        lo, _, hi = text.partition("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(part) for part in text.split(",") if part.strip())


@cli.command(name="evaluate")
@click.option("--corpus", type=click.Path(exists=True, file_okay=False), required=True,
              help="Corpus root: 'News Articles/<cat>/*.txt' + 'Summaries/...'.")
@click.option("--vectors", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Word-vector file trained by train-embeddings.")
@click.option("--runs", type=click.IntRange(min=1), default=None,
              help="Runs per document [default: number of seeds].")
@click.option("--ratios", default="0.2,0.5,0.8", help="Comma-separated ratios.")
@click.option("--seeds", default="1..10",
              help="Run seeds: 'a..b' range or comma-separated list.")
@click.option("--methods", default="semantic,baseline_overlap",
              help="Comma-separated subset of semantic,baseline_overlap.")
@click.option("--source", type=click.Choice(["trained_inference", "average"]),
              default="trained_inference", help="How sentence vectors are produced.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
              help="Write the report here instead of standard output.")
@language_option
def evaluate_command(corpus, vectors, runs, ratios, seeds, methods, source, output,
                     language):
    """Score summaries against gold references over a whole corpus."""
    seed_list = _parse_seeds(seeds)
    config = EvalConfig(
        runs_per_document=len(seed_list) if runs is None else runs,
        ratios=tuple(float(r) for r in ratios.split(",") if r.strip()),
        seeds=seed_list,
        methods=tuple(m.strip() for m in methods.split(",") if m.strip()),
        doc_vector_source=source,
    )
    report = evaluate_corpus(corpus, config, _embeddings(vectors), get_profile(language))
    text = render_report(report)
    if output is None:
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text, encoding="utf-8")
        click.echo(f"report written to {output}")


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-code mapping."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as done:
        return done.exit_code
    except click.UsageError as usage:
        usage.show()
        return 1
    except ValueError as bad_value:
        click.echo(f"usage error: {bad_value}", err=True)
        return 1
    except KeyError as missing:
        click.echo(f"usage error: unknown language profile {missing}", err=True)
        return 1
    except (SemrankError, OSError) as failure:
        click.echo(f"error: {failure}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
