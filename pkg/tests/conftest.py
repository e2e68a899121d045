from pathlib import Path

import numpy as np
import pytest

from semrank import (
    Embeddings,
    TrainConfig,
    VectorStore,
    WeightedGraph,
    build_corpus,
    builtin_profile,
    segment,
    train,
)

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def en_profile():
    return builtin_profile("en")


@pytest.fixture(scope="session")
def fa_profile():
    return builtin_profile("fa")


@pytest.fixture(scope="session")
def bbc_mini_dir() -> Path:
    return DATA_DIR / "bbc_mini"


@pytest.fixture(scope="session")
def persian_sample() -> str:
    return (DATA_DIR / "persian_sample.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def news_doc(bbc_mini_dir, en_profile):
    text = (bbc_mini_dir / "News Articles" / "tech" / "001.txt").read_text(
        encoding="utf-8"
    )
    return segment(text, en_profile)


def _graph_suite() -> list[tuple[str, WeightedGraph]]:
    directed = WeightedGraph.directed_graph
    undirected = WeightedGraph.undirected_graph
    return [
        ("chain3", directed(3, {(0, 1): 1.0, (1, 2): 1.0})),
        ("single", directed(1, {})),
        ("cycle2", directed(2, {(0, 1): 1.0, (1, 0): 1.0})),
        ("star4", directed(4, {(0, 1): 1.0, (0, 2): 1.0, (0, 3): 1.0})),
        ("sink3", directed(3, {(0, 2): 1.0, (1, 2): 1.0})),
        ("two_pairs", undirected(4, {(0, 1): 1.0, (2, 3): 1.0})),
        (
            "complete4",
            undirected(4, {(i, j): 1.0 for i in range(4) for j in range(i + 1, 4)}),
        ),
        (
            "triangle_weighted",
            undirected(3, {(0, 1): 0.2, (1, 2): 0.5, (0, 2): 0.8}),
        ),
        (
            "path4",
            undirected(4, {(0, 1): 1.0, (1, 2): 1.0, (2, 3): 1.0}),
        ),
        (
            "digraph6",
            directed(
                6,
                {(0, 1): 0.3, (1, 2): 1.2, (2, 0): 0.7, (2, 3): 0.4, (4, 2): 2.0},
            ),
        ),
        (
            "two_cycles",
            directed(4, {(0, 1): 0.5, (1, 0): 1.5, (2, 3): 2.0, (3, 2): 0.25}),
        ),
        (
            "funnel",
            directed(
                4, {(0, 1): 1.0, (0, 2): 3.0, (1, 3): 2.0, (2, 3): 0.5, (3, 0): 1.0}
            ),
        ),
    ]


@pytest.fixture(scope="session")
def fixture_graphs():
    return _graph_suite()


@pytest.fixture(scope="session")
def tiny_store() -> VectorStore:
    entries = {
        "north": np.array([1.0, 0.0, 0.0, 0.0]),
        "south": np.array([-1.0, 0.0, 0.0, 0.0]),
        "east": np.array([0.0, 1.0, 0.0, 0.0]),
        "west": np.array([0.0, -1.0, 0.0, 0.0]),
        "diag": np.array([1.0, 1.0, 0.0, 0.0]),
        "up": np.array([0.0, 0.0, 1.0, 0.0]),
    }
    return VectorStore.from_entries(4, entries)


@pytest.fixture(scope="session")
def mini_embeddings(bbc_mini_dir, en_profile) -> Embeddings:
    """Small real embeddings trained once per session on eight articles."""
    articles = sorted((bbc_mini_dir / "News Articles").glob("*/*.txt"))[:8]
    named = [
        (f"{p.parent.name}/{p.name}", segment(p.read_text(encoding="utf-8"), en_profile))
        for p in articles
    ]
    config = TrainConfig(
        dimension=24,
        window=4,
        negative_samples=4,
        epochs=10,
        min_count=2,
        seed=11,
        mode="docs_and_words",
    )
    corpus = build_corpus(named, min_count=config.min_count)
    result = train(corpus, config)
    return result.embeddings(config)
