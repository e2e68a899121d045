import json

import pytest

from semrank import load_word_vectors
from semrank.cli import main

TEN_SENTENCES = (
    "Solar panels convert sunlight into electricity. "
    "Wind turbines capture moving air. "
    "Hydro plants use falling water. "
    "Batteries store surplus energy for later. "
    "Grid operators balance supply and demand. "
    "Solar farms cover large fields. "
    "Wind farms line the coast. "
    "Engineers monitor the equipment daily. "
    "Storms can damage exposed hardware. "
    "Careful planning keeps the lights on."
)

TRAIN_FILES = {
    "fox1.txt": (
        "The quick red fox jumps over the lazy dog.\n\n"
        "The red fox runs through the quiet forest.\n\n"
        "A clever fox hunts small animals in the forest."
    ),
    "whale1.txt": (
        "The blue whale swims in the deep ocean.\n\n"
        "A whale sings long songs under the water.\n\n"
        "The ocean hides the great blue whale."
    ),
    "mixed.txt": (
        "The fox watches the ocean from the shore.\n\n"
        "The whale never sees the forest.\n\n"
        "Animals live in the forest and the ocean."
    ),
}


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """Train once and calibrate once; every CLI test reuses the artifacts."""
    root = tmp_path_factory.mktemp("cli")
    train_paths = []
    for name, text in TRAIN_FILES.items():
        path = root / name
        path.write_text(text, encoding="utf-8")
        train_paths.append(str(path))
    vectors = root / "vectors.txt"
    doc_vectors = root / "paragraphs.txt"
    code = main(
        [
            "train-embeddings",
            *train_paths,
            "-o",
            str(vectors),
            "--doc-output",
            str(doc_vectors),
            "--dimension",
            "16",
            "--window",
            "3",
            "--negative",
            "3",
            "--epochs",
            "4",
            "--min-count",
            "1",
            "--train-seed",
            "7",
        ]
    )
    assert code == 0 and vectors.exists() and doc_vectors.exists()
    calibration = root / "calibration.txt"
    code = main(
        [
            "calibrate",
            *train_paths,
            "--vectors",
            str(vectors),
            "-o",
            str(calibration),
        ]
    )
    assert code == 0 and calibration.exists()

    doc = root / "doc.txt"
    doc.write_text(TEN_SENTENCES, encoding="utf-8")
    fox_doc = root / "fox_doc.txt"
    fox_doc.write_text(
        "The red fox runs through the forest. "
        "A clever fox hunts small animals. "
        "The lazy dog sleeps near the shore. "
        "The quick fox jumps over the dog.",
        encoding="utf-8",
    )
    topics_doc = root / "topics_doc.txt"
    topics_doc.write_text(
        "The red fox runs through the forest. The fox hunts small animals.\n\n"
        "The quick fox jumps over the lazy dog. The clever fox watches the quiet forest.\n\n"
        "The blue whale swims in the deep ocean. The whale sings under the water.\n\n"
        "The ocean hides the great whale. The whale never sees the forest.",
        encoding="utf-8",
    )

    corpus = root / "corpus"
    articles = {
        "nature/fox": (
            "The red fox runs through the forest. A clever fox hunts small animals. "
            "The lazy dog sleeps near the shore. The quick fox jumps over the dog.",
            "The red fox runs through the forest.",
        ),
        "nature/whale": (
            "The blue whale swims in the ocean. A whale sings under the water. "
            "The ocean hides the whale. The dog watches the water.",
            "The blue whale swims in the ocean.",
        ),
    }
    for doc_id, (article, gold) in articles.items():
        category, name = doc_id.split("/")
        article_path = corpus / "News Articles" / category / f"{name}.txt"
        article_path.parent.mkdir(parents=True, exist_ok=True)
        article_path.write_text(article, encoding="utf-8")
        gold_path = corpus / "Summaries" / category / f"{name}.txt"
        gold_path.parent.mkdir(parents=True, exist_ok=True)
        gold_path.write_text(gold, encoding="utf-8")

    return {
        "root": root,
        "vectors": str(vectors),
        "doc_vectors": str(doc_vectors),
        "calibration": str(calibration),
        "doc": str(doc),
        "fox_doc": str(fox_doc),
        "topics_doc": str(topics_doc),
        "corpus": str(corpus),
        "train_paths": train_paths,
    }


# --- exit codes -------------------------------------------------------------------


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    out = capsys.readouterr().out
    for command in ["summarize", "keywords", "cluster", "train-embeddings", "calibrate", "evaluate"]:
        assert command in out


def test_subcommand_help_shows_defaults(capsys):
    assert main(["summarize", "--help"]) == 0
    out = capsys.readouterr().out
    assert "[default: semantic]" in out
    assert "--words" in out


def test_unknown_command_is_usage_error(capsys):
    assert main(["frobnicate"]) == 1
    assert "No such command" in capsys.readouterr().err


def test_ratio_out_of_range_is_usage_error(workspace, capsys):
    assert main(["summarize", workspace["doc"], "--ratio", "0",
                 "--method", "baseline_overlap"]) == 1
    assert main(["summarize", workspace["doc"], "--ratio", "1.5",
                 "--method", "baseline_overlap"]) == 1
    capsys.readouterr()


def test_ratio_and_words_conflict(workspace, capsys):
    code = main(["summarize", workspace["doc"], "--ratio", "0.5", "--words", "10",
                 "--method", "baseline_overlap"])
    assert code == 1
    assert "usage error:" in capsys.readouterr().err


def test_semantic_requires_vectors(workspace, capsys):
    assert main(["summarize", workspace["doc"]]) == 1
    assert "--vectors" in capsys.readouterr().err
    assert main(["keywords", workspace["doc"], "--method", "semantic_graph"]) == 1
    assert "--vectors" in capsys.readouterr().err


def test_missing_input_file_is_usage_error(tmp_path, capsys):
    assert main(["summarize", str(tmp_path / "absent.txt"),
                 "--method", "baseline_overlap"]) == 1
    capsys.readouterr()


def test_unknown_language_is_usage_error(workspace, capsys):
    code = main(["summarize", workspace["doc"], "--method", "baseline_overlap",
                 "-l", "xx"])
    assert code == 1
    assert "unknown language profile" in capsys.readouterr().err


def test_malformed_vectors_file_is_data_error(workspace, tmp_path, capsys):
    bad = tmp_path / "bad_vectors.txt"
    bad.write_text("this is not a vector file\n", encoding="utf-8")
    code = main(["summarize", workspace["doc"], "--vectors", str(bad)])
    assert code == 2
    assert capsys.readouterr().err.startswith("error:")


def test_empty_input_is_data_error(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("   \n", encoding="utf-8")
    assert main(["summarize", str(empty), "--method", "baseline_overlap"]) == 2
    assert capsys.readouterr().err.startswith("error:")


# --- summarize --------------------------------------------------------------------


def test_summarize_default_ratio_keeps_two_of_ten(workspace, capsys):
    assert main(["summarize", workspace["doc"], "--method", "baseline_overlap"]) == 0
    lines = capsys.readouterr().out.splitlines()
    sentences = [s.strip() + "." for s in TEN_SENTENCES.rstrip(".").split(". ")]
    assert len(lines) == 2
    indices = [sentences.index(line) for line in lines]
    assert indices == sorted(indices)


def test_summarize_word_budget(workspace, capsys):
    assert main(["summarize", workspace["doc"], "--words", "6",
                 "--method", "baseline_overlap"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1  # every sentence has 5-7 words; one fills the budget


def test_summarize_structured_records(workspace, capsys):
    assert main(["summarize", workspace["doc"], "--method", "baseline_overlap",
                 "--output-format", "structured"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    previous = -1
    for line in lines:
        record = json.loads(line)
        assert list(record) == sorted(record)  # stable field order in the bytes
        assert record["record"] == "sentence"
        assert isinstance(record["score"], float)
        assert record["text"] in TEN_SENTENCES
        assert record["index"] > previous
        previous = record["index"]


def test_summarize_semantic_deterministic(workspace, capsys):
    args = ["summarize", workspace["fox_doc"], "--vectors", workspace["vectors"],
            "--ratio", "0.5", "--output-format", "structured"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    assert len(first.splitlines()) == 2


def test_summarize_structured_keeps_unicode(workspace, persian_sample, capsys):
    path = workspace["root"] / "persian.txt"
    path.write_text(persian_sample, encoding="utf-8")
    assert main(["summarize", str(path), "-l", "fa", "--method", "baseline_overlap",
                 "--output-format", "structured"]) == 0
    out = capsys.readouterr().out
    assert any(ord(ch) > 127 for ch in out)  # no \u escapes for Persian text
    assert "\\u" not in out


def test_language_env_variable_is_honoured(workspace, monkeypatch, capsys):
    monkeypatch.setenv("SEMRANK_LANGUAGE", "nope")
    assert main(["summarize", workspace["doc"], "--method", "baseline_overlap"]) == 1
    capsys.readouterr()
    monkeypatch.setenv("SEMRANK_LANGUAGE", "en")
    assert main(["summarize", workspace["doc"], "--method", "baseline_overlap"]) == 0
    capsys.readouterr()


# --- keywords ---------------------------------------------------------------------


def test_keywords_plain_output(workspace, capsys):
    assert main(["keywords", workspace["fox_doc"], "--top-k", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert 1 <= len(lines) <= 3
    assert all(line.strip() for line in lines)


def test_keywords_structured_records(workspace, capsys):
    assert main(["keywords", workspace["fox_doc"], "--top-k", "5",
                 "--output-format", "structured"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert 1 <= len(lines) <= 5
    for line in lines:
        record = json.loads(line)
        assert record["record"] == "keyword"
        assert isinstance(record["ngram"], list) and record["ngram"]
        assert record["source_word"] in record["ngram"]
        assert isinstance(record["score"], float)


def test_keywords_semantic_graph(workspace, capsys):
    assert main(["keywords", workspace["fox_doc"], "--method", "semantic_graph",
                 "--vectors", workspace["vectors"], "--top-k", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines


# --- cluster ----------------------------------------------------------------------


def test_cluster_plain_output(workspace, capsys):
    assert main(["cluster", workspace["topics_doc"],
                 "--calibration", workspace["calibration"],
                 "--vectors", workspace["vectors"]]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(line.startswith("cluster ") for line in lines)


def test_cluster_structured_is_a_partition(workspace, capsys):
    assert main(["cluster", workspace["topics_doc"],
                 "--calibration", workspace["calibration"],
                 "--vectors", workspace["vectors"],
                 "--output-format", "structured"]) == 0
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert all(record["record"] == "cluster" for record in records)
    flat = [p for record in records for p in record["paragraphs"]]
    assert flat == list(range(4))


def test_cluster_with_topic_summaries(workspace, capsys):
    assert main(["cluster", workspace["topics_doc"],
                 "--calibration", workspace["calibration"],
                 "--vectors", workspace["vectors"],
                 "--summary-ratio", "0.5",
                 "--output-format", "structured"]) == 0
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert records
    for record in records:
        assert record["record"] == "topic_summary"
        assert record["sentence_indices"]
        assert record["text"].strip()


def test_cluster_requires_calibration_file(workspace, capsys):
    assert main(["cluster", workspace["topics_doc"],
                 "--vectors", workspace["vectors"]]) == 1
    capsys.readouterr()


# --- train-embeddings / calibrate ---------------------------------------------------


def test_trained_vector_files_load(workspace):
    words = load_word_vectors(workspace["vectors"])
    assert words.dimension == 16
    assert "fox" in words and "whale" in words
    docs = load_word_vectors(workspace["doc_vectors"])
    assert "fox1.txt#0" in docs
    assert docs.dimension == 16


def test_train_words_only_structured(workspace, tmp_path, capsys):
    out_path = tmp_path / "words_only.txt"
    code = main(
        [
            "train-embeddings",
            *workspace["train_paths"],
            "-o",
            str(out_path),
            "--dimension",
            "8",
            "--epochs",
            "2",
            "--min-count",
            "1",
            "--mode",
            "words_only",
            "--output-format",
            "structured",
        ]
    )
    assert code == 0
    record = json.loads(capsys.readouterr().out.splitlines()[-1])
    assert record["record"] == "training"
    assert record["paragraph_vectors"] == 0
    assert record["documents"] == 3
    assert record["vocabulary"] == len(load_word_vectors(str(out_path)))
    assert isinstance(record["final_loss"], float)


def test_calibrate_structured_record(workspace, tmp_path, capsys):
    out_path = tmp_path / "cal.txt"
    code = main(
        [
            "calibrate",
            *workspace["train_paths"],
            "--vectors",
            workspace["vectors"],
            "-o",
            str(out_path),
            "--output-format",
            "structured",
        ]
    )
    assert code == 0
    record = json.loads(capsys.readouterr().out.splitlines()[-1])
    assert record["record"] == "calibration"
    assert record["sample_count"] >= 2
    assert record["std"] >= 0.0
    assert record["metric"] == "similarity"
    assert out_path.exists()


# --- evaluate ---------------------------------------------------------------------


def test_evaluate_writes_report_file(workspace, tmp_path, capsys):
    report_path = tmp_path / "report.txt"
    code = main(
        [
            "evaluate",
            "--corpus",
            workspace["corpus"],
            "--vectors",
            workspace["vectors"],
            "--ratios",
            "0.5",
            "--seeds",
            "1,2",
            "-o",
            str(report_path),
        ]
    )
    assert code == 0
    assert "report written to" in capsys.readouterr().out
    text = report_path.read_text(encoding="utf-8")
    assert text.startswith("# evaluation report")
    assert "id=nature/fox" in text
    assert "method=baseline_overlap" in text


def test_evaluate_stdout_and_byte_stability(workspace, tmp_path, capsys):
    args = [
        "evaluate",
        "--corpus",
        workspace["corpus"],
        "--vectors",
        workspace["vectors"],
        "--ratios",
        "0.5",
        "--seeds",
        "3,4",
        "--methods",
        "semantic",
    ]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first.startswith("# evaluation report")


def test_evaluate_seed_range_syntax(workspace, tmp_path, capsys):
    report_path = tmp_path / "report.txt"
    code = main(
        [
            "evaluate",
            "--corpus",
            workspace["corpus"],
            "--vectors",
            workspace["vectors"],
            "--ratios",
            "0.5",
            "--seeds",
            "1..3",
            "--methods",
            "baseline_overlap",
            "-o",
            str(report_path),
        ]
    )
    assert code == 0
    capsys.readouterr()
    assert "runs=" in report_path.read_text(encoding="utf-8")
    # three seeds -> three runs per document
    for line in report_path.read_text(encoding="utf-8").splitlines():
        if line.startswith("document\t"):
            fields = dict(part.split("=", 1) for part in line.split("\t")[1:])
            assert len(fields["runs"].split(",")) == 3


def test_evaluate_rejects_bad_ratio(workspace, capsys):
    code = main(
        [
            "evaluate",
            "--corpus",
            workspace["corpus"],
            "--vectors",
            workspace["vectors"],
            "--ratios",
            "0.0",
        ]
    )
    assert code == 1
    assert "usage error:" in capsys.readouterr().err
