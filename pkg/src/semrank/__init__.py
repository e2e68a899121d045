"""Graph-based extractive summarization with embedding edge weights,
keyword extraction, and sequential topic clustering."""

from .embedding_store import (
    VectorStore,
    analogy,
    cosine,
    doc_vector_by_average,
    load_word_vectors,
    nearest_neighbors,
    save_word_vectors,
)
from .embedding_train import (
    Corpus,
    Embeddings,
    TrainConfig,
    TrainResult,
    build_corpus,
    derived_seed,
    infer_doc_vector,
    learning_rate,
    sgns_gradient,
    sgns_loss,
    train,
)
from .errors import (
    DegenerateReferenceError,
    DimensionError,
    EmptyCorpusError,
    EmptyDocumentError,
    EmptyGraphError,
    FormatError,
    InsufficientCalibrationError,
    NonFiniteWeightError,
    OutOfVocabularyError,
    SemrankError,
    ZeroVectorError,
)
from .evaluate import (
    EvalConfig,
    EvalReport,
    MethodScores,
    evaluate_corpus,
    evaluate_document,
    render_report,
    rouge2,
    rouge_tokens,
)
from .graph_rank import RankVector, WeightedGraph, pagerank, weighted_rank
from .keywords import (
    KeywordEntry,
    KeywordRequest,
    KeywordResult,
    collapse_to_ngrams,
    extract_keywords,
    score_bm25,
    score_semantic_graph,
)
from .summarize import (
    Summary,
    SummaryRequest,
    rank_order,
    resized,
    select_by_ratio,
    select_by_word_limit,
    sentence_graph,
    sentence_vectors,
    summarize,
)
from .text_core import (
    LanguageProfile,
    Sentence,
    TokenizedDocument,
    builtin_profile,
    get_profile,
    load_profile,
    load_stopwords,
    normalize,
    segment,
    tokenize,
)
from .topics import (
    ClusterSet,
    METRICS,
    REPRESENTATIVES,
    ThresholdCalibration,
    TopicSummary,
    calibrate,
    cluster,
    load_calibration,
    paragraph_vectors,
    save_calibration,
    summarize_by_topics,
)

__all__ = [
    "METRICS",
    "REPRESENTATIVES",
    "ClusterSet",
    "Corpus",
    "DegenerateReferenceError",
    "DimensionError",
    "EmptyCorpusError",
    "EmptyDocumentError",
    "EmptyGraphError",
    "Embeddings",
    "EvalConfig",
    "EvalReport",
    "FormatError",
    "InsufficientCalibrationError",
    "KeywordEntry",
    "KeywordRequest",
    "KeywordResult",
    "LanguageProfile",
    "MethodScores",
    "NonFiniteWeightError",
    "OutOfVocabularyError",
    "RankVector",
    "SemrankError",
    "Sentence",
    "Summary",
    "SummaryRequest",
    "ThresholdCalibration",
    "TokenizedDocument",
    "TopicSummary",
    "TrainConfig",
    "TrainResult",
    "VectorStore",
    "WeightedGraph",
    "ZeroVectorError",
    "analogy",
    "build_corpus",
    "builtin_profile",
    "calibrate",
    "cluster",
    "collapse_to_ngrams",
    "cosine",
    "derived_seed",
    "doc_vector_by_average",
    "evaluate_corpus",
    "evaluate_document",
    "extract_keywords",
    "get_profile",
    "infer_doc_vector",
    "learning_rate",
    "load_calibration",
    "load_profile",
    "load_stopwords",
    "load_word_vectors",
    "nearest_neighbors",
    "normalize",
    "pagerank",
    "paragraph_vectors",
    "rank_order",
    "render_report",
    "resized",
    "rouge2",
    "rouge_tokens",
    "save_calibration",
    "save_word_vectors",
    "score_bm25",
    "score_semantic_graph",
    "segment",
    "select_by_ratio",
    "select_by_word_limit",
    "sentence_graph",
    "sentence_vectors",
    "sgns_gradient",
    "sgns_loss",
    "summarize",
    "summarize_by_topics",
    "tokenize",
    "train",
    "weighted_rank",
]
