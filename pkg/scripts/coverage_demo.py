"""Show how topic-aware summarization covers minority topics.

Builds a small two-topic document, trains embeddings on topical filler
text, then prints a plain extractive summary next to a topic-clustered
one. The plain ranking tends to spend the whole budget on the dominant
topic; clustering first guarantees every topic at least one sentence:

    python3 scripts/coverage_demo.py
"""
from __future__ import annotations

import argparse
import warnings

from semrank import (
    SummaryRequest,
    ThresholdCalibration,
    TrainConfig,
    build_corpus,
    builtin_profile,
    calibrate,
    segment,
    summarize,
    summarize_by_topics,
    train,
)

# Deliberately unbalanced: four paragraphs of sport, two of weather.
DOCUMENT = (
    "The league match ended with a late winning goal. The striker scored "
    "after a fast counter attack.\n\n"
    "The coach praised the team defence after the match. The goalkeeper "
    "saved two penalty kicks in the second half.\n\n"
    "Fans celebrated the victory across the stadium. The club climbed "
    "three places in the league table.\n\n"
    "The captain dedicated the goal to the supporters. The team now "
    "prepares for the cup final next week.\n\n"
    "Meanwhile heavy rain flooded several roads in the region. Forecasters "
    "warned of further storms over the weekend.\n\n"
    "Temperatures dropped sharply as the cold front arrived. Drivers were "
    "told to avoid the flooded valley roads."
)

TRAINING_TEXTS = [
    "The match ended with a goal. The striker scored a goal.\n\n"
    "The team won the league match. The coach praised the striker.\n\n"
    "Fans celebrated the victory. The goalkeeper saved a penalty.\n\n"
    "The club won the cup. The captain led the team. The defence held firm.",
    "Heavy rain flooded the roads. Storms crossed the region overnight.\n\n"
    "Forecasters warned of rain and storms. The cold front brought low "
    "temperatures.\n\n"
    "Flooded roads closed the valley. Drivers faced flooded roads.\n\n"
    "The weekend forecast promised more rain.",
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ratio", type=float, default=0.25)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    profile = builtin_profile("en")
    named = [(f"text{i}", segment(t, profile)) for i, t in enumerate(TRAINING_TEXTS)]
    config = TrainConfig(
        dimension=24,
        window=4,
        negative_samples=4,
        epochs=30,
        initial_learning_rate=0.05,
        min_count=1,
        seed=7,
    )
    stores = train(build_corpus(named, min_count=1), config).embeddings(config)

    document = segment(DOCUMENT, profile)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        calibration = calibrate([segment(t, profile) for t in TRAINING_TEXTS],
                                stores, source="average")
    print(f"calibrated threshold {calibration.threshold:.3f} "
          f"(mean {calibration.mean:.3f}, std {calibration.std:.3f}, "
          f"{calibration.sample_count} pairs)")

    request = SummaryRequest(
        document=document, ratio=args.ratio, doc_vector_source="average"
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        plain = summarize(request, stores, seed=args.seed)
        topics = summarize_by_topics(
            document, calibration, request, stores, seed=args.seed
        )

    print("\nplain summary:")
    for index in plain.selected:
        print(f"  [{index}] {document.sentence_text(index)}")

    print("\ntopic-aware summary:")
    for i, topic in enumerate(topics):
        paragraphs = ", ".join(map(str, topic.cluster))
        print(f"  topic {i} (paragraphs {paragraphs}):")
        for index in topic.sentence_indices:
            print(f"    [{index}] {document.sentence_text(index)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
