"""Dataset loading/validation and the planted synthetic benchmark."""

from claimforge.ingest.datasets import ClaimRecord, load_dataset, save_dataset
from claimforge.ingest.planted import (
    PlantedBenchmark,
    exhaustive_answer_key,
    make_planted_benchmark,
    planted_lexicon,
)

__all__ = [
    "ClaimRecord",
    "PlantedBenchmark",
    "exhaustive_answer_key",
    "load_dataset",
    "make_planted_benchmark",
    "planted_lexicon",
    "save_dataset",
]
