"""Rank-based retrieval metrics. All values fall in [0, 1]."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

METRICS = ("ap", "recall", "rr")


@dataclass(frozen=True)
class RewardSpec:
    """Which metric at which cutoff defines the scalar reward."""

    metric: str = "ap"
    k: int = 50

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    def compute(self, ranking: Sequence[str], relevant: set[str]) -> float:
        return METRIC_FNS[self.metric](ranking, relevant, self.k)


def ap_at_k(ranking: Sequence[str], relevant: set[str], k: int) -> float:
    """Average precision at cutoff k, normalized by min(|relevant|, k)."""
    if not relevant:
        return 0.0
    hits = 0
    total = 0.0
    for i, doc_id in enumerate(ranking[:k], start=1):
        if doc_id in relevant:
            hits += 1
            total += hits / i
    return total / min(len(relevant), k)


def recall_at_k(ranking: Sequence[str], relevant: set[str], k: int) -> float:
    if not relevant:
        return 0.0
    found = sum(1 for doc_id in ranking[:k] if doc_id in relevant)
    return found / len(relevant)


def reciprocal_rank(ranking: Sequence[str], relevant: set[str], k: int) -> float:
    for i, doc_id in enumerate(ranking[:k], start=1):
        if doc_id in relevant:
            return 1.0 / i
    return 0.0


METRIC_FNS = {"ap": ap_at_k, "recall": recall_at_k, "rr": reciprocal_rank}
