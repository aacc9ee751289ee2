"""Simulated search endpoints (BM25, HNSW kNN), retrieval metrics, rewards."""

from claimforge.searchenv.corpus import Corpus
from claimforge.searchenv.embeddings import (
    ExternalEmbedder,
    HashedBow,
    make_provider,
    stable_token_hash,
)
from claimforge.searchenv.endpoints import (
    BACKENDS,
    DEFAULT_TOP_K,
    Bm25Endpoint,
    KnnEndpoint,
    SearchEndpoint,
    build_index,
    embed,
    reward,
    reward_text,
)
from claimforge.searchenv.metrics import (
    METRICS,
    RewardSpec,
    ap_at_k,
    recall_at_k,
    reciprocal_rank,
)
from claimforge.searchenv.snapshots import load_endpoint, save_endpoint

__all__ = [
    "BACKENDS",
    "Corpus",
    "DEFAULT_TOP_K",
    "Bm25Endpoint",
    "ExternalEmbedder",
    "HashedBow",
    "KnnEndpoint",
    "METRICS",
    "RewardSpec",
    "SearchEndpoint",
    "ap_at_k",
    "build_index",
    "embed",
    "load_endpoint",
    "make_provider",
    "recall_at_k",
    "reciprocal_rank",
    "reward",
    "reward_text",
    "save_endpoint",
    "stable_token_hash",
]
