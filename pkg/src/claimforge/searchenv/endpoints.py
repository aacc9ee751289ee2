"""Opaque query -> ranked-documents endpoints and the reward function.

Downstream modules (trajectory generation, policies) must only call
query()/reward(); index internals stay private to this package.
"""

from __future__ import annotations

import numpy as np

from claimforge.errors import EmptyCorpus, UnknownClaim
from claimforge.lexedit.claims import TokenizedClaim
from claimforge.searchenv.bm25 import DEFAULT_B, DEFAULT_K1, Bm25Index
from claimforge.searchenv.corpus import Corpus
from claimforge.searchenv.embeddings import HashedBow, make_provider
from claimforge.searchenv.hnsw import (
    DEFAULT_EF_CONSTRUCTION,
    DEFAULT_EF_SEARCH,
    DEFAULT_M,
    HnswIndex,
)
from claimforge.searchenv.metrics import RewardSpec

BACKENDS = ("bm25", "knn")
DEFAULT_TOP_K = 50


class Bm25Endpoint:
    backend = "bm25"

    def __init__(self, index: Bm25Index, top_k: int = DEFAULT_TOP_K):
        self._index = index
        self.top_k = top_k

    def query(self, text: str, top_k: int | None = None) -> list[tuple[str, float]]:
        return self._index.query(text, top_k or self.top_k)

    def params(self) -> dict:
        return {"k1": self._index.k1, "b": self._index.b, "top_k": self.top_k}


class KnnEndpoint:
    backend = "knn"

    def __init__(
        self,
        index: HnswIndex,
        doc_ids: list[str],
        provider,
        top_k: int = DEFAULT_TOP_K,
    ):
        self._index = index
        self._doc_ids = doc_ids
        self._provider = provider
        self.top_k = top_k

    def query(self, text: str, top_k: int | None = None) -> list[tuple[str, float]]:
        top_k = top_k or self.top_k
        vec = self._provider.embed(text)
        hits = self._index.search(np.asarray(vec, dtype=np.float32), top_k)
        ranked = sorted(
            ((self._doc_ids[nid], float(score)) for nid, score in hits),
            key=lambda pair: (-pair[1], pair[0]),
        )
        return ranked

    def params(self) -> dict:
        return {
            "m": self._index.m,
            "ef_construction": self._index.ef_construction,
            "ef_search": self._index.ef_search,
            "seed": self._index.seed,
            "top_k": self.top_k,
            "provider": self._provider.config(),
        }


SearchEndpoint = Bm25Endpoint | KnnEndpoint


def build_index(
    corpus: Corpus,
    backend: str,
    top_k: int = DEFAULT_TOP_K,
    k1: float = DEFAULT_K1,
    b: float = DEFAULT_B,
    provider=None,
    m: int = DEFAULT_M,
    ef_construction: int = DEFAULT_EF_CONSTRUCTION,
    ef_search: int = DEFAULT_EF_SEARCH,
    seed: int = 0,
) -> SearchEndpoint:
    """Build an immutable, queryable endpoint over the corpus."""
    if len(corpus.docs) == 0:
        raise EmptyCorpus("corpus has no documents")
    if backend == "bm25":
        return Bm25Endpoint(Bm25Index(corpus.docs, k1=k1, b=b), top_k=top_k)
    if backend == "knn":
        provider = provider or HashedBow()
        doc_ids = sorted(corpus.docs)
        vectors = provider.embed_batch([corpus.docs[d] for d in doc_ids])
        index = HnswIndex(
            dim=vectors.shape[1],
            m=m,
            ef_construction=ef_construction,
            ef_search=ef_search,
            seed=seed,
        )
        index.add_batch(vectors)
        return KnnEndpoint(index, doc_ids, provider, top_k=top_k)
    raise ValueError(f"backend must be one of {BACKENDS}, got {backend!r}")


def reward(
    endpoint: SearchEndpoint,
    claim: TokenizedClaim,
    spec: RewardSpec,
    corpus: Corpus,
) -> float:
    """Retrieval score of the claim's current text under the given metric."""
    relevant = corpus.relevant_for(claim.claim_id)
    if relevant is None:
        raise UnknownClaim(f"no relevance judgments for claim {claim.claim_id!r}")
    ranking = [doc_id for doc_id, _ in endpoint.query(claim.text, top_k=spec.k)]
    return spec.compute(ranking, relevant)


def reward_text(
    endpoint: SearchEndpoint,
    text: str,
    relevant: set[str],
    spec: RewardSpec,
) -> float:
    """Reward for raw query text against an explicit relevance set."""
    ranking = [doc_id for doc_id, _ in endpoint.query(text, top_k=spec.k)]
    return spec.compute(ranking, relevant)


def embed(provider, text: str) -> np.ndarray:
    """Unit-norm embedding of text under the given provider."""
    return provider.embed(text)


__all__ = [
    "BACKENDS",
    "Bm25Endpoint",
    "KnnEndpoint",
    "SearchEndpoint",
    "build_index",
    "embed",
    "make_provider",
    "reward",
    "reward_text",
]
