"""Text embedding providers: hashed bag-of-words, or an external HTTP service.

HashedBow is the deterministic default: tokens are hashed into `dim` buckets
with term-frequency weights and the vector is L2-normalized. The External
provider forwards batches to a service speaking POST /embed
{"texts": [...]} -> {"vectors": [[...]]} and caches responses by text hash.
"""

from __future__ import annotations

import hashlib
import threading

import httpx
import numpy as np

from claimforge.errors import EmbeddingServiceUnavailable
from claimforge.lexedit.claims import split_text


def stable_token_hash(token: str) -> int:
    """Process-independent 64-bit hash of a lowercased token."""
    digest = hashlib.blake2b(token.lower().encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


class HashedBow:
    mode = "hashed_bow"

    def __init__(self, dim: int = 256):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self.dim = dim

    def embed(self, text: str) -> np.ndarray:
        tokens = split_text(text)
        if not tokens:
            raise ValueError("cannot embed empty text")
        vec = np.zeros(self.dim, dtype=np.float64)
        for tok in tokens:
            vec[stable_token_hash(tok) % self.dim] += 1.0
        vec /= np.linalg.norm(vec)
        return vec.astype(np.float32)

    def embed_batch(self, texts: list[str]) -> np.ndarray:
        return np.stack([self.embed(t) for t in texts])

    def config(self) -> dict:
        return {"mode": self.mode, "dim": self.dim}


class ExternalEmbedder:
    """Client for a user-run embedding service; unit-normalizes responses."""

    mode = "external"

    def __init__(
        self,
        base_url: str,
        dim: int,
        timeout: float = 30.0,
        transport: httpx.BaseTransport | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.dim = dim
        self._client = httpx.Client(timeout=timeout, transport=transport)
        self._cache: dict[str, np.ndarray] = {}
        self._lock = threading.Lock()

    def embed(self, text: str) -> np.ndarray:
        return self.embed_batch([text])[0]

    def embed_batch(self, texts: list[str]) -> np.ndarray:
        keys = [hashlib.sha256(t.encode("utf-8")).hexdigest() for t in texts]
        with self._lock:
            missing = [(i, t) for i, (k, t) in enumerate(zip(keys, texts)) if k not in self._cache]
        if missing:
            fetched = self._fetch([t for _, t in missing])
            with self._lock:
                for (i, _), vec in zip(missing, fetched):
                    self._cache[keys[i]] = vec
        with self._lock:
            return np.stack([self._cache[k] for k in keys])

    def _fetch(self, texts: list[str]) -> np.ndarray:
        try:
            resp = self._client.post(f"{self.base_url}/embed", json={"texts": texts})
        except httpx.HTTPError as exc:
            raise EmbeddingServiceUnavailable(f"{self.base_url}: {exc}") from exc
        if resp.status_code != 200:
            raise EmbeddingServiceUnavailable(
                f"{self.base_url} returned HTTP {resp.status_code}"
            )
        vectors = resp.json().get("vectors")
        if vectors is None or len(vectors) != len(texts):
            raise EmbeddingServiceUnavailable(f"{self.base_url}: malformed response")
        arr = np.asarray(vectors, dtype=np.float32)
        if arr.ndim != 2 or arr.shape[1] != self.dim:
            raise EmbeddingServiceUnavailable(
                f"expected vectors of dim {self.dim}, got shape {arr.shape}"
            )
        norms = np.linalg.norm(arr, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        return arr / norms

    def config(self) -> dict:
        return {"mode": self.mode, "dim": self.dim, "base_url": self.base_url}


def make_provider(mode: str, dim: int = 256, base_url: str | None = None):
    if mode == "hashed_bow":
        return HashedBow(dim=dim)
    if mode == "external":
        if not base_url:
            raise ValueError("external embedding provider requires base_url")
        return ExternalEmbedder(base_url=base_url, dim=dim)
    raise ValueError(f"unknown embedding mode {mode!r}")
