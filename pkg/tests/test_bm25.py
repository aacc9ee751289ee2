"""BM25 index vs a direct brute-force Okapi oracle."""

import math
import random

import pytest

from claimforge.errors import EmptyCorpus, EmptyQuery
from claimforge.searchenv import Corpus, build_index
from claimforge.searchenv.bm25 import analyze


def okapi_oracle(docs: dict[str, str], query: str, k1=1.2, b=0.75) -> dict[str, float]:
    """Per-doc Okapi score computed without an inverted index."""
    doc_terms = {d: analyze(t) for d, t in docs.items()}
    n = len(docs)
    avgdl = sum(len(t) for t in doc_terms.values()) / n
    df = {}
    for terms in doc_terms.values():
        for term in set(terms):
            df[term] = df.get(term, 0) + 1
    scores = {}
    for doc_id, terms in doc_terms.items():
        s = 0.0
        for q in analyze(query):  # query terms count once per occurrence
            tf = terms.count(q)
            if tf == 0:
                continue
            idf = math.log(1.0 + (n - df[q] + 0.5) / (df[q] + 0.5))
            norm = k1 * (1.0 - b + b * len(terms) / avgdl)
            s += idf * tf * (k1 + 1.0) / (tf + norm)
        if s != 0.0:
            scores[doc_id] = s
    return scores


VOCAB = ["cat", "dog", "fox", "wolf", "bird", "fish", "tree", "rock", "sun", "moon"]


def _random_docs(rng, max_docs=20):
    n = rng.randint(1, max_docs)
    return {
        f"d{i}": " ".join(rng.choices(VOCAB, k=rng.randint(1, 12))) for i in range(n)
    }


class TestOracleEquivalence:
    def test_random_corpora(self):
        rng = random.Random(7)
        for _ in range(50):
            docs = _random_docs(rng)
            endpoint = build_index(Corpus(docs=docs), "bm25")
            for _ in range(5):
                query = " ".join(rng.choices(VOCAB, k=rng.randint(1, 6)))
                expected = okapi_oracle(docs, query)
                got = dict(endpoint.query(query, top_k=len(docs)))
                assert set(got) == set(expected)
                for doc_id, score in expected.items():
                    assert got[doc_id] == pytest.approx(score, abs=1e-9)

    def test_duplicate_query_terms_double_contribution(self):
        docs = {"d1": "cat dog", "d2": "fox"}
        endpoint = build_index(Corpus(docs=docs), "bm25")
        single = dict(endpoint.query("cat", top_k=2))["d1"]
        double = dict(endpoint.query("cat cat", top_k=2))["d1"]
        assert double == pytest.approx(2 * single, abs=1e-12)


class TestQueryContract:
    def test_spec_ranking_example(self, tiny_corpus):
        endpoint = build_index(tiny_corpus, "bm25")
        ranking = endpoint.query("cat", top_k=10)
        ids = [doc_id for doc_id, _ in ranking]
        assert "d2" not in ids
        assert ids.index("d3") < ids.index("d1")
        oracle = okapi_oracle(tiny_corpus.docs, "cat")
        assert oracle["d3"] > oracle["d1"]

    def test_no_match_returns_empty(self, tiny_corpus):
        endpoint = build_index(tiny_corpus, "bm25")
        assert endpoint.query("zebra", top_k=10) == []

    def test_score_ties_break_by_doc_id(self):
        docs = {"b": "cat", "a": "cat", "c": "cat"}
        endpoint = build_index(Corpus(docs=docs), "bm25")
        assert [d for d, _ in endpoint.query("cat", top_k=3)] == ["a", "b", "c"]

    def test_top_k_cutoff(self):
        docs = {f"d{i}": " ".join(["cat"] * (i + 1)) for i in range(10)}
        endpoint = build_index(Corpus(docs=docs), "bm25", top_k=3)
        assert len(endpoint.query("cat")) == 3
        assert len(endpoint.query("cat", top_k=7)) == 7

    def test_empty_query_rejected(self, tiny_corpus):
        endpoint = build_index(tiny_corpus, "bm25")
        with pytest.raises(EmptyQuery):
            endpoint.query("   ", top_k=5)

    def test_empty_corpus_rejected(self):
        with pytest.raises(EmptyCorpus):
            build_index(Corpus(docs={}), "bm25")

    def test_analyzer_lowercases_no_stemming(self):
        docs = {"d1": "Cats RUNNING", "d2": "cat run"}
        endpoint = build_index(Corpus(docs=docs), "bm25")
        got = dict(endpoint.query("cats running", top_k=2))
        assert "d1" in got and "d2" not in got
