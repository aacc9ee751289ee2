"""Okapi BM25 over an in-memory inverted index.

Scoring uses the non-negative idf variant ln(1 + (N - df + 0.5) / (df + 0.5))
and term saturation tf * (k1 + 1) / (tf + k1 * (1 - b + b * dl / avgdl)).
Query terms contribute once per occurrence, so duplicated words weigh double.
The analyzer is the shared claim tokenizer, lowercased, with no stemming.
"""

from __future__ import annotations

import math
from collections import Counter

from claimforge.errors import EmptyCorpus, EmptyQuery
from claimforge.lexedit.claims import split_text

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75


def analyze(text: str) -> list[str]:
    return [t.lower() for t in split_text(text)]


class Bm25Index:
    def __init__(self, docs: dict[str, str], k1: float = DEFAULT_K1, b: float = DEFAULT_B):
        if not docs:
            raise EmptyCorpus("cannot build a BM25 index over zero documents")
        self.k1 = k1
        self.b = b
        self.doc_ids: list[str] = sorted(docs)
        self.doc_len: list[int] = []
        # term -> list of (doc index, term frequency), doc indexes ascending
        self.postings: dict[str, list[tuple[int, int]]] = {}
        for idx, doc_id in enumerate(self.doc_ids):
            terms = analyze(docs[doc_id])
            self.doc_len.append(len(terms))
            for term, tf in sorted(Counter(terms).items()):
                self.postings.setdefault(term, []).append((idx, tf))
        self.n_docs = len(self.doc_ids)
        self.avgdl = sum(self.doc_len) / self.n_docs
        self.idf = {
            term: math.log(1.0 + (self.n_docs - len(plist) + 0.5) / (len(plist) + 0.5))
            for term, plist in self.postings.items()
        }

    def score_query(self, text: str) -> dict[int, float]:
        """Accumulated BM25 score per matching doc index (absent = no match)."""
        terms = analyze(text)
        if not terms:
            raise EmptyQuery(f"query {text!r} produced no terms")
        scores: dict[int, float] = {}
        for term in terms:
            plist = self.postings.get(term)
            if plist is None:
                continue
            idf = self.idf[term]
            for doc_idx, tf in plist:
                norm = self.k1 * (
                    1.0 - self.b + self.b * self.doc_len[doc_idx] / self.avgdl
                )
                contrib = idf * tf * (self.k1 + 1.0) / (tf + norm)
                scores[doc_idx] = scores.get(doc_idx, 0.0) + contrib
        return scores

    def query(self, text: str, top_k: int) -> list[tuple[str, float]]:
        """Top-k (doc_id, score), descending score, ties by ascending doc_id."""
        scores = self.score_query(text)
        ranked = sorted(
            ((self.doc_ids[i], s) for i, s in scores.items()),
            key=lambda pair: (-pair[1], pair[0]),
        )
        return ranked[:top_k]
