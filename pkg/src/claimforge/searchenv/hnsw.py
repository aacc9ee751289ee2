"""Hierarchical navigable small-world graph for approximate kNN over unit vectors.

Layered skip-list-style graph: every node lives on layer 0, and each node is
promoted to higher layers with exponentially decaying probability
(level = floor(-ln(u) * mL), mL = 1 / ln(M)). Search greedily descends from
the top-layer entry point, then runs a beam search of width ef on layer 0.
Construction prunes neighbor lists with the diversity heuristic (a candidate
is kept when it is closer to the inserted point than to any already-selected
neighbor). Distances are cosine: d = 1 - dot on pre-normalized vectors.

Seeded level assignment plus (distance, node id) tie-breaking makes builds
and queries bit-reproducible for a fixed corpus and seed.
"""

from __future__ import annotations

import heapq
import math

import numpy as np

DEFAULT_M = 16
DEFAULT_EF_CONSTRUCTION = 200
DEFAULT_EF_SEARCH = 100


class HnswIndex:
    def __init__(
        self,
        dim: int,
        m: int = DEFAULT_M,
        ef_construction: int = DEFAULT_EF_CONSTRUCTION,
        ef_search: int = DEFAULT_EF_SEARCH,
        seed: int = 0,
    ):
        self.dim = dim
        self.m = m
        self.m0 = 2 * m
        self.ef_construction = ef_construction
        self.ef_search = ef_search
        self.seed = seed
        self.ml = 1.0 / math.log(m)
        self._rng = np.random.Generator(np.random.PCG64(seed))

        self.vectors = np.zeros((0, dim), dtype=np.float32)
        self.levels: list[int] = []
        # neighbors[node][layer] -> list of node ids
        self.neighbors: list[list[list[int]]] = []
        self.entry_point: int = -1
        self.max_level: int = -1

    def __len__(self) -> int:
        return len(self.levels)

    # --- construction ---

    def add_batch(self, vectors: np.ndarray) -> None:
        """Insert rows in order; ids are assigned sequentially."""
        vectors = np.ascontiguousarray(vectors, dtype=np.float32)
        if vectors.ndim != 2 or vectors.shape[1] != self.dim:
            raise ValueError(f"expected (n, {self.dim}) vectors, got {vectors.shape}")
        start = len(self)
        self.vectors = np.concatenate([self.vectors, vectors], axis=0)
        for node in range(start, start + vectors.shape[0]):
            self._insert(node)

    def _insert(self, node: int) -> None:
        level = int(-math.log(self._rng.uniform(1e-12, 1.0)) * self.ml)
        self.levels.append(level)
        self.neighbors.append([[] for _ in range(level + 1)])

        if self.entry_point < 0:
            self.entry_point = node
            self.max_level = level
            return

        query = self.vectors[node]
        ep = [self.entry_point]
        for layer in range(self.max_level, level, -1):
            ep = [nid for _, nid in self._search_layer(query, ep, layer, 1)]

        for layer in range(min(level, self.max_level), -1, -1):
            candidates = self._search_layer(query, ep, layer, self.ef_construction)
            max_conn = self.m0 if layer == 0 else self.m
            selected = self._select_neighbors(candidates, self.m)
            self.neighbors[node][layer] = list(selected)
            for nbr in selected:
                nbr_list = self.neighbors[nbr][layer]
                nbr_list.append(node)
                if len(nbr_list) > max_conn:
                    dists = 1.0 - self.vectors[nbr_list] @ self.vectors[nbr]
                    pruned = self._select_neighbors(
                        sorted(zip(dists.tolist(), nbr_list)), max_conn
                    )
                    self.neighbors[nbr][layer] = list(pruned)
            ep = [nid for _, nid in candidates]

        if level > self.max_level:
            self.max_level = level
            self.entry_point = node

    def _select_neighbors(
        self, candidates: list[tuple[float, int]], m: int
    ) -> list[int]:
        """Diversity-aware pruning; falls back to nearest-first to fill m slots."""
        if len(candidates) <= m:
            return [nid for _, nid in candidates]
        selected: list[int] = []
        discarded: list[tuple[float, int]] = []
        for dist, nid in candidates:  # already sorted by distance
            if len(selected) >= m:
                break
            if not selected:
                selected.append(nid)
                continue
            to_selected = 1.0 - self.vectors[selected] @ self.vectors[nid]
            if dist < float(np.min(to_selected)):
                selected.append(nid)
            else:
                discarded.append((dist, nid))
        for dist, nid in discarded:
            if len(selected) >= m:
                break
            selected.append(nid)
        return selected

    # --- search ---

    def _search_layer(
        self, query: np.ndarray, entry_points: list[int], layer: int, ef: int
    ) -> list[tuple[float, int]]:
        """Beam search on one layer; returns (distance, id) ascending, len <= ef."""
        dists = 1.0 - self.vectors[entry_points] @ query
        visited = set(entry_points)
        candidates: list[tuple[float, int]] = []  # min-heap on distance
        best: list[tuple[float, int]] = []  # max-heap via negated distance
        for nid, dist in zip(entry_points, dists.tolist()):
            heapq.heappush(candidates, (dist, nid))
            heapq.heappush(best, (-dist, nid))
        while candidates:
            dist, nid = heapq.heappop(candidates)
            if len(best) >= ef and dist > -best[0][0]:
                break
            fresh = [n for n in self.neighbors[nid][layer] if n not in visited]
            if not fresh:
                continue
            visited.update(fresh)
            fresh_dists = 1.0 - self.vectors[fresh] @ query
            for fid, fdist in zip(fresh, fresh_dists.tolist()):
                if len(best) < ef:
                    heapq.heappush(candidates, (fdist, fid))
                    heapq.heappush(best, (-fdist, fid))
                elif fdist < -best[0][0]:
                    heapq.heappush(candidates, (fdist, fid))
                    heapq.heapreplace(best, (-fdist, fid))
        out = sorted(((-d, nid) for d, nid in best), key=lambda p: (p[0], p[1]))
        return out

    def search(self, query: np.ndarray, k: int, ef: int | None = None) -> list[tuple[int, float]]:
        """Top-k (node id, cosine similarity), best first."""
        if len(self) == 0:
            return []
        ef = max(ef or self.ef_search, k)
        query = np.ascontiguousarray(query, dtype=np.float32)
        ep = [self.entry_point]
        for layer in range(self.max_level, 0, -1):
            ep = [nid for _, nid in self._search_layer(query, ep, layer, 1)]
        found = self._search_layer(query, ep, 0, ef)
        return [(nid, 1.0 - dist) for dist, nid in found[:k]]
