"""Versioned binary snapshots of search endpoints.

Layout: magic ``CFIX`` (4 bytes), format version (u16 LE), backend kind
(u8: 0 = bm25, 1 = knn), header length (u64 LE), UTF-8 JSON header, then the
raw bytes of each array named in header["arrays"] in order.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from claimforge.errors import CheckpointError
from claimforge.searchenv.bm25 import Bm25Index
from claimforge.searchenv.embeddings import make_provider
from claimforge.searchenv.endpoints import Bm25Endpoint, KnnEndpoint, SearchEndpoint
from claimforge.searchenv.hnsw import HnswIndex

MAGIC = b"CFIX"
VERSION = 1
_KIND_CODES = {"bm25": 0, "knn": 1}
_KIND_NAMES = {v: k for k, v in _KIND_CODES.items()}


def _write_blob(path: Path, kind: str, header: dict, arrays: dict[str, np.ndarray]) -> None:
    header = dict(header)
    header["arrays"] = [
        {"name": name, "dtype": str(arr.dtype), "shape": list(arr.shape)}
        for name, arr in arrays.items()
    ]
    header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<HB", VERSION, _KIND_CODES[kind]))
        fh.write(struct.pack("<Q", len(header_bytes)))
        fh.write(header_bytes)
        for arr in arrays.values():
            fh.write(np.ascontiguousarray(arr).tobytes())


def _read_blob(path: Path) -> tuple[str, dict, dict[str, np.ndarray]]:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != MAGIC:
            raise CheckpointError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
        version, kind_code = struct.unpack("<HB", fh.read(3))
        if version != VERSION:
            raise CheckpointError(f"{path}: unsupported snapshot version {version}")
        if kind_code not in _KIND_NAMES:
            raise CheckpointError(f"{path}: unknown backend code {kind_code}")
        (header_len,) = struct.unpack("<Q", fh.read(8))
        header = json.loads(fh.read(header_len).decode("utf-8"))
        arrays = {}
        for spec in header["arrays"]:
            dtype = np.dtype(spec["dtype"])
            shape = tuple(spec["shape"])
            count = int(np.prod(shape)) if shape else 1
            buf = fh.read(count * dtype.itemsize)
            arrays[spec["name"]] = np.frombuffer(buf, dtype=dtype).reshape(shape).copy()
    return _KIND_NAMES[kind_code], header, arrays


def save_endpoint(endpoint: SearchEndpoint, path: str | Path) -> None:
    path = Path(path)
    if isinstance(endpoint, Bm25Endpoint):
        index = endpoint._index
        terms = sorted(index.postings)
        offsets = np.zeros(len(terms) + 1, dtype=np.int64)
        doc_idx, tfs = [], []
        for i, term in enumerate(terms):
            plist = index.postings[term]
            offsets[i + 1] = offsets[i] + len(plist)
            doc_idx.extend(d for d, _ in plist)
            tfs.extend(t for _, t in plist)
        _write_blob(
            path,
            "bm25",
            {
                "k1": index.k1,
                "b": index.b,
                "top_k": endpoint.top_k,
                "doc_ids": index.doc_ids,
                "terms": terms,
            },
            {
                "doc_len": np.asarray(index.doc_len, dtype=np.int64),
                "offsets": offsets,
                "posting_doc": np.asarray(doc_idx, dtype=np.int64),
                "posting_tf": np.asarray(tfs, dtype=np.int64),
            },
        )
        return
    if isinstance(endpoint, KnnEndpoint):
        index = endpoint._index
        flat: list[int] = []
        offsets = [0]
        for node in range(len(index)):
            for layer in range(index.levels[node] + 1):
                flat.extend(index.neighbors[node][layer])
                offsets.append(len(flat))
        _write_blob(
            path,
            "knn",
            {
                "m": index.m,
                "ef_construction": index.ef_construction,
                "ef_search": index.ef_search,
                "seed": index.seed,
                "dim": index.dim,
                "entry_point": index.entry_point,
                "max_level": index.max_level,
                "top_k": endpoint.top_k,
                "doc_ids": endpoint._doc_ids,
                "provider": endpoint._provider.config(),
            },
            {
                "vectors": index.vectors,
                "levels": np.asarray(index.levels, dtype=np.int32),
                "nbr_offsets": np.asarray(offsets, dtype=np.int64),
                "nbr_flat": np.asarray(flat, dtype=np.int64),
            },
        )
        return
    raise TypeError(f"cannot snapshot endpoint of type {type(endpoint).__name__}")


def load_endpoint(path: str | Path, base_url: str | None = None) -> SearchEndpoint:
    """Restore an endpoint snapshot; base_url overrides an external provider's URL."""
    kind, header, arrays = _read_blob(Path(path))
    if kind == "bm25":
        index = Bm25Index.__new__(Bm25Index)
        index.k1 = header["k1"]
        index.b = header["b"]
        index.doc_ids = list(header["doc_ids"])
        index.doc_len = arrays["doc_len"].tolist()
        index.n_docs = len(index.doc_ids)
        index.avgdl = sum(index.doc_len) / index.n_docs
        offsets = arrays["offsets"]
        pdoc, ptf = arrays["posting_doc"], arrays["posting_tf"]
        index.postings = {}
        for i, term in enumerate(header["terms"]):
            lo, hi = int(offsets[i]), int(offsets[i + 1])
            index.postings[term] = [
                (int(d), int(t)) for d, t in zip(pdoc[lo:hi], ptf[lo:hi])
            ]
        index.idf = {
            term: float(
                np.log(1.0 + (index.n_docs - len(plist) + 0.5) / (len(plist) + 0.5))
            )
            for term, plist in index.postings.items()
        }
        return Bm25Endpoint(index, top_k=header["top_k"])

    index = HnswIndex(
        dim=header["dim"],
        m=header["m"],
        ef_construction=header["ef_construction"],
        ef_search=header["ef_search"],
        seed=header["seed"],
    )
    index.vectors = arrays["vectors"]
    index.levels = arrays["levels"].tolist()
    index.entry_point = header["entry_point"]
    index.max_level = header["max_level"]
    offsets = arrays["nbr_offsets"]
    flat = arrays["nbr_flat"].tolist()
    index.neighbors = []
    cursor = 0
    for node in range(len(index.levels)):
        per_layer = []
        for _ in range(index.levels[node] + 1):
            lo, hi = int(offsets[cursor]), int(offsets[cursor + 1])
            per_layer.append(flat[lo:hi])
            cursor += 1
        index.neighbors.append(per_layer)
    pconf = dict(header["provider"])
    if base_url:
        pconf["base_url"] = base_url
    provider = make_provider(
        pconf["mode"], dim=pconf["dim"], base_url=pconf.get("base_url")
    )
    return KnnEndpoint(index, list(header["doc_ids"]), provider, top_k=header["top_k"])
