"""Loading, validation, and persistence of claim/corpus JSONL files.

Corpus file: one ``{"doc_id": str, "text": str}`` object per line.
Claims file: one ``{"claim_id": str, "claim": str, "relevant_doc_ids": [str],
"label": "supports"|"refutes"}`` per line. Claims labeled NotEnoughInfo are
dropped on load; every other problem is collected as a line-numbered issue.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path

from claimforge.errors import DatasetError, DatasetIssue
from claimforge.searchenv.corpus import Corpus

logger = logging.getLogger(__name__)

_VALID_LABELS = ("supports", "refutes")


def _norm_label(label: str) -> str:
    return re.sub(r"[^a-z]", "", label.lower())


@dataclass(frozen=True)
class ClaimRecord:
    claim_id: str
    text: str
    relevant_doc_ids: tuple[str, ...]
    label: str


def load_dataset(
    claims_path: str | Path, corpus_path: str | Path
) -> tuple[list[ClaimRecord], Corpus]:
    """Parse both files, drop NotEnoughInfo claims, and validate references.

    Raises DatasetError carrying every line-numbered parse or dangling-reference
    issue found; nothing is silently skipped besides the NotEnoughInfo rule.
    """
    claims_path, corpus_path = Path(claims_path), Path(corpus_path)
    issues: list[DatasetIssue] = []

    docs: dict[str, str] = {}
    for lineno, obj in _iter_jsonl(corpus_path, issues):
        doc_id, text = obj.get("doc_id"), obj.get("text")
        if not isinstance(doc_id, str) or not isinstance(text, str):
            issues.append(
                DatasetIssue("parse", str(corpus_path), lineno, "need doc_id/text strings")
            )
            continue
        docs[doc_id] = text

    claims: list[ClaimRecord] = []
    dropped = 0
    for lineno, obj in _iter_jsonl(claims_path, issues):
        try:
            claim_id = str(obj["claim_id"])
            text = str(obj["claim"])
            rel = tuple(str(d) for d in obj["relevant_doc_ids"])
            label = str(obj["label"])
        except (KeyError, TypeError) as exc:
            issues.append(DatasetIssue("parse", str(claims_path), lineno, f"bad record: {exc}"))
            continue
        if _norm_label(label) == "notenoughinfo":
            dropped += 1
            continue
        if _norm_label(label) not in _VALID_LABELS:
            issues.append(
                DatasetIssue("parse", str(claims_path), lineno, f"unknown label {label!r}")
            )
            continue
        missing = [d for d in rel if d not in docs]
        if missing:
            issues.append(
                DatasetIssue(
                    "dangling_reference",
                    str(claims_path),
                    lineno,
                    f"claim {claim_id!r} references missing docs {missing}",
                )
            )
            continue
        claims.append(ClaimRecord(claim_id, text, rel, _norm_label(label)))

    if issues:
        raise DatasetError(issues)
    logger.info(
        "loaded %d docs, %d claims (%d NotEnoughInfo dropped)", len(docs), len(claims), dropped
    )
    corpus = Corpus(docs=docs, relevance={c.claim_id: set(c.relevant_doc_ids) for c in claims})
    return claims, corpus


def save_dataset(
    claims: list[ClaimRecord],
    corpus: Corpus,
    claims_path: str | Path,
    corpus_path: str | Path,
) -> None:
    claims_path, corpus_path = Path(claims_path), Path(corpus_path)
    claims_path.parent.mkdir(parents=True, exist_ok=True)
    corpus_path.parent.mkdir(parents=True, exist_ok=True)
    with open(corpus_path, "w", encoding="utf-8") as fh:
        for doc_id in sorted(corpus.docs):
            fh.write(json.dumps({"doc_id": doc_id, "text": corpus.docs[doc_id]}) + "\n")
    with open(claims_path, "w", encoding="utf-8") as fh:
        for c in claims:
            fh.write(
                json.dumps(
                    {
                        "claim_id": c.claim_id,
                        "claim": c.text,
                        "relevant_doc_ids": list(c.relevant_doc_ids),
                        "label": c.label,
                    }
                )
                + "\n"
            )


def _iter_jsonl(path: Path, issues: list[DatasetIssue]):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                issues.append(DatasetIssue("parse", str(path), lineno, str(exc)))
                continue
            if not isinstance(obj, dict):
                issues.append(DatasetIssue("parse", str(path), lineno, "not a JSON object"))
                continue
            yield lineno, obj
