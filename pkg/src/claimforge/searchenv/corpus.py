"""Document collection plus relevance judgments keyed by claim id."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Corpus:
    docs: dict[str, str] = field(default_factory=dict)
    relevance: dict[str, set[str]] = field(default_factory=dict)

    def __post_init__(self):
        missing = [
            (cid, did)
            for cid, rel in self.relevance.items()
            for did in rel
            if did not in self.docs
        ]
        if missing:
            cid, did = missing[0]
            raise ValueError(
                f"relevance set for claim {cid!r} references unknown doc {did!r}"
                + (f" (+{len(missing) - 1} more)" if len(missing) > 1 else "")
            )

    def relevant_for(self, claim_id: str) -> set[str] | None:
        return self.relevance.get(claim_id)

    def __len__(self) -> int:
        return len(self.docs)
