"""Token-level claim state: tokenization, POS assignment, detokenization."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from claimforge.errors import EmptyClaim
from claimforge.lexedit.lexicon import Lexicon, POSCategory

if TYPE_CHECKING:
    from claimforge.lexedit.actions import EditAction

# Word-character runs, or single punctuation characters detached as their own
# tokens. Joining with single spaces re-tokenizes to the same list.
_TOKEN_RE = re.compile(r"\w+|[^\w\s]")


def split_text(text: str) -> list[str]:
    """Surface token split shared by the edit engine and the BM25 analyzer."""
    return _TOKEN_RE.findall(text)


@dataclass(frozen=True)
class TokenizedClaim:
    """Immutable query state. Edits return new claims via apply_action."""

    tokens: tuple[str, ...]
    pos: tuple[POSCategory, ...]
    claim_id: str = ""
    edit_history: tuple["EditAction", ...] = field(default_factory=tuple)

    def __post_init__(self):
        if len(self.tokens) == 0:
            raise EmptyClaim("claim must contain at least one token")
        if len(self.tokens) != len(self.pos):
            raise ValueError(
                f"tokens/pos length mismatch: {len(self.tokens)} != {len(self.pos)}"
            )

    @property
    def text(self) -> str:
        return detokenize(self)

    def __len__(self) -> int:
        return len(self.tokens)


def tokenize(text: str, lexicon: Lexicon, claim_id: str = "") -> TokenizedClaim:
    """Split text into tokens and assign a POS category per token.

    Raises EmptyClaim when no tokens result.
    """
    tokens = split_text(text)
    if not tokens:
        raise EmptyClaim(f"no tokens in {text!r}")
    pos = tuple(lexicon.pos_of(t) for t in tokens)
    return TokenizedClaim(tokens=tuple(tokens), pos=pos, claim_id=claim_id)


def detokenize(claim: TokenizedClaim) -> str:
    return " ".join(claim.tokens)


def retag(tokens: list[str], lexicon: Lexicon, claim_id: str = "") -> TokenizedClaim:
    """Rebuild a claim from a raw token list (e.g. one sent by an API client)."""
    if not tokens:
        raise EmptyClaim("empty token list")
    return TokenizedClaim(
        tokens=tuple(tokens),
        pos=tuple(lexicon.pos_of(t) for t in tokens),
        claim_id=claim_id,
    )
