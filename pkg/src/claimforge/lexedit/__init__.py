"""Deterministic tokenization, lexicon POS tagging, and the token-edit action space."""

from claimforge.lexedit.actions import (
    ACTION_SPACE,
    MAX_POSITIONS,
    ActionKind,
    EditAction,
    apply_action,
    choose_synonym,
    flatten_action,
    kind_from_label,
    legal_actions,
    unflatten_action,
)
from claimforge.lexedit.claims import (
    TokenizedClaim,
    detokenize,
    retag,
    split_text,
    tokenize,
)
from claimforge.lexedit.lexicon import Lexicon, POSCategory

__all__ = [
    "ACTION_SPACE",
    "MAX_POSITIONS",
    "ActionKind",
    "EditAction",
    "Lexicon",
    "POSCategory",
    "TokenizedClaim",
    "apply_action",
    "choose_synonym",
    "detokenize",
    "flatten_action",
    "kind_from_label",
    "legal_actions",
    "retag",
    "split_text",
    "tokenize",
    "unflatten_action",
]
