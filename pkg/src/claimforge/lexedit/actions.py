"""The four token-edit actions, POS gating, and the flat 128-way action space.

The 2D (kind, position) grid maps onto flat ids as kind_index * 32 + position:
swap-with-synonym occupies 0-31, add-synonym 32-63, change-to-present-simple
64-95, remove 96-127. Positions beyond 31 are never editable; longer claims
keep their tail tokens but only the first 32 positions accept actions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from claimforge.errors import IllegalAction, NoSynonym, OutOfRange
from claimforge.lexedit.claims import TokenizedClaim
from claimforge.lexedit.lexicon import Lexicon, POSCategory

MAX_POSITIONS = 32
ACTION_SPACE = 4 * MAX_POSITIONS  # 128


class ActionKind(enum.IntEnum):
    SWAP_SYNONYM = 0
    ADD_SYNONYM = 1
    PRESENT_TENSE = 2
    REMOVE = 3

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    ActionKind.SWAP_SYNONYM: "swap_synonym",
    ActionKind.ADD_SYNONYM: "add_synonym",
    ActionKind.PRESENT_TENSE: "present_tense",
    ActionKind.REMOVE: "remove",
}
_BY_LABEL = {v: k for k, v in _LABELS.items()}


def kind_from_label(label: str) -> ActionKind:
    try:
        return _BY_LABEL[label]
    except KeyError:
        raise ValueError(f"unknown action kind {label!r}") from None


@dataclass(frozen=True, order=True)
class EditAction:
    kind: ActionKind
    position: int

    def __post_init__(self):
        if not 0 <= self.position < MAX_POSITIONS:
            raise OutOfRange(f"position {self.position} outside [0, {MAX_POSITIONS})")

    @property
    def flat(self) -> int:
        return flatten_action(self)


def flatten_action(action: EditAction) -> int:
    return int(action.kind) * MAX_POSITIONS + action.position


def unflatten_action(i: int) -> EditAction:
    if not 0 <= i < ACTION_SPACE:
        raise OutOfRange(f"flat action id {i} outside [0, {ACTION_SPACE})")
    return EditAction(ActionKind(i // MAX_POSITIONS), i % MAX_POSITIONS)


def choose_synonym(word: str, lexicon: Lexicon) -> str:
    """First synonym in stored order; deterministic for a fixed lexicon."""
    syns = lexicon.synonyms_of(word)
    if not syns:
        raise NoSynonym(f"no synonyms for {word!r}")
    return syns[0]


# POS gating: verbs take all four actions; nouns, adjectives and adverbs take
# everything except the tense change; stop words and unknowns only removal.
_KINDS_BY_POS = {
    POSCategory.VERB: (
        ActionKind.SWAP_SYNONYM,
        ActionKind.ADD_SYNONYM,
        ActionKind.PRESENT_TENSE,
        ActionKind.REMOVE,
    ),
    POSCategory.NOUN: (ActionKind.SWAP_SYNONYM, ActionKind.ADD_SYNONYM, ActionKind.REMOVE),
    POSCategory.ADJECTIVE: (ActionKind.SWAP_SYNONYM, ActionKind.ADD_SYNONYM, ActionKind.REMOVE),
    POSCategory.ADVERB: (ActionKind.SWAP_SYNONYM, ActionKind.ADD_SYNONYM, ActionKind.REMOVE),
    POSCategory.STOPWORD: (ActionKind.REMOVE,),
    POSCategory.OTHER: (ActionKind.REMOVE,),
}


def legal_actions(claim: TokenizedClaim, lexicon: Lexicon) -> set[EditAction]:
    """Every action applicable to the claim's current token sequence."""
    out: set[EditAction] = set()
    limit = min(len(claim.tokens), MAX_POSITIONS)
    single = len(claim.tokens) == 1
    for pos in range(limit):
        token = claim.tokens[pos]
        for kind in _KINDS_BY_POS[claim.pos[pos]]:
            if kind in (ActionKind.SWAP_SYNONYM, ActionKind.ADD_SYNONYM):
                if not lexicon.synonyms_of(token):
                    continue
            elif kind is ActionKind.PRESENT_TENSE:
                base = lexicon.present_form(token)
                if base is None or base == token.lower():
                    continue
            elif kind is ActionKind.REMOVE and single:
                # removing the last token would leave an empty query
                continue
            out.add(EditAction(kind, pos))
    return out


def apply_action(
    claim: TokenizedClaim, action: EditAction, lexicon: Lexicon
) -> TokenizedClaim:
    """Apply one edit, returning a new claim; positions index the current tokens.

    Raises IllegalAction when the action is not in legal_actions(claim).
    """
    if action not in legal_actions(claim, lexicon):
        raise IllegalAction(
            f"{action.kind.label}@{action.position} not legal for {claim.tokens!r}"
        )
    tokens = list(claim.tokens)
    pos_tags = list(claim.pos)
    i = action.position
    if action.kind is ActionKind.REMOVE:
        del tokens[i]
        del pos_tags[i]
    elif action.kind is ActionKind.SWAP_SYNONYM:
        syn = choose_synonym(tokens[i], lexicon)
        tokens[i] = syn
        pos_tags[i] = lexicon.pos_of(syn)
    elif action.kind is ActionKind.ADD_SYNONYM:
        syn = choose_synonym(tokens[i], lexicon)
        tokens.insert(i + 1, syn)
        pos_tags.insert(i + 1, lexicon.pos_of(syn))
    elif action.kind is ActionKind.PRESENT_TENSE:
        base = lexicon.present_form(tokens[i])
        assert base is not None  # guaranteed by legality check
        tokens[i] = base
        pos_tags[i] = lexicon.pos_of(base)
    return replace(
        claim,
        tokens=tuple(tokens),
        pos=tuple(pos_tags),
        edit_history=claim.edit_history + (action,),
    )
