"""Autoregressive inference: predict, apply, score, decrement returns-to-go."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

import numpy as np

from claimforge.lexedit import (
    EditAction,
    TokenizedClaim,
    apply_action,
    legal_actions,
    unflatten_action,
)
from claimforge.lexedit.lexicon import Lexicon
from claimforge.searchenv import Corpus, RewardSpec, SearchEndpoint
from claimforge.searchenv.endpoints import reward as reward_fn

PERFECT = 1.0 - 1e-12

ON_ILLEGAL = ("mask", "terminate")


@dataclass(frozen=True)
class RolloutStep:
    action: int
    text_after: str
    reward: float
    rtg_before: float


@dataclass
class RolloutResult:
    claim_id: str
    original_text: str
    original_reward: float
    steps: list[RolloutStep] = field(default_factory=list)

    @property
    def final_reward(self) -> float:
        return self.steps[-1].reward if self.steps else self.original_reward

    @property
    def final_text(self) -> str:
        return self.steps[-1].text_after if self.steps else self.original_text

    @property
    def rewards_per_turn(self) -> list[float]:
        """Scores at turn 1 (original) through turn len+1."""
        return [self.original_reward, *(s.reward for s in self.steps)]


def rollout(
    policy,
    claim: TokenizedClaim,
    endpoint: SearchEndpoint,
    spec: RewardSpec,
    corpus: Corpus,
    lexicon: Lexicon,
    target_rtg: float | None = None,
    on_illegal: str = "mask",
) -> RolloutResult:
    """Greedy decision-transformer rollout for up to K edits.

    Stops early once the score hits 1.0, when no legal action remains, or
    (with on_illegal="terminate") when the unmasked argmax is inapplicable.
    """
    if on_illegal not in ON_ILLEGAL:
        raise ValueError(f"on_illegal must be one of {ON_ILLEGAL}")
    k = policy.cfg.block_size
    if target_rtg is None:
        target_rtg = policy.default_target_rtg()

    r0 = reward_fn(endpoint, claim, spec, corpus)
    result = RolloutResult(claim.claim_id, claim.text, r0)
    if r0 >= PERFECT:
        return result

    rtg_remaining = target_rtg
    rtgs = [rtg_remaining]
    texts = [claim.text]
    past_actions: list[int] = []
    current = claim
    for _ in range(k):
        legal = legal_actions(current, lexicon)
        if not legal:
            break
        logits = policy.action_logits(rtgs, texts, past_actions)
        action = _pick_action(logits, legal, on_illegal)
        if action is None:
            break
        current = apply_action(current, action, lexicon)
        score = reward_fn(endpoint, current, spec, corpus)
        result.steps.append(
            RolloutStep(
                action=action.flat,
                text_after=current.text,
                reward=score,
                rtg_before=rtg_remaining,
            )
        )
        rtg_remaining -= score
        past_actions.append(action.flat)
        if score >= PERFECT or len(past_actions) == k:
            break
        rtgs.append(rtg_remaining)
        texts.append(current.text)
    return result


def _pick_action(
    logits: np.ndarray, legal: set[EditAction], on_illegal: str
) -> EditAction | None:
    if on_illegal == "terminate":
        best = int(np.argmax(logits))
        action = unflatten_action(best)
        return action if action in legal else None
    masked = np.full_like(logits, -np.inf)
    legal_ids = [a.flat for a in legal]
    masked[legal_ids] = logits[legal_ids]
    return unflatten_action(int(np.argmax(masked)))


def random_policy(
    claim: TokenizedClaim,
    n_edits: int,
    seed: int,
    lexicon: Lexicon,
) -> list[EditAction]:
    """Uniformly sample a sequence of legal edits; seeded per (seed, claim)."""
    key = hashlib.blake2b(
        f"{seed}|{claim.claim_id}|{claim.text}".encode("utf-8"), digest_size=8
    ).digest()
    rng = random.Random(int.from_bytes(key, "big"))
    current = claim
    out: list[EditAction] = []
    for _ in range(n_edits):
        legal = sorted(legal_actions(current, lexicon), key=lambda a: a.flat)
        if not legal:
            break
        action = rng.choice(legal)
        current = apply_action(current, action, lexicon)
        out.append(action)
    return out
