"""End-to-end evaluation of rewriters (baselines and trained policies)."""

from __future__ import annotations

from dataclasses import dataclass, field

from claimforge.lexedit import TokenizedClaim, apply_action, legal_actions, tokenize
from claimforge.lexedit.lexicon import Lexicon
from claimforge.policy.rollout import (
    PERFECT,
    RolloutResult,
    RolloutStep,
    random_policy,
    rollout,
)
from claimforge.searchenv import Corpus, RewardSpec, SearchEndpoint
from claimforge.searchenv.endpoints import reward as reward_fn
from claimforge.lexedit import unflatten_action
import numpy as np


@dataclass(frozen=True)
class PerClaimRecord:
    claim_id: str
    original: float
    rewritten: float
    n_edits: int
    actions: tuple[int, ...]


@dataclass
class EvalReport:
    rewriter: str
    backend: str
    metric: str
    k: int
    original_mean: float
    rewritten_mean: float
    relative_improvement: float | None
    per_claim: list[PerClaimRecord] = field(default_factory=list)
    rollouts: list[RolloutResult] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "rewriter": self.rewriter,
            "backend": self.backend,
            "metric": self.metric,
            "k": self.k,
            "n_claims": len(self.per_claim),
            "original_mean": self.original_mean,
            "rewritten_mean": self.rewritten_mean,
            "relative_improvement": self.relative_improvement,
        }


class IdentityRewriter:
    """No-op baseline: the original claim is the query."""

    name = "identity"

    def rewrite(self, claim, endpoint, spec, corpus) -> RolloutResult:
        r0 = reward_fn(endpoint, claim, spec, corpus)
        return RolloutResult(claim.claim_id, claim.text, r0)


class RandomRewriter:
    """Uniform random legal edits, the paper-style lower baseline."""

    name = "random"

    def __init__(self, lexicon: Lexicon, n_edits: int = 4, seed: int = 0):
        self.lexicon = lexicon
        self.n_edits = n_edits
        self.seed = seed

    def rewrite(self, claim, endpoint, spec, corpus) -> RolloutResult:
        r0 = reward_fn(endpoint, claim, spec, corpus)
        result = RolloutResult(claim.claim_id, claim.text, r0)
        current = claim
        for action in random_policy(claim, self.n_edits, self.seed, self.lexicon):
            current = apply_action(current, action, self.lexicon)
            score = reward_fn(endpoint, current, spec, corpus)
            result.steps.append(
                RolloutStep(action.flat, current.text, score, rtg_before=0.0)
            )
        return result


class PolicyRewriter:
    """Decision-transformer rollout with legality masking."""

    name = "decision_transformer"

    def __init__(
        self,
        policy,
        lexicon: Lexicon,
        target_rtg: float | None = None,
        on_illegal: str = "mask",
    ):
        self.policy = policy
        self.lexicon = lexicon
        self.target_rtg = target_rtg
        self.on_illegal = on_illegal

    def rewrite(self, claim, endpoint, spec, corpus) -> RolloutResult:
        return rollout(
            self.policy,
            claim,
            endpoint,
            spec,
            corpus,
            self.lexicon,
            target_rtg=self.target_rtg,
            on_illegal=self.on_illegal,
        )


class ClassifierRewriter:
    """One-action classifier applied once, or greedily iterated up to K steps."""

    name = "classifier"

    def __init__(self, classifier, lexicon: Lexicon, iterate: bool = False, max_steps: int = 4):
        self.classifier = classifier
        self.lexicon = lexicon
        self.iterate = iterate
        self.max_steps = max_steps

    def rewrite(self, claim, endpoint, spec, corpus) -> RolloutResult:
        r0 = reward_fn(endpoint, claim, spec, corpus)
        result = RolloutResult(claim.claim_id, claim.text, r0)
        if r0 >= PERFECT:
            return result
        current = claim
        steps = self.max_steps if self.iterate else 1
        visited = {current.tokens}
        for _ in range(steps):
            legal = legal_actions(current, self.lexicon)
            if not legal:
                break
            logits = self.classifier.action_logits(current.text)
            # greedy step that never revisits a state, so single-step
            # predictions cannot oscillate (e.g. swapping a word back)
            chosen = None
            for flat in np.argsort(-logits):
                action = unflatten_action(int(flat))
                if action not in legal:
                    continue
                candidate = apply_action(current, action, self.lexicon)
                if candidate.tokens not in visited:
                    chosen = (action, candidate)
                    break
            if chosen is None:
                break
            action, current = chosen
            visited.add(current.tokens)
            score = reward_fn(endpoint, current, spec, corpus)
            result.steps.append(RolloutStep(action.flat, current.text, score, 0.0))
            if score >= PERFECT:
                break
        return result


def evaluate(
    rewriter,
    claims: list[TokenizedClaim],
    endpoint: SearchEndpoint,
    spec: RewardSpec,
    corpus: Corpus,
) -> EvalReport:
    """Mean original vs rewritten score over claims, with per-claim records."""
    rollouts = [rewriter.rewrite(c, endpoint, spec, corpus) for c in claims]
    per_claim = [
        PerClaimRecord(
            claim_id=r.claim_id,
            original=r.original_reward,
            rewritten=r.final_reward,
            n_edits=len(r.steps),
            actions=tuple(s.action for s in r.steps),
        )
        for r in rollouts
    ]
    orig = sum(p.original for p in per_claim) / len(per_claim)
    new = sum(p.rewritten for p in per_claim) / len(per_claim)
    rel = (new - orig) / orig if orig > 0 else None
    return EvalReport(
        rewriter=getattr(rewriter, "name", type(rewriter).__name__),
        backend=endpoint.backend,
        metric=spec.metric,
        k=spec.k,
        original_mean=orig,
        rewritten_mean=new,
        relative_improvement=rel,
        per_claim=per_claim,
        rollouts=rollouts,
    )


def claims_from_records(records, lexicon: Lexicon) -> list[TokenizedClaim]:
    return [tokenize(r.text, lexicon, claim_id=r.claim_id) for r in records]
