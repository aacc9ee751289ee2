"""Depth-limited BFS over the edit space producing offline-RL trajectories.

For each claim the search expands legal edits level by level up to max_depth.
In the default (positive-only) mode a child survives only when its reward
strictly exceeds its parent's; children below the relative-improvement
threshold are cut, and survivors are additionally dropped at random with a
small seeded probability. Paths that can no longer be extended become
candidate editing sequences, ranked by final-reward gain; the top N become
trajectories. Claims already at the perfect score yield nothing, as do claims
where no edit helps - both are normal, countable outcomes.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from claimforge.lexedit import TokenizedClaim, apply_action, legal_actions
from claimforge.lexedit.lexicon import Lexicon
from claimforge.searchenv import RewardSpec, SearchEndpoint
from claimforge.searchenv.corpus import Corpus
from claimforge.searchenv.endpoints import reward_text
from claimforge.trajgen.rtg import DENSE, MODES, compute_rtg

PERFECT = 1.0 - 1e-12
_REL_EPS = 1e-6  # denominator floor for relative improvement at reward 0


@dataclass(frozen=True)
class TrajStep:
    rtg: float
    state: str  # query text before the action
    action: int  # flat action id in [0, 128)
    reward: float  # retrieval score after the action


@dataclass(frozen=True)
class Trajectory:
    claim_id: str
    steps: tuple[TrajStep, ...]
    reward_mode: str
    max_seen_reward: float
    original_reward: float

    @property
    def final_reward(self) -> float:
        return self.steps[-1].reward

    @property
    def gain(self) -> float:
        return self.final_reward - self.original_reward


@dataclass(frozen=True)
class GenConfig:
    max_depth: int = 4
    min_improvement: float = 0.03
    random_prune_prob: float = 0.05
    top_n_sequences: int = 50
    include_negative: bool = False
    seed: int = 0
    modes: tuple[str, ...] = (DENSE,)

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not 0.0 <= self.random_prune_prob < 1.0:
            raise ValueError("random_prune_prob must be in [0, 1)")
        if self.top_n_sequences < 1:
            raise ValueError("top_n_sequences must be >= 1")
        for mode in self.modes:
            if mode not in MODES:
                raise ValueError(f"unknown reward mode {mode!r}")


@dataclass
class GenReport:
    """Counters over a generation run."""

    claims_total: int = 0
    claims_skipped_perfect: int = 0
    claims_no_improvement: int = 0
    claims_improved: int = 0
    trajectories: int = 0
    reward_evals: int = 0


@dataclass
class _Node:
    claim: TokenizedClaim
    actions: tuple[int, ...]
    rewards: tuple[float, ...]  # reward after each action on the path
    reward: float  # reward of this state
    exhausted: bool = field(default=False, compare=False)


def _prune_draw(seed: int, claim_id: str, path: tuple[int, ...]) -> float:
    """Deterministic uniform draw in [0, 1) keyed by (seed, claim, path)."""
    key = f"{seed}|{claim_id}|{','.join(map(str, path))}".encode("utf-8")
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return int.from_bytes(digest, "big") / 2**64


def generate_trajectories(
    claim: TokenizedClaim,
    endpoint: SearchEndpoint,
    spec: RewardSpec,
    cfg: GenConfig,
    corpus: Corpus,
    lexicon: Lexicon,
    report: GenReport | None = None,
) -> list[Trajectory]:
    """BFS one claim into at most top_n_sequences trajectories per reward mode."""
    relevant = corpus.relevant_for(claim.claim_id)
    if relevant is None:
        from claimforge.errors import UnknownClaim

        raise UnknownClaim(f"no relevance judgments for claim {claim.claim_id!r}")
    if report is not None:
        report.claims_total += 1

    reward_cache: dict[tuple[str, ...], float] = {}

    def scored(tokens: tuple[str, ...], text: str) -> float:
        if tokens not in reward_cache:
            reward_cache[tokens] = reward_text(endpoint, text, relevant, spec)
            if report is not None:
                report.reward_evals += 1
        return reward_cache[tokens]

    r0 = scored(claim.tokens, claim.text)
    max_seen = r0
    if r0 >= PERFECT:
        if report is not None:
            report.claims_skipped_perfect += 1
        return []

    maximal: list[_Node] = []
    level: list[_Node] = [_Node(claim, (), (), r0)]
    seen_level: set[tuple[str, ...]]

    for depth in range(cfg.max_depth):
        next_level: list[_Node] = []
        seen_level = set()
        for node in level:
            survivors = 0
            for action in sorted(legal_actions(node.claim, lexicon), key=lambda a: a.flat):
                child = apply_action(node.claim, action, lexicon)
                r = scored(child.tokens, child.text)
                max_seen = max(max_seen, r)
                delta = r - node.reward
                if delta == 0.0:
                    continue
                if delta < 0.0 and not cfg.include_negative:
                    continue
                if abs(delta) / max(node.reward, _REL_EPS) < cfg.min_improvement:
                    continue
                path = node.actions + (action.flat,)
                if cfg.random_prune_prob > 0.0 and (
                    _prune_draw(cfg.seed, claim.claim_id, path) < cfg.random_prune_prob
                ):
                    continue
                survivors += 1
                if child.tokens in seen_level:
                    continue  # same state reached via another edit order
                seen_level.add(child.tokens)
                next_level.append(_Node(child, path, node.rewards + (r,), r))
            if survivors == 0 and node.actions:
                maximal.append(node)
        level = next_level
        if not level:
            break
    maximal.extend(node for node in level if node.actions)

    # rank by gain; break ties by the sorted action set so that orderings of
    # one edit set stay adjacent, then by the sequence itself
    if cfg.include_negative:
        kept = [n for n in maximal if n.reward != r0]
        kept.sort(key=lambda n: (-abs(n.reward - r0), tuple(sorted(n.actions)), n.actions))
    else:
        kept = [n for n in maximal if n.reward > r0]
        kept.sort(key=lambda n: (-(n.reward - r0), tuple(sorted(n.actions)), n.actions))
    kept = kept[: cfg.top_n_sequences]

    if not kept:
        if report is not None:
            report.claims_no_improvement += 1
        return []
    if report is not None:
        report.claims_improved += 1

    out: list[Trajectory] = []
    for node in kept:
        states = _path_states(claim, node.actions, lexicon)
        rewards = list(node.rewards)
        for mode in cfg.modes:
            rtgs = compute_rtg(rewards, mode, max_seen=max_seen)
            steps = tuple(
                TrajStep(rtg=rtgs[i], state=states[i], action=node.actions[i], reward=rewards[i])
                for i in range(len(rewards))
            )
            out.append(
                Trajectory(
                    claim_id=claim.claim_id,
                    steps=steps,
                    reward_mode=mode,
                    max_seen_reward=max_seen,
                    original_reward=r0,
                )
            )
    if report is not None:
        report.trajectories += len(out)
    return out


def _path_states(
    claim: TokenizedClaim, actions: tuple[int, ...], lexicon: Lexicon
) -> list[str]:
    """Query text before each action along the path."""
    from claimforge.lexedit import unflatten_action

    states = [claim.text]
    cur = claim
    for flat in actions[:-1]:
        cur = apply_action(cur, unflatten_action(flat), lexicon)
        states.append(cur.text)
    return states


def generate_dataset(
    claims: list[TokenizedClaim],
    endpoint: SearchEndpoint,
    spec: RewardSpec,
    cfg: GenConfig,
    corpus: Corpus,
    lexicon: Lexicon,
) -> tuple[list[Trajectory], GenReport]:
    """Generate for many claims; output ordered by (claim_id, rank) regardless
    of evaluation order, so parallel callers can merge deterministically."""
    report = GenReport()
    out: list[Trajectory] = []
    for claim in sorted(claims, key=lambda c: c.claim_id):
        out.extend(
            generate_trajectories(claim, endpoint, spec, cfg, corpus, lexicon, report)
        )
    return out, report
