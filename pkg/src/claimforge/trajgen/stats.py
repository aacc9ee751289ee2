"""Dataset-level statistics over generated trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field

from claimforge.lexedit import ActionKind, unflatten_action
from claimforge.trajgen.generate import Trajectory


@dataclass
class ActionStats:
    count: int = 0
    delta_sum: float = 0.0

    @property
    def mean_delta(self) -> float:
        return self.delta_sum / self.count if self.count else 0.0


@dataclass
class DatasetStats:
    n_trajectories: int = 0
    n_steps: int = 0
    claims_improved: int = 0
    mean_best_gain: float = 0.0
    per_action: dict[str, ActionStats] = field(default_factory=dict)

    def action_fraction(self, kind: str) -> float:
        stats = self.per_action.get(kind)
        return stats.count / self.n_steps if stats and self.n_steps else 0.0


def dataset_stats(trajectories: list[Trajectory]) -> DatasetStats:
    """Per-action frequency and mean reward delta, plus per-claim best gains.

    Deltas compare each step's reward with the previous step's (the original
    claim's reward for the first step).
    """
    if not trajectories:
        raise ValueError("dataset_stats requires at least one trajectory")
    out = DatasetStats(
        per_action={kind.label: ActionStats() for kind in ActionKind}
    )
    best_gain: dict[str, float] = {}
    for traj in trajectories:
        out.n_trajectories += 1
        prev = traj.original_reward
        for step in traj.steps:
            kind = unflatten_action(step.action).kind.label
            stats = out.per_action[kind]
            stats.count += 1
            stats.delta_sum += step.reward - prev
            prev = step.reward
            out.n_steps += 1
        gain = traj.final_reward - traj.original_reward
        cur = best_gain.get(traj.claim_id)
        if cur is None or gain > cur:
            best_gain[traj.claim_id] = gain
    out.claims_improved = len(best_gain)
    out.mean_best_gain = sum(best_gain.values()) / len(best_gain)
    return out
