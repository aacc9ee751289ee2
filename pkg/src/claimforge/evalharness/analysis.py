"""Analysis artifacts: per-turn score curves and per-action outcome stats."""

from __future__ import annotations

from dataclasses import dataclass

from claimforge.lexedit import ActionKind, unflatten_action
from claimforge.policy.rollout import RolloutResult

SEGMENTS = ("improved", "unchanged", "decreased")


@dataclass(frozen=True)
class CurvePoint:
    turn: int  # 1 = original claim, K+1 = final rewrite
    segment: str
    mean: float
    count: int


@dataclass
class StepCurve:
    points: list[CurvePoint]
    unchanged_constant: int  # flat sequences: never moved beyond flat_epsilon
    unchanged_minor: int  # flat endpoints but wiggles in between
    flat_epsilon: float

    def rows(self) -> list[dict]:
        return [
            {"turn": p.turn, "segment": p.segment, "mean": p.mean, "count": p.count}
            for p in self.points
        ]


def _segment(result: RolloutResult) -> str:
    diff = result.final_reward - result.original_reward
    if diff > 0:
        return "improved"
    if diff < 0:
        return "decreased"
    return "unchanged"


def step_curve(rollouts: list[RolloutResult], flat_epsilon: float = 0.01) -> StepCurve:
    """Mean score per turn, split by whether the sequence ended above, at, or
    below its starting score. Episodes stopped early only count through their
    last turn."""
    max_turns = max((len(r.rewards_per_turn) for r in rollouts), default=0)
    points: list[CurvePoint] = []
    for turn in range(1, max_turns + 1):
        for segment in SEGMENTS:
            values = [
                r.rewards_per_turn[turn - 1]
                for r in rollouts
                if _segment(r) == segment and len(r.rewards_per_turn) >= turn
            ]
            if values:
                points.append(
                    CurvePoint(turn, segment, sum(values) / len(values), len(values))
                )
    constant = minor = 0
    for r in rollouts:
        if _segment(r) != "unchanged":
            continue
        deviation = max(abs(v - r.original_reward) for v in r.rewards_per_turn)
        if deviation > flat_epsilon:
            minor += 1
        else:
            constant += 1
    return StepCurve(points, constant, minor, flat_epsilon)


@dataclass(frozen=True)
class ActionOutcome:
    kind: str
    improved: int
    unchanged: int
    decreased: int
    mean_delta: float  # zero-delta steps excluded

    @property
    def total(self) -> int:
        return self.improved + self.unchanged + self.decreased


def action_analysis(rollouts: list[RolloutResult]) -> list[ActionOutcome]:
    """Outcome histogram and mean score change per action kind."""
    if not rollouts:
        raise ValueError("action_analysis requires at least one rollout")
    counts = {k.label: [0, 0, 0] for k in ActionKind}
    delta_sums = {k.label: [0.0, 0] for k in ActionKind}
    for r in rollouts:
        prev = r.original_reward
        for step in r.steps:
            kind = unflatten_action(step.action).kind.label
            delta = step.reward - prev
            if delta > 0:
                counts[kind][0] += 1
            elif delta == 0:
                counts[kind][1] += 1
            else:
                counts[kind][2] += 1
            if delta != 0:
                delta_sums[kind][0] += delta
                delta_sums[kind][1] += 1
            prev = step.reward
    out = []
    for kind in [k.label for k in ActionKind]:
        improved, unchanged, decreased = counts[kind]
        total, n = delta_sums[kind]
        out.append(
            ActionOutcome(
                kind=kind,
                improved=improved,
                unchanged=unchanged,
                decreased=decreased,
                mean_delta=total / n if n else 0.0,
            )
        )
    return out
