"""JSONL persistence for trajectories, one trajectory object per line."""

from __future__ import annotations

import json
from pathlib import Path

from claimforge.trajgen.generate import Trajectory, TrajStep


def trajectory_to_dict(traj: Trajectory) -> dict:
    return {
        "claim_id": traj.claim_id,
        "mode": traj.reward_mode,
        "steps": [
            {"rtg": s.rtg, "state": s.state, "action": s.action, "reward": s.reward}
            for s in traj.steps
        ],
        "max_seen_reward": traj.max_seen_reward,
        "original_reward": traj.original_reward,
    }


def trajectory_from_dict(obj: dict) -> Trajectory:
    steps = tuple(
        TrajStep(
            rtg=float(s["rtg"]),
            state=str(s["state"]),
            action=int(s["action"]),
            reward=float(s["reward"]),
        )
        for s in obj["steps"]
    )
    return Trajectory(
        claim_id=str(obj["claim_id"]),
        steps=steps,
        reward_mode=str(obj["mode"]),
        max_seen_reward=float(obj["max_seen_reward"]),
        original_reward=float(obj.get("original_reward", 0.0)),
    )


def save_trajectories(trajectories: list[Trajectory], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for traj in trajectories:
            fh.write(json.dumps(trajectory_to_dict(traj), sort_keys=True) + "\n")


def load_trajectories(path: str | Path, mode: str | None = None) -> list[Trajectory]:
    """Read a trajectory file, optionally keeping only one reward mode."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            traj = trajectory_from_dict(json.loads(line))
            if mode is None or traj.reward_mode == mode:
                out.append(traj)
    return out
