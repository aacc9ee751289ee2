"""Returns-to-go computation for dense and sparse reward modes."""

from __future__ import annotations

DENSE = "dense"
SPARSE = "sparse"
MODES = (DENSE, SPARSE)


def compute_rtg(rewards: list[float], mode: str, max_seen: float = 0.0) -> list[float]:
    """Dense: suffix sums of rewards. Sparse: zeros except last = max_seen."""
    if not rewards:
        raise ValueError("rewards must be non-empty")
    if mode == DENSE:
        out = [0.0] * len(rewards)
        acc = 0.0
        for i in range(len(rewards) - 1, -1, -1):
            acc += rewards[i]
            out[i] = acc
        return out
    if mode == SPARSE:
        return [0.0] * (len(rewards) - 1) + [max_seen]
    raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
