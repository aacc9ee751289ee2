"""Offline-RL trajectory generation via depth-limited BFS over the edit space."""

from claimforge.trajgen.files import (
    load_trajectories,
    save_trajectories,
    trajectory_from_dict,
    trajectory_to_dict,
)
from claimforge.trajgen.generate import (
    GenConfig,
    GenReport,
    TrajStep,
    Trajectory,
    generate_dataset,
    generate_trajectories,
)
from claimforge.trajgen.rtg import DENSE, MODES, SPARSE, compute_rtg
from claimforge.trajgen.stats import DatasetStats, dataset_stats

__all__ = [
    "DENSE",
    "DatasetStats",
    "GenConfig",
    "GenReport",
    "MODES",
    "SPARSE",
    "TrajStep",
    "Trajectory",
    "compute_rtg",
    "dataset_stats",
    "generate_dataset",
    "generate_trajectories",
    "load_trajectories",
    "save_trajectories",
    "trajectory_from_dict",
    "trajectory_to_dict",
]
