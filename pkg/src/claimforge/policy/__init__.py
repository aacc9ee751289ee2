"""Offline-RL edit policies: decision transformer, classifier baseline, rollout."""

from claimforge.policy.checkpoints import load_policy, save_policy
from claimforge.policy.config import PolicyConfig
from claimforge.policy.encoders import StateCodec
from claimforge.policy.model import PAD_ACTION, DecisionTransformer
from claimforge.policy.rollout import (
    RolloutResult,
    RolloutStep,
    random_policy,
    rollout,
)
from claimforge.policy.training import (
    TrainedClassifier,
    TrainedPolicy,
    first_step_pairs,
    train,
    train_classifier,
)

__all__ = [
    "DecisionTransformer",
    "PAD_ACTION",
    "PolicyConfig",
    "RolloutResult",
    "RolloutStep",
    "StateCodec",
    "TrainedClassifier",
    "TrainedPolicy",
    "first_step_pairs",
    "load_policy",
    "random_policy",
    "rollout",
    "save_policy",
    "train",
    "train_classifier",
]
