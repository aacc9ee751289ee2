"""Training loops and trained-model wrappers for the edit policies."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import torch
from torch import nn
from torch.nn import functional as F

from claimforge.errors import EmptyDataset
from claimforge.policy.config import PolicyConfig
from claimforge.policy.encoders import StateCodec, make_encoder
from claimforge.policy.model import PAD_ACTION, DecisionTransformer
from claimforge.trajgen.generate import Trajectory
from claimforge.trajgen.rtg import SPARSE


def episode_arrays(
    codec: StateCodec,
    cfg: PolicyConfig,
    rtgs: list[float],
    texts: list[str],
    actions: list[int | None],
) -> dict[str, np.ndarray]:
    """Left-pad one episode (<= K steps) into fixed-size model arrays.

    Real steps sit right-aligned in the K slots and keep their true timestep
    indices; slots before them are padding with a zero step mask. A None
    action (the live step during inference) maps to the PAD embedding slot,
    which the causal layout guarantees cannot influence its own prediction.
    """
    k = cfg.block_size
    t = len(rtgs)
    if not (1 <= t <= k) or len(texts) != t or len(actions) != t:
        raise ValueError(f"episode must have 1..{k} aligned steps, got {t}")
    pad = k - t
    out = {
        "rtg": np.zeros(k, dtype=np.float32),
        "actions": np.full(k, PAD_ACTION, dtype=np.int64),
        "timesteps": np.zeros(k, dtype=np.int64),
        "step_mask": np.zeros(k, dtype=np.float32),
    }
    out["rtg"][pad:] = rtgs
    out["actions"][pad:] = [PAD_ACTION if a is None else a for a in actions]
    out["timesteps"][pad:] = np.arange(t)
    out["step_mask"][pad:] = 1.0
    out.update(codec.encode_episode(texts, k=k, offset=pad))
    return out


def _stack(batches: list[dict[str, np.ndarray]]) -> dict[str, torch.Tensor]:
    keys = batches[0].keys()
    return {k: torch.from_numpy(np.stack([b[k] for b in batches])) for k in keys}


def initial_rtg(traj: Trajectory) -> float:
    """The return-conditioning value an episode starts from.

    Dense trajectories start at the suffix sum; sparse ones carry their signal
    in the terminal max-seen token, so that value is used instead.
    """
    if traj.reward_mode == SPARSE:
        return traj.max_seen_reward
    return traj.steps[0].rtg


@dataclass
class TrainedPolicy:
    model: DecisionTransformer
    cfg: PolicyConfig
    codec: StateCodec
    rtg_stats: dict[str, float]
    loss_curve: list[float] = field(default_factory=list)

    def default_target_rtg(self) -> float:
        return self.rtg_stats["p90"]

    def action_logits(
        self,
        rtgs: list[float],
        texts: list[str],
        past_actions: list[int],
    ) -> np.ndarray:
        """Logits for the next action given the episode so far.

        rtgs/texts include the live step; past_actions has one fewer entry.
        """
        if len(rtgs) != len(texts) or len(past_actions) != len(rtgs) - 1:
            raise ValueError("episode arrays misaligned")
        arrays = episode_arrays(
            self.codec, self.cfg, rtgs, texts, [*past_actions, None]
        )
        batch = {k: torch.from_numpy(v).unsqueeze(0) for k, v in arrays.items()}
        logits = self.model.logits_for_episode(batch, step=self.cfg.block_size - 1)
        return logits.detach().cpu().numpy()


def build_batches(
    trajectories: list[Trajectory], codec: StateCodec, cfg: PolicyConfig
) -> tuple[dict[str, torch.Tensor], torch.Tensor]:
    rows = []
    for traj in trajectories:
        steps = traj.steps[: cfg.block_size]
        rows.append(
            episode_arrays(
                codec,
                cfg,
                [s.rtg for s in steps],
                [s.state for s in steps],
                [s.action for s in steps],
            )
        )
    tensors = _stack(rows)
    targets = tensors["actions"].clone()
    return tensors, targets


def masked_action_loss(
    logits: torch.Tensor, targets: torch.Tensor, step_mask: torch.Tensor
) -> torch.Tensor:
    """Mean cross-entropy of predicted vs recorded actions over real steps."""
    vocab = logits.shape[-1]
    flat_logits = logits.reshape(-1, vocab)
    flat_targets = targets.reshape(-1).clamp(max=vocab - 1)
    losses = F.cross_entropy(flat_logits, flat_targets, reduction="none")
    mask = step_mask.reshape(-1)
    return (losses * mask).sum() / mask.sum()


def train(
    trajectories: list[Trajectory],
    cfg: PolicyConfig,
    log_every: int = 0,
) -> TrainedPolicy:
    """Train the decision transformer; deterministic for a fixed config seed."""
    if not trajectories:
        raise EmptyDataset("no trajectories to train on")
    if any(s.action >= cfg.action_vocab for t in trajectories for s in t.steps):
        raise ValueError("trajectory contains action id outside the action space")
    torch.manual_seed(cfg.seed)
    codec = StateCodec(cfg)
    model = DecisionTransformer(cfg)
    tensors, targets = build_batches(trajectories, codec, cfg)
    n = targets.shape[0]

    opt = torch.optim.Adam(model.parameters(), lr=cfg.learning_rate)
    shuffler = torch.Generator().manual_seed(cfg.seed)
    loss_curve: list[float] = []
    model.train()
    for epoch in range(cfg.epochs):
        order = torch.randperm(n, generator=shuffler)
        total, seen = 0.0, 0
        for start in range(0, n, cfg.batch_size):
            idx = order[start : start + cfg.batch_size]
            batch = {k: v[idx] for k, v in tensors.items()}
            loss = masked_action_loss(model(batch), targets[idx], batch["step_mask"])
            opt.zero_grad()
            loss.backward()
            nn.utils.clip_grad_norm_(model.parameters(), cfg.grad_clip)
            opt.step()
            total += loss.item() * len(idx)
            seen += len(idx)
        loss_curve.append(total / seen)
        if log_every and (epoch + 1) % log_every == 0:
            print(f"epoch {epoch + 1}/{cfg.epochs} loss {loss_curve[-1]:.4f}")
    model.eval()

    inits = sorted(initial_rtg(t) for t in trajectories)
    stats = {
        "p90": float(np.percentile(inits, 90)),
        "max": float(inits[-1]),
        "mean": float(np.mean(inits)),
    }
    return TrainedPolicy(
        model=model, cfg=cfg, codec=codec, rtg_stats=stats, loss_curve=loss_curve
    )


# --- one-action classifier baseline ---


class ClassifierNet(nn.Module):
    """State encoder + MLP head predicting the first edit as a 128-way class."""

    def __init__(self, cfg: PolicyConfig):
        super().__init__()
        self.cfg = cfg
        self.state_encoder = make_encoder(cfg)
        self.net = nn.Sequential(
            nn.LayerNorm(cfg.embed_dim),
            nn.Linear(cfg.embed_dim, cfg.embed_dim),
            nn.GELU(),
            nn.Linear(cfg.embed_dim, cfg.action_vocab),
        )

    def forward(self, batch: dict[str, torch.Tensor]) -> torch.Tensor:
        dtype = self.net[1].weight.dtype
        state = self.state_encoder(batch).to(dtype)  # (B, 1, D)
        return self.net(state[:, 0, :])


@dataclass
class TrainedClassifier:
    model: ClassifierNet
    cfg: PolicyConfig
    codec: StateCodec
    loss_curve: list[float] = field(default_factory=list)

    def action_logits(self, text: str) -> np.ndarray:
        arrays = self.codec.encode_episode([text])
        batch = {
            k: torch.from_numpy(v[:1]).unsqueeze(0) for k, v in arrays.items()
        }
        with torch.no_grad():
            self.model.eval()
            return self.model(batch)[0].cpu().numpy()

    def classify(self, text: str) -> int:
        return int(np.argmax(self.action_logits(text)))


def first_step_pairs(trajectories: list[Trajectory]) -> list[tuple[str, int]]:
    return [(t.steps[0].state, t.steps[0].action) for t in trajectories]


def train_classifier(
    pairs: list[tuple[str, int]], cfg: PolicyConfig
) -> TrainedClassifier:
    if not pairs:
        raise EmptyDataset("no (state, action) pairs to train on")
    torch.manual_seed(cfg.seed)
    codec = StateCodec(cfg)
    single = PolicyConfig(**{**cfg.to_dict(), "block_size": 1})
    single_codec = StateCodec(single)
    model = ClassifierNet(cfg)
    rows = [single_codec.encode_episode([text]) for text, _ in pairs]
    tensors = _stack(rows)
    targets = torch.tensor([a for _, a in pairs], dtype=torch.long)
    n = len(pairs)

    opt = torch.optim.Adam(model.parameters(), lr=cfg.learning_rate)
    shuffler = torch.Generator().manual_seed(cfg.seed)
    loss_curve = []
    model.train()
    for _ in range(cfg.epochs):
        order = torch.randperm(n, generator=shuffler)
        total, seen = 0.0, 0
        for start in range(0, n, cfg.batch_size):
            idx = order[start : start + cfg.batch_size]
            batch = {k: v[idx] for k, v in tensors.items()}
            loss = F.cross_entropy(model(batch), targets[idx])
            opt.zero_grad()
            loss.backward()
            nn.utils.clip_grad_norm_(model.parameters(), cfg.grad_clip)
            opt.step()
            total += loss.item() * len(idx)
            seen += len(idx)
        loss_curve.append(total / seen)
    model.eval()
    return TrainedClassifier(
        model=model, cfg=cfg, codec=single_codec, loss_curve=loss_curve
    )
