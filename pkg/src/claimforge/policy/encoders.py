"""State encoders mapping query text to a policy-space vector.

Trainable: a learned bag-of-token-embeddings mean updated with the policy.
Frozen: the deterministic hashed bag-of-words embedding pushed through a
fixed seeded projection; no gradients flow into the state representation.
"""

from __future__ import annotations

import numpy as np
import torch
from torch import nn

from claimforge.lexedit.claims import split_text
from claimforge.policy.config import PolicyConfig
from claimforge.searchenv.embeddings import HashedBow, stable_token_hash


class StateCodec:
    """Turns state texts into the tensors the matching encoder consumes."""

    def __init__(self, cfg: PolicyConfig):
        self.cfg = cfg
        self.kind = cfg.state_encoder
        if self.kind == "frozen":
            self._bow = HashedBow(dim=cfg.bow_dim)

    def token_ids(self, text: str) -> list[int]:
        tokens = split_text(text)[: self.cfg.max_state_tokens]
        return [stable_token_hash(t) % self.cfg.token_vocab for t in tokens]

    def encode_episode(
        self, texts: list[str], k: int | None = None, offset: int = 0
    ) -> dict[str, np.ndarray]:
        """State arrays for a K-slot episode with texts placed at the offset."""
        k = k if k is not None else self.cfg.block_size
        cap = self.cfg.max_state_tokens
        if offset + len(texts) > k:
            raise ValueError(f"{len(texts)} texts at offset {offset} exceed {k} slots")
        if self.kind == "trainable":
            ids = np.full((k, cap), self.cfg.token_vocab, dtype=np.int64)  # pad row
            mask = np.zeros((k, cap), dtype=np.float32)
            for t, text in enumerate(texts):
                row = self.token_ids(text)
                ids[offset + t, : len(row)] = row
                mask[offset + t, : len(row)] = 1.0
            return {"token_ids": ids, "token_mask": mask}
        vecs = np.zeros((k, self.cfg.bow_dim), dtype=np.float32)
        for t, text in enumerate(texts):
            vecs[offset + t] = self._bow.embed(text)
        return {"bow": vecs}


class TrainableStateEncoder(nn.Module):
    """Mean of learned token embeddings; index token_vocab is padding."""

    def __init__(self, cfg: PolicyConfig):
        super().__init__()
        self.token_emb = nn.Embedding(cfg.token_vocab + 1, cfg.embed_dim)
        nn.init.normal_(self.token_emb.weight, std=0.02)

    def forward(self, batch: dict[str, torch.Tensor]) -> torch.Tensor:
        ids, mask = batch["token_ids"], batch["token_mask"]
        emb = self.token_emb(ids)  # (B, K, L, D)
        summed = (emb * mask.unsqueeze(-1)).sum(dim=-2)
        counts = mask.sum(dim=-1, keepdim=True).clamp(min=1.0)
        return summed / counts


class FrozenStateEncoder(nn.Module):
    """Fixed seeded linear map from the hashed-BoW space to the model space."""

    def __init__(self, cfg: PolicyConfig):
        super().__init__()
        rng = np.random.Generator(np.random.PCG64(cfg.seed))
        proj = rng.standard_normal((cfg.bow_dim, cfg.embed_dim)) / np.sqrt(cfg.bow_dim)
        self.register_buffer("proj", torch.tensor(proj, dtype=torch.float32))

    def forward(self, batch: dict[str, torch.Tensor]) -> torch.Tensor:
        return batch["bow"] @ self.proj.to(batch["bow"].dtype)


def make_encoder(cfg: PolicyConfig) -> nn.Module:
    if cfg.state_encoder == "trainable":
        return TrainableStateEncoder(cfg)
    return FrozenStateEncoder(cfg)
