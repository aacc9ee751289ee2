"""Decoder-only decision transformer over interleaved (rtg, state, action) tokens.

Each episode step contributes three consecutive sequence positions in the
order returns-to-go, state, action; a K-step block therefore unrolls to 3K
positions under a causal mask. Action logits are read at the state positions,
so the prediction for step t conditions on rtg/state at t and everything
before, but never on the step's own action. Episodes shorter than K are
left-padded; padded positions are masked out of attention keys and loss, and
timestep embeddings (not raw positions) keep padded and truncated forward
passes identical on the real steps.
"""

from __future__ import annotations

import math

import torch
from torch import nn
from torch.nn import functional as F

from claimforge.errors import ShapeMismatch
from claimforge.policy.config import PolicyConfig
from claimforge.policy.encoders import make_encoder

PAD_ACTION = 128  # embedding slot for "no action yet" / padded steps


class CausalSelfAttention(nn.Module):
    def __init__(self, cfg: PolicyConfig):
        super().__init__()
        self.n_heads = cfg.n_heads
        self.head_dim = cfg.embed_dim // cfg.n_heads
        self.qkv = nn.Linear(cfg.embed_dim, 3 * cfg.embed_dim)
        self.proj = nn.Linear(cfg.embed_dim, cfg.embed_dim)

    def forward(self, x: torch.Tensor, allowed: torch.Tensor) -> torch.Tensor:
        b, t, d = x.shape
        q, k, v = self.qkv(x).split(d, dim=2)
        q = q.view(b, t, self.n_heads, self.head_dim).transpose(1, 2)
        k = k.view(b, t, self.n_heads, self.head_dim).transpose(1, 2)
        v = v.view(b, t, self.n_heads, self.head_dim).transpose(1, 2)
        att = (q @ k.transpose(-2, -1)) / math.sqrt(self.head_dim)
        att = att.masked_fill(~allowed.unsqueeze(1), float("-inf"))
        att = F.softmax(att, dim=-1)
        y = (att @ v).transpose(1, 2).contiguous().view(b, t, d)
        return self.proj(y)


class Block(nn.Module):
    def __init__(self, cfg: PolicyConfig):
        super().__init__()
        self.ln1 = nn.LayerNorm(cfg.embed_dim)
        self.attn = CausalSelfAttention(cfg)
        self.ln2 = nn.LayerNorm(cfg.embed_dim)
        self.mlp = nn.Sequential(
            nn.Linear(cfg.embed_dim, 4 * cfg.embed_dim),
            nn.GELU(),
            nn.Linear(4 * cfg.embed_dim, cfg.embed_dim),
        )

    def forward(self, x: torch.Tensor, allowed: torch.Tensor) -> torch.Tensor:
        x = x + self.attn(self.ln1(x), allowed)
        return x + self.mlp(self.ln2(x))


class DecisionTransformer(nn.Module):
    def __init__(self, cfg: PolicyConfig):
        super().__init__()
        self.cfg = cfg
        self.state_encoder = make_encoder(cfg)
        self.embed_rtg = nn.Linear(1, cfg.embed_dim)
        self.embed_action = nn.Embedding(cfg.action_vocab + 1, cfg.embed_dim)
        self.embed_timestep = nn.Embedding(cfg.block_size, cfg.embed_dim)
        self.embed_ln = nn.LayerNorm(cfg.embed_dim)
        self.blocks = nn.ModuleList(Block(cfg) for _ in range(cfg.n_layers))
        self.ln_f = nn.LayerNorm(cfg.embed_dim)
        self.head = nn.Linear(cfg.embed_dim, cfg.action_vocab)
        for module in (self.embed_action, self.embed_timestep):
            nn.init.normal_(module.weight, std=0.02)
        nn.init.normal_(self.head.weight, std=0.02)
        nn.init.zeros_(self.head.bias)

    def forward(self, batch: dict[str, torch.Tensor]) -> torch.Tensor:
        """Action logits per timestep, shape (batch, K, action_vocab)."""
        k = self.cfg.block_size
        rtg, actions = batch["rtg"], batch["actions"]
        step_mask, timesteps = batch["step_mask"], batch["timesteps"]
        b = rtg.shape[0]
        if rtg.shape != (b, k) or actions.shape != (b, k) or step_mask.shape != (b, k):
            raise ShapeMismatch(
                f"expected (batch, {k}) episode tensors, got rtg {tuple(rtg.shape)}, "
                f"actions {tuple(actions.shape)}, mask {tuple(step_mask.shape)}"
            )

        dtype = self.head.weight.dtype
        state_emb = self.state_encoder(batch).to(dtype)  # (B, K, D)
        rtg_emb = self.embed_rtg(rtg.unsqueeze(-1).to(dtype))
        act_emb = self.embed_action(actions)
        time_emb = self.embed_timestep(timesteps)

        # (B, K, 3, D) -> (B, 3K, D), step order: rtg, state, action
        tokens = torch.stack(
            [rtg_emb + time_emb, state_emb + time_emb, act_emb + time_emb], dim=2
        ).reshape(b, 3 * k, -1)
        tokens = self.embed_ln(tokens)

        key_mask = step_mask.unsqueeze(-1).expand(b, k, 3).reshape(b, 3 * k).bool()
        causal = torch.tril(torch.ones(3 * k, 3 * k, dtype=torch.bool, device=rtg.device))
        allowed = causal.unsqueeze(0) & key_mask.unsqueeze(1)
        # padded query rows may see themselves so softmax stays finite
        eye = torch.eye(3 * k, dtype=torch.bool, device=rtg.device)
        allowed = allowed | eye.unsqueeze(0)

        x = tokens
        for block in self.blocks:
            x = block(x, allowed)
        x = self.ln_f(x)
        return self.head(x[:, 1::3, :])  # state positions

    @torch.no_grad()
    def logits_for_episode(self, batch: dict[str, torch.Tensor], step: int) -> torch.Tensor:
        """Logits for one live episode at the given (right-aligned) step."""
        was_training = self.training
        self.eval()
        out = self.forward(batch)[0, step]
        if was_training:
            self.train()
        return out
