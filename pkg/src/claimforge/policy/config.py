"""Policy model configuration.

Desk-scale defaults (2 layers, 4 heads, dim 128) replace the full-scale
6/8/768 setup; block_size K is the maximum number of edits per episode and
the flattened model sequence is 3K tokens long.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

ENCODERS = ("trainable", "frozen")


@dataclass(frozen=True)
class PolicyConfig:
    n_layers: int = 2
    n_heads: int = 4
    embed_dim: int = 128
    block_size: int = 4
    state_encoder: str = "trainable"
    action_vocab: int = 128
    learning_rate: float = 3e-4
    epochs: int = 5
    batch_size: int = 64
    seed: int = 0
    grad_clip: float = 1.0
    token_vocab: int = 4096
    bow_dim: int = 256
    max_state_tokens: int = 40

    def __post_init__(self):
        if self.embed_dim % self.n_heads != 0:
            raise ValueError(
                f"embed_dim {self.embed_dim} not divisible by n_heads {self.n_heads}"
            )
        if self.block_size < 1:
            raise ValueError("block_size must be >= 1")
        if self.state_encoder not in ENCODERS:
            raise ValueError(f"state_encoder must be one of {ENCODERS}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, obj: dict) -> "PolicyConfig":
        return cls(**obj)
