"""Versioned binary checkpoints: config header plus named parameter tensors.

Layout: magic ``CFCK`` (4 bytes), version (u16 LE), model kind (u8: 0 = dt,
1 = classifier), header length (u64 LE), UTF-8 JSON header (config, rtg
stats, loss curve, tensor specs), then raw tensor bytes in spec order.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np
import torch

from claimforge.errors import CheckpointError
from claimforge.policy.config import PolicyConfig
from claimforge.policy.encoders import StateCodec
from claimforge.policy.model import DecisionTransformer
from claimforge.policy.training import ClassifierNet, TrainedClassifier, TrainedPolicy

MAGIC = b"CFCK"
VERSION = 1
_KINDS = {"dt": 0, "classifier": 1}
_KIND_NAMES = {v: k for k, v in _KINDS.items()}


def save_policy(obj: TrainedPolicy | TrainedClassifier, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    kind = "dt" if isinstance(obj, TrainedPolicy) else "classifier"
    state = obj.model.state_dict()
    names = sorted(state)
    tensors = [state[n].detach().cpu().numpy() for n in names]
    header = {
        "config": obj.cfg.to_dict(),
        "loss_curve": list(obj.loss_curve),
        "rtg_stats": getattr(obj, "rtg_stats", {}),
        "tensors": [
            {"name": n, "dtype": str(a.dtype), "shape": list(a.shape)}
            for n, a in zip(names, tensors)
        ],
    }
    blob = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<HB", VERSION, _KINDS[kind]))
        fh.write(struct.pack("<Q", len(blob)))
        fh.write(blob)
        for arr in tensors:
            fh.write(np.ascontiguousarray(arr).tobytes())


def load_policy(path: str | Path) -> TrainedPolicy | TrainedClassifier:
    path = Path(path)
    with open(path, "rb") as fh:
        if fh.read(4) != MAGIC:
            raise CheckpointError(f"{path}: not a claimforge checkpoint")
        version, kind_code = struct.unpack("<HB", fh.read(3))
        if version != VERSION:
            raise CheckpointError(f"{path}: unsupported checkpoint version {version}")
        if kind_code not in _KIND_NAMES:
            raise CheckpointError(f"{path}: unknown model kind {kind_code}")
        (blob_len,) = struct.unpack("<Q", fh.read(8))
        header = json.loads(fh.read(blob_len).decode("utf-8"))
        state = {}
        for spec in header["tensors"]:
            dtype = np.dtype(spec["dtype"])
            shape = tuple(spec["shape"])
            count = int(np.prod(shape)) if shape else 1
            buf = fh.read(count * dtype.itemsize)
            arr = np.frombuffer(buf, dtype=dtype).reshape(shape).copy()
            state[spec["name"]] = torch.from_numpy(arr)

    cfg = PolicyConfig.from_dict(header["config"])
    codec = StateCodec(cfg)
    if _KIND_NAMES[kind_code] == "dt":
        model = DecisionTransformer(cfg)
        model.load_state_dict(state)
        model.eval()
        return TrainedPolicy(
            model=model,
            cfg=cfg,
            codec=codec,
            rtg_stats=header.get("rtg_stats", {}),
            loss_curve=header.get("loss_curve", []),
        )
    single = PolicyConfig(**{**cfg.to_dict(), "block_size": 1})
    model = ClassifierNet(cfg)
    model.load_state_dict(state)
    model.eval()
    return TrainedClassifier(
        model=model,
        cfg=cfg,
        codec=StateCodec(single),
        loss_curve=header.get("loss_curve", []),
    )
