"""Pydantic request/response models for the /v1 JSON API."""

from __future__ import annotations

from pydantic import BaseModel, Field


class ActionInfo(BaseModel):
    kind: str
    position: int
    flat: int


class TokenizeRequest(BaseModel):
    text: str


class TokenizeResponse(BaseModel):
    tokens: list[str]
    pos: list[str]
    legal_actions: list[ActionInfo]


class ApplyRequest(BaseModel):
    tokens: list[str]
    action_flat: int


class ApplyResponse(BaseModel):
    new_text: str
    tokens: list[str]
    pos: list[str]
    legal_actions: list[ActionInfo]


class ScoreRequest(BaseModel):
    text: str
    claim_id: str
    backend: str | None = None
    metric: str = "ap"
    k: int = Field(default=50, ge=1)


class RankedDoc(BaseModel):
    doc_id: str
    score: float
    snippet: str
    relevant: bool


class ScoreResponse(BaseModel):
    reward: float
    backend: str
    metric: str
    k: int
    ranking: list[RankedDoc]


class SuggestRequest(BaseModel):
    text: str
    claim_id: str
    target_rtg: float | None = None
    backend: str | None = None
    metric: str = "ap"
    k: int = Field(default=50, ge=1)
    top_actions: int = Field(default=10, ge=1)


class SuggestedAction(BaseModel):
    flat: int
    kind: str
    position: int
    predicted: float  # probability mass over the legal actions


class PreviewStep(BaseModel):
    flat: int
    kind: str
    position: int
    text: str
    reward: float
    rtg_before: float


class SuggestResponse(BaseModel):
    actions: list[SuggestedAction]
    rollout_preview: list[PreviewStep]
    target_rtg: float


class HealthResponse(BaseModel):
    status: str
    backends: list[str]
    policy_loaded: bool
    version: str


class CorpusStatsResponse(BaseModel):
    n_docs: int
    n_claims: int
    backends: list[str]
    mean_doc_tokens: float


class ErrorDetail(BaseModel):
    code: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorDetail
