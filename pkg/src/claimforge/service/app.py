"""HTTP service wrapping the edit engine, search endpoints, and policy.

Session state stays client-side: the current token list travels in each
request, so any request sequence is replayable against the same artifacts.
Domain errors surface as HTTP 400 with machine-readable codes matching the
exception class names (IllegalAction, UnknownClaim, EmptyClaim, ...).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

import claimforge
from claimforge.errors import ClaimForgeError
from claimforge.lexedit import (
    EditAction,
    apply_action,
    legal_actions,
    retag,
    tokenize,
    unflatten_action,
)
from claimforge.lexedit.claims import split_text
from claimforge.lexedit.lexicon import Lexicon
from claimforge.policy.rollout import rollout
from claimforge.searchenv import Corpus, RewardSpec, SearchEndpoint
from claimforge.service import schemas

SNIPPET_CHARS = 200


@dataclass
class ServiceState:
    lexicon: Lexicon
    corpus: Corpus
    endpoints: dict[str, SearchEndpoint]
    policy: object | None = None
    default_backend: str = ""
    infer_lock: threading.Lock = field(default_factory=threading.Lock)

    def __post_init__(self):
        if not self.endpoints:
            raise ValueError("service needs at least one search endpoint")
        if not self.default_backend:
            self.default_backend = sorted(self.endpoints)[0]

    def endpoint_for(self, backend: str | None) -> SearchEndpoint:
        name = backend or self.default_backend
        try:
            return self.endpoints[name]
        except KeyError:
            raise ClaimForgeError(f"backend {name!r} not loaded") from None


def _snippet(text: str) -> str:
    if len(text) <= SNIPPET_CHARS:
        return text
    cut = text[:SNIPPET_CHARS]
    head, _, _ = cut.rpartition(" ")
    return (head or cut) + "..."


def _action_infos(claim, lexicon) -> list[schemas.ActionInfo]:
    return [
        schemas.ActionInfo(kind=a.kind.label, position=a.position, flat=a.flat)
        for a in sorted(legal_actions(claim, lexicon), key=lambda a: a.flat)
    ]


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="claimforge", version=claimforge.__version__)

    @app.exception_handler(ClaimForgeError)
    async def domain_error(_req: Request, exc: ClaimForgeError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(_req: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "ValidationError", "message": str(exc.errors())}},
        )

    @app.get("/v1/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(
            status="ok",
            backends=sorted(state.endpoints),
            policy_loaded=state.policy is not None,
            version=claimforge.__version__,
        )

    @app.get("/v1/corpus/stats", response_model=schemas.CorpusStatsResponse)
    def corpus_stats():
        lengths = [len(split_text(t)) for t in state.corpus.docs.values()]
        return schemas.CorpusStatsResponse(
            n_docs=len(state.corpus.docs),
            n_claims=len(state.corpus.relevance),
            backends=sorted(state.endpoints),
            mean_doc_tokens=sum(lengths) / len(lengths) if lengths else 0.0,
        )

    @app.post("/v1/tokenize", response_model=schemas.TokenizeResponse)
    def tokenize_route(req: schemas.TokenizeRequest):
        claim = tokenize(req.text, state.lexicon)
        return schemas.TokenizeResponse(
            tokens=list(claim.tokens),
            pos=[p.value for p in claim.pos],
            legal_actions=_action_infos(claim, state.lexicon),
        )

    @app.post("/v1/apply", response_model=schemas.ApplyResponse)
    def apply_route(req: schemas.ApplyRequest):
        claim = retag(req.tokens, state.lexicon)
        action = unflatten_action(req.action_flat)
        edited = apply_action(claim, action, state.lexicon)
        return schemas.ApplyResponse(
            new_text=edited.text,
            tokens=list(edited.tokens),
            pos=[p.value for p in edited.pos],
            legal_actions=_action_infos(edited, state.lexicon),
        )

    @app.post("/v1/score", response_model=schemas.ScoreResponse)
    def score_route(req: schemas.ScoreRequest):
        endpoint = state.endpoint_for(req.backend)
        spec = RewardSpec(req.metric, req.k)
        relevant = state.corpus.relevant_for(req.claim_id)
        if relevant is None:
            from claimforge.errors import UnknownClaim

            raise UnknownClaim(f"no relevance judgments for claim {req.claim_id!r}")
        ranked = endpoint.query(req.text, top_k=req.k)
        reward = spec.compute([doc_id for doc_id, _ in ranked], relevant)
        return schemas.ScoreResponse(
            reward=reward,
            backend=endpoint.backend,
            metric=spec.metric,
            k=spec.k,
            ranking=[
                schemas.RankedDoc(
                    doc_id=doc_id,
                    score=score,
                    snippet=_snippet(state.corpus.docs[doc_id]),
                    relevant=doc_id in relevant,
                )
                for doc_id, score in ranked
            ],
        )

    @app.post("/v1/suggest", response_model=schemas.SuggestResponse)
    def suggest_route(req: schemas.SuggestRequest):
        if state.policy is None:
            raise ClaimForgeError("no policy checkpoint loaded")
        endpoint = state.endpoint_for(req.backend)
        spec = RewardSpec(req.metric, req.k)
        claim = tokenize(req.text, state.lexicon, claim_id=req.claim_id)
        if state.corpus.relevant_for(req.claim_id) is None:
            from claimforge.errors import UnknownClaim

            raise UnknownClaim(f"no relevance judgments for claim {req.claim_id!r}")
        target = (
            req.target_rtg
            if req.target_rtg is not None
            else state.policy.default_target_rtg()
        )
        legal = sorted(legal_actions(claim, state.lexicon), key=lambda a: a.flat)
        with state.infer_lock:
            logits = state.policy.action_logits([target], [claim.text], [])
            preview = rollout(
                state.policy,
                claim,
                endpoint,
                spec,
                state.corpus,
                state.lexicon,
                target_rtg=target,
            )
        probs = _legal_softmax(logits, legal)
        ranked_actions = sorted(
            (
                schemas.SuggestedAction(
                    flat=a.flat,
                    kind=a.kind.label,
                    position=a.position,
                    predicted=probs[a.flat],
                )
                for a in legal
            ),
            key=lambda s: -s.predicted,
        )[: req.top_actions]
        steps = [
            schemas.PreviewStep(
                flat=s.action,
                kind=unflatten_action(s.action).kind.label,
                position=unflatten_action(s.action).position,
                text=s.text_after,
                reward=s.reward,
                rtg_before=s.rtg_before,
            )
            for s in preview.steps
        ]
        return schemas.SuggestResponse(
            actions=ranked_actions, rollout_preview=steps, target_rtg=target
        )

    return app


def _legal_softmax(logits: np.ndarray, legal: list[EditAction]) -> dict[int, float]:
    ids = [a.flat for a in legal]
    vals = logits[ids]
    vals = np.exp(vals - vals.max())
    vals /= vals.sum()
    return dict(zip(ids, vals.tolist()))
