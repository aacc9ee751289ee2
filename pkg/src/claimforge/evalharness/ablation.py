"""Retriever x metric x negative-examples ablation grid."""

from __future__ import annotations

from dataclasses import dataclass, field

from claimforge.errors import MissingCell
from claimforge.evalharness.evaluate import (
    EvalReport,
    PolicyRewriter,
    claims_from_records,
    evaluate,
)
from claimforge.lexedit.lexicon import Lexicon
from claimforge.policy.config import PolicyConfig
from claimforge.policy.training import train
from claimforge.searchenv import Corpus, RewardSpec, build_index
from claimforge.trajgen import DENSE, GenConfig, generate_dataset

BACKENDS = ("bm25", "knn")
METRICS = ("ap", "recall", "rr")
MODES = (False, True)  # include_negative


@dataclass(frozen=True)
class AblationCell:
    backend: str
    metric: str
    include_negative: bool
    claim_mean: float
    policy_mean: float
    n_trajectories: int

    @property
    def key(self) -> tuple[str, str, bool]:
        return (self.backend, self.metric, self.include_negative)


@dataclass
class AblationTable:
    k: int
    cells: list[AblationCell] = field(default_factory=list)

    def cell(self, backend: str, metric: str, include_negative: bool) -> AblationCell:
        for cell in self.cells:
            if cell.key == (backend, metric, include_negative):
                return cell
        raise MissingCell(f"no ablation cell for {(backend, metric, include_negative)}")

    def rows(self) -> list[dict]:
        return [
            {
                "backend": c.backend,
                "metric": c.metric,
                "mode": "pos+neg" if c.include_negative else "pos_only",
                "claim_mean": c.claim_mean,
                "policy_mean": c.policy_mean,
                "n_trajectories": c.n_trajectories,
            }
            for c in self.cells
        ]

    def render_text(self) -> str:
        header = f"{'retriever':<10}{'metric':<8}{'mode':<10}{'claim':>8}{'policy':>8}"
        lines = [header, "-" * len(header)]
        for c in self.cells:
            mode = "pos+neg" if c.include_negative else "pos"
            lines.append(
                f"{c.backend:<10}{c.metric:<8}{mode:<10}"
                f"{c.claim_mean:>8.4f}{c.policy_mean:>8.4f}"
            )
        return "\n".join(lines)


def run_ablation(
    train_records,
    dev_records,
    corpus: Corpus,
    lexicon: Lexicon,
    gen_cfg: GenConfig,
    policy_cfg: PolicyConfig,
    k: int = 50,
    backends=BACKENDS,
    metrics=METRICS,
) -> AblationTable:
    """Generate, train, and evaluate one policy per grid cell.

    Each cell rewrites dev claims against its own endpoint/metric; the claim
    baseline column is the identity rewriter on the same cell.
    """
    table = AblationTable(k=k)
    train_all = claims_from_records(train_records, lexicon)
    dev_all = claims_from_records(dev_records, lexicon)
    for backend in backends:
        endpoint = build_index(corpus, backend)
        for metric in metrics:
            spec = RewardSpec(metric, k)
            for include_negative in MODES:
                cell_gen = GenConfig(
                    max_depth=gen_cfg.max_depth,
                    min_improvement=gen_cfg.min_improvement,
                    random_prune_prob=gen_cfg.random_prune_prob,
                    top_n_sequences=gen_cfg.top_n_sequences,
                    include_negative=include_negative,
                    seed=gen_cfg.seed,
                    modes=(DENSE,),
                )
                trajectories, _ = generate_dataset(
                    train_all, endpoint, spec, cell_gen, corpus, lexicon
                )
                policy = train(trajectories, policy_cfg)
                rewriter = PolicyRewriter(policy, lexicon)
                report: EvalReport = evaluate(rewriter, dev_all, endpoint, spec, corpus)
                table.cells.append(
                    AblationCell(
                        backend=backend,
                        metric=metric,
                        include_negative=include_negative,
                        claim_mean=report.original_mean,
                        policy_mean=report.rewritten_mean,
                        n_trajectories=len(trajectories),
                    )
                )
    return table
