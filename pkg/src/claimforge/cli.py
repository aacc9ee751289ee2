"""claimforge command line: fixtures, gen, train, rewrite, eval, index, serve."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from claimforge.lexedit import Lexicon, tokenize, unflatten_action
from claimforge.searchenv import Corpus, RewardSpec, build_index
from claimforge.searchenv.snapshots import load_endpoint, save_endpoint


def _load_lexicon(path: str | None) -> Lexicon:
    return Lexicon.from_dir(path) if path else Lexicon.builtin()


def _load_corpus_docs(corpus_path: str) -> dict[str, str]:
    docs = {}
    with open(corpus_path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                obj = json.loads(line)
                docs[obj["doc_id"]] = obj["text"]
    return docs


@click.group()
def main():
    """Claim rewriting for retrieval: data generation, training, evaluation, serving."""


@main.command()
@click.option("--planted", is_flag=True, required=True, help="generate the synthetic benchmark")
@click.option("--n", "n_claims", type=int, default=500, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--backend", type=click.Choice(["bm25", "knn"]), default="bm25", show_default=True)
@click.option("--metric", type=click.Choice(["ap", "recall", "rr"]), default="ap", show_default=True)
@click.option("--k", type=int, default=50, show_default=True)
@click.option("--depth", type=int, default=4, show_default=True)
@click.option("--out", "out_dir", type=click.Path(), required=True)
def fixtures(planted, n_claims, seed, backend, metric, k, depth, out_dir):
    """Write a planted benchmark: corpus, claims, lexicon, answer key."""
    from claimforge.ingest import make_planted_benchmark, save_dataset

    bench = make_planted_benchmark(
        n_claims, seed, backend=backend, spec=RewardSpec(metric, k), max_depth=depth
    )
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_dataset(bench.claims, bench.corpus, out / "claims.jsonl", out / "corpus.jsonl")
    bench.lexicon.save_dir(out / "lexicon")
    (out / "answer_key.json").write_text(
        json.dumps(bench.answer_key, indent=2, sort_keys=True) + "\n", "utf-8"
    )
    click.echo(
        f"wrote {len(bench.claims)} claims, {len(bench.corpus.docs)} docs to {out}"
    )


@main.command()
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--backend", type=click.Choice(["bm25", "knn"]), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--top-k", type=int, default=50, show_default=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def index(corpus_path, backend, seed, top_k, out_path):
    """Build and persist a search index snapshot."""
    docs = _load_corpus_docs(corpus_path)
    endpoint = build_index(Corpus(docs=docs), backend, top_k=top_k, seed=seed)
    save_endpoint(endpoint, out_path)
    click.echo(f"indexed {len(docs)} docs ({backend}) -> {out_path}")


@main.command()
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--claims", "claims_path", type=click.Path(exists=True), required=True)
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True), default=None)
@click.option("--backend", type=click.Choice(["bm25", "knn"]), default="bm25", show_default=True)
@click.option("--metric", type=click.Choice(["ap", "recall", "rr"]), default="ap", show_default=True)
@click.option("--k", type=int, default=50, show_default=True)
@click.option("--depth", type=int, default=4, show_default=True)
@click.option("--top-n", type=int, default=50, show_default=True)
@click.option("--min-improvement", type=float, default=0.03, show_default=True)
@click.option("--random-prune", type=float, default=0.05, show_default=True)
@click.option("--include-negative", is_flag=True, default=False)
@click.option("--rtg", type=click.Choice(["dense", "sparse", "both"]), default="both", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def gen(
    corpus_path, claims_path, lexicon_path, backend, metric, k, depth, top_n,
    min_improvement, random_prune, include_negative, rtg, seed, out_path,
):
    """Generate offline-RL trajectories by BFS over the edit space."""
    from claimforge.ingest import load_dataset
    from claimforge.trajgen import GenConfig, generate_dataset, save_trajectories

    lexicon = _load_lexicon(lexicon_path)
    records, corpus = load_dataset(claims_path, corpus_path)
    endpoint = build_index(corpus, backend, seed=seed)
    modes = ("dense", "sparse") if rtg == "both" else (rtg,)
    cfg = GenConfig(
        max_depth=depth,
        min_improvement=min_improvement,
        random_prune_prob=random_prune,
        top_n_sequences=top_n,
        include_negative=include_negative,
        seed=seed,
        modes=modes,
    )
    claims = [tokenize(r.text, lexicon, claim_id=r.claim_id) for r in records]
    trajectories, report = generate_dataset(
        claims, endpoint, RewardSpec(metric, k), cfg, corpus, lexicon
    )
    save_trajectories(trajectories, out_path)
    click.echo(
        f"{report.claims_improved}/{report.claims_total} claims improved "
        f"({report.claims_skipped_perfect} already perfect, "
        f"{report.claims_no_improvement} without improving edits); "
        f"{report.trajectories} trajectories -> {out_path}"
    )


@main.command()
@click.option("--trajectories", "traj_path", type=click.Path(exists=True), required=True)
@click.option("--mode", type=click.Choice(["dt", "classifier"]), default="dt", show_default=True)
@click.option("--rtg", type=click.Choice(["dense", "sparse"]), default="dense", show_default=True)
@click.option("--layers", type=int, default=2, show_default=True)
@click.option("--heads", type=int, default=4, show_default=True)
@click.option("--dim", type=int, default=128, show_default=True)
@click.option("--block-size", type=int, default=4, show_default=True)
@click.option("--epochs", type=int, default=5, show_default=True)
@click.option("--lr", type=float, default=3e-4, show_default=True)
@click.option("--batch-size", type=int, default=64, show_default=True)
@click.option("--encoder", type=click.Choice(["trainable", "frozen"]), default="trainable", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def train(
    traj_path, mode, rtg, layers, heads, dim, block_size, epochs, lr, batch_size,
    encoder, seed, out_path,
):
    """Train a decision transformer or the one-action classifier baseline."""
    from claimforge.policy import PolicyConfig, save_policy
    from claimforge.policy import train as train_dt
    from claimforge.policy import train_classifier
    from claimforge.policy.training import first_step_pairs
    from claimforge.trajgen import load_trajectories

    trajectories = load_trajectories(traj_path, mode=rtg)
    cfg = PolicyConfig(
        n_layers=layers,
        n_heads=heads,
        embed_dim=dim,
        block_size=block_size,
        state_encoder=encoder,
        learning_rate=lr,
        epochs=epochs,
        batch_size=batch_size,
        seed=seed,
    )
    if mode == "dt":
        policy = train_dt(trajectories, cfg, log_every=1)
    else:
        policy = train_classifier(first_step_pairs(trajectories), cfg)
    save_policy(policy, out_path)
    click.echo(
        f"trained {mode} on {len(trajectories)} {rtg} trajectories; "
        f"final loss {policy.loss_curve[-1]:.4f} -> {out_path}"
    )


@main.command()
@click.option("--ckpt", "ckpt_path", type=click.Path(exists=True), required=True)
@click.option("--claim", "claim_text", type=str, default=None, help="claim text (must match a claims-file entry unless --claim-id is given)")
@click.option("--claim-id", type=str, default=None)
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--claims", "claims_path", type=click.Path(exists=True), required=True)
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True), default=None)
@click.option("--backend", type=click.Choice(["bm25", "knn"]), default="bm25", show_default=True)
@click.option("--metric", type=click.Choice(["ap", "recall", "rr"]), default="ap", show_default=True)
@click.option("--k", type=int, default=50, show_default=True)
@click.option("--target-rtg", type=float, default=None)
@click.option("--json", "as_json", is_flag=True, default=False)
def rewrite(
    ckpt_path, claim_text, claim_id, corpus_path, claims_path, lexicon_path,
    backend, metric, k, target_rtg, as_json,
):
    """Rewrite one claim, printing the edit sequence and per-step scores."""
    from claimforge.errors import UnknownClaim
    from claimforge.ingest import load_dataset
    from claimforge.policy import load_policy
    from claimforge.policy.rollout import rollout as run_rollout
    from claimforge.policy.training import TrainedPolicy

    lexicon = _load_lexicon(lexicon_path)
    records, corpus = load_dataset(claims_path, corpus_path)
    by_id = {r.claim_id: r for r in records}
    by_text = {r.text: r for r in records}
    if claim_id is not None:
        record = by_id.get(claim_id)
        if record is None:
            raise UnknownClaim(f"claim id {claim_id!r} not in {claims_path}")
        text = claim_text if claim_text is not None else record.text
    elif claim_text is not None:
        record = by_text.get(claim_text)
        if record is None:
            raise UnknownClaim(
                "claim text not found in the claims file; pass --claim-id to attach judgments"
            )
        text = claim_text
    else:
        raise click.UsageError("provide --claim and/or --claim-id")

    policy = load_policy(ckpt_path)
    claim = tokenize(text, lexicon, claim_id=record.claim_id)
    endpoint = build_index(corpus, backend)
    spec = RewardSpec(metric, k)
    if isinstance(policy, TrainedPolicy):
        result = run_rollout(
            policy, claim, endpoint, spec, corpus, lexicon, target_rtg=target_rtg
        )
    else:
        from claimforge.evalharness import ClassifierRewriter

        result = ClassifierRewriter(policy, lexicon, iterate=True).rewrite(
            claim, endpoint, spec, corpus
        )

    if as_json:
        click.echo(
            json.dumps(
                {
                    "claim_id": result.claim_id,
                    "original_text": result.original_text,
                    "original_reward": result.original_reward,
                    "final_text": result.final_text,
                    "final_reward": result.final_reward,
                    "steps": [
                        {
                            "action": s.action,
                            "kind": unflatten_action(s.action).kind.label,
                            "position": unflatten_action(s.action).position,
                            "text": s.text_after,
                            "reward": s.reward,
                        }
                        for s in result.steps
                    ],
                },
                indent=2,
            )
        )
        return
    click.echo(f"original ({result.original_reward:.4f}): {result.original_text}")
    for i, step in enumerate(result.steps, start=1):
        action = unflatten_action(step.action)
        click.echo(
            f"  step {i}: {action.kind.label}@{action.position} "
            f"-> ({step.reward:.4f}) {step.text_after}"
        )
    click.echo(f"final ({result.final_reward:.4f}): {result.final_text}")


@main.command("eval")
@click.option("--ckpt", "ckpt_path", type=click.Path(exists=True), required=True)
@click.option("--claims", "claims_path", type=click.Path(exists=True), required=True)
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True), default=None)
@click.option("--backend", type=click.Choice(["bm25", "knn"]), default="bm25", show_default=True)
@click.option("--metric", type=click.Choice(["ap", "recall", "rr"]), default="ap", show_default=True)
@click.option("--k", type=int, default=50, show_default=True)
@click.option("--flat-epsilon", type=float, default=0.01, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--ablation", is_flag=True, default=False, help="also run the retriever x metric x negatives grid")
@click.option("--train-claims", "train_claims_path", type=click.Path(exists=True), default=None, help="training claims for --ablation")
@click.option("--report", "report_dir", type=click.Path(), required=True)
def eval_cmd(
    ckpt_path, claims_path, corpus_path, lexicon_path, backend, metric, k,
    flat_epsilon, seed, ablation, train_claims_path, report_dir,
):
    """Evaluate baselines and the checkpoint; write the report directory."""
    from claimforge.evalharness import (
        ClassifierRewriter,
        IdentityRewriter,
        PolicyRewriter,
        RandomRewriter,
        claims_from_records,
        evaluate,
        run_ablation,
        write_report_dir,
    )
    from claimforge.ingest import load_dataset
    from claimforge.policy import load_policy
    from claimforge.policy.training import TrainedPolicy
    from claimforge.trajgen import GenConfig

    lexicon = _load_lexicon(lexicon_path)
    records, corpus = load_dataset(claims_path, corpus_path)
    claims = claims_from_records(records, lexicon)
    endpoint = build_index(corpus, backend, seed=seed)
    spec = RewardSpec(metric, k)
    policy = load_policy(ckpt_path)
    if isinstance(policy, TrainedPolicy):
        rewriter = PolicyRewriter(policy, lexicon)
    else:
        rewriter = ClassifierRewriter(policy, lexicon, iterate=True)

    reports = [
        evaluate(IdentityRewriter(), claims, endpoint, spec, corpus),
        evaluate(RandomRewriter(lexicon, seed=seed), claims, endpoint, spec, corpus),
        evaluate(rewriter, claims, endpoint, spec, corpus),
    ]

    table = None
    if ablation:
        if not train_claims_path:
            raise click.UsageError("--ablation requires --train-claims")
        train_records, _ = load_dataset(train_claims_path, corpus_path)
        table = run_ablation(
            train_records,
            records,
            corpus,
            lexicon,
            GenConfig(seed=seed),
            policy.cfg,
            k=k,
        )
        click.echo(table.render_text())

    out = write_report_dir(
        report_dir,
        reports,
        flat_epsilon=flat_epsilon,
        ablation=table,
        extra={"backend": backend, "metric": metric, "k": k, "seed": seed},
    )
    for rep in reports:
        click.echo(
            f"{rep.rewriter:>22}: original {rep.original_mean:.4f} "
            f"-> rewritten {rep.rewritten_mean:.4f}"
        )
    click.echo(f"report -> {out}")


@main.command()
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--claims", "claims_path", type=click.Path(exists=True), required=True)
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True), default=None)
@click.option("--index", "index_paths", type=click.Path(exists=True), multiple=True, help="index snapshot(s); default builds BM25 in memory")
@click.option("--build", "build_backends", type=str, default="", help="comma list of backends to build in memory (bm25,knn)")
@click.option("--ckpt", "ckpt_path", type=click.Path(exists=True), default=None)
@click.option("--addr", type=str, default="127.0.0.1:8337", show_default=True)
def serve(corpus_path, claims_path, lexicon_path, index_paths, build_backends, ckpt_path, addr):
    """Run the workbench HTTP service."""
    import uvicorn

    from claimforge.ingest import load_dataset
    from claimforge.policy import load_policy
    from claimforge.service import ServiceState, create_app

    lexicon = _load_lexicon(lexicon_path)
    _, corpus = load_dataset(claims_path, corpus_path)
    endpoints = {}
    for path in index_paths:
        endpoint = load_endpoint(path)
        endpoints[endpoint.backend] = endpoint
    for backend in filter(None, build_backends.split(",")):
        endpoints[backend.strip()] = build_index(corpus, backend.strip())
    if not endpoints:
        endpoints["bm25"] = build_index(corpus, "bm25")
    policy = load_policy(ckpt_path) if ckpt_path else None
    state = ServiceState(
        lexicon=lexicon, corpus=corpus, endpoints=endpoints, policy=policy
    )
    host, _, port = addr.partition(":")
    click.echo(f"serving on http://{addr} (backends: {sorted(endpoints)})")
    uvicorn.run(create_app(state), host=host, port=int(port or 8337), log_level="info")


if __name__ == "__main__":
    sys.exit(main())
