"""Report file emission: report.json plus the CSV analysis artifacts."""

from __future__ import annotations

import csv
import json
from pathlib import Path

from claimforge.evalharness.ablation import AblationTable
from claimforge.evalharness.analysis import StepCurve, action_analysis, step_curve
from claimforge.evalharness.evaluate import EvalReport


def write_report_dir(
    out_dir: str | Path,
    reports: list[EvalReport],
    flat_epsilon: float = 0.01,
    ablation: AblationTable | None = None,
    extra: dict | None = None,
) -> Path:
    """Write report.json, per_claim.csv, step_curve.csv, actions.csv and,
    when an ablation table is given, ablation.csv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    primary = reports[-1]
    curve: StepCurve = step_curve(primary.rollouts, flat_epsilon=flat_epsilon)
    actions = action_analysis(primary.rollouts) if primary.rollouts else []

    payload = {
        "results": [r.to_dict() for r in reports],
        "analysis": {
            "flat_epsilon": curve.flat_epsilon,
            "unchanged_constant": curve.unchanged_constant,
            "unchanged_minor": curve.unchanged_minor,
        },
    }
    if ablation is not None:
        payload["ablation"] = ablation.rows()
    if extra:
        payload["config"] = extra
    (out / "report.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", "utf-8"
    )

    _write_csv(
        out / "per_claim.csv",
        ["claim_id", "original", "rewritten", "n_edits", "actions"],
        [
            [p.claim_id, p.original, p.rewritten, p.n_edits, " ".join(map(str, p.actions))]
            for p in primary.per_claim
        ],
    )
    _write_csv(
        out / "step_curve.csv",
        ["turn", "segment", "mean", "count"],
        [[p.turn, p.segment, p.mean, p.count] for p in curve.points],
    )
    _write_csv(
        out / "actions.csv",
        ["kind", "improved", "unchanged", "decreased", "mean_delta"],
        [[a.kind, a.improved, a.unchanged, a.decreased, a.mean_delta] for a in actions],
    )
    if ablation is not None:
        _write_csv(
            out / "ablation.csv",
            ["backend", "metric", "mode", "claim_mean", "policy_mean", "n_trajectories"],
            [
                [r["backend"], r["metric"], r["mode"], r["claim_mean"], r["policy_mean"], r["n_trajectories"]]
                for r in ablation.rows()
            ],
        )
    return out


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
