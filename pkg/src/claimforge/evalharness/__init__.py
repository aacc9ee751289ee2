"""Evaluation harness: baselines vs policies, analysis tables, ablation grid."""

from claimforge.evalharness.ablation import AblationCell, AblationTable, run_ablation
from claimforge.evalharness.analysis import (
    ActionOutcome,
    CurvePoint,
    StepCurve,
    action_analysis,
    step_curve,
)
from claimforge.evalharness.evaluate import (
    ClassifierRewriter,
    EvalReport,
    IdentityRewriter,
    PerClaimRecord,
    PolicyRewriter,
    RandomRewriter,
    claims_from_records,
    evaluate,
)
from claimforge.evalharness.reports import write_report_dir

__all__ = [
    "AblationCell",
    "AblationTable",
    "ActionOutcome",
    "ClassifierRewriter",
    "CurvePoint",
    "EvalReport",
    "IdentityRewriter",
    "PerClaimRecord",
    "PolicyRewriter",
    "RandomRewriter",
    "StepCurve",
    "action_analysis",
    "claims_from_records",
    "evaluate",
    "run_ablation",
    "step_curve",
    "write_report_dir",
]
