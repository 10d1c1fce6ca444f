"""不足加群に関する不等式・等式を加群ごとに機械的に確かめる検査群と実行器。"""

from .checks import ALL_CHECKS, MODULE_CHECKS, RING_CHECKS, CheckContext, CheckFunction, explore_questions
from .harness import CheckJob, execute, plan_jobs, resolve_check_ids, run_explore, run_job, run_verify
from .outcome import CheckOutcome, IsoEvidence, IsoVerdict, Status, Window, Witness, aligned_series, iso_evidence
from .reverify import reorder_module, reverify_failure

__all__ = [
    "ALL_CHECKS",
    "CheckContext",
    "CheckFunction",
    "CheckJob",
    "CheckOutcome",
    "IsoEvidence",
    "IsoVerdict",
    "MODULE_CHECKS",
    "RING_CHECKS",
    "Status",
    "Window",
    "Witness",
    "aligned_series",
    "execute",
    "explore_questions",
    "iso_evidence",
    "plan_jobs",
    "reorder_module",
    "resolve_check_ids",
    "reverify_failure",
    "run_explore",
    "run_job",
    "run_verify",
]
