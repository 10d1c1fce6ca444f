from __future__ import annotations

import logging
import multiprocessing as mp
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from tqdm import tqdm

from algebra.monomials import TermOrder
from algebra.scalars import FieldMode
from app_logging.handlers import log_run_event
from corpus_io.parser import CorpusEntry, parse_file
from exceptions import ConfigurationError, ContractViolation, EngineAssertionError, HalgError
from invariants.calculator import InvariantCalculator
from resolve.cache import ResolutionCache
from verify.checks import ALL_CHECKS, RING_CHECKS, CheckContext, CheckFunction, explore_questions
from verify.outcome import CheckOutcome, Status, Witness
from verify.reverify import reverify_failure

_LOGGER = logging.getLogger("halg.verify")

QUESTION_IDS = ("question1", "question2")


def resolve_check_ids(selection: Union[str, Sequence[str], None]) -> Tuple[str, ...]:
    """`all` またはカンマ区切りの検査名を、登録順の検査 id の並びにする。

    Raises:
        ConfigurationError: 未知の検査名が含まれる場合。
    """
    if selection is None or selection == "all":
        return tuple(ALL_CHECKS)
    names = selection.split(",") if isinstance(selection, str) else list(selection)
    wanted = {name.strip() for name in names if name.strip()}
    unknown = sorted(wanted - set(ALL_CHECKS))
    if unknown:
        raise ConfigurationError(f"未知の検査です: {', '.join(unknown)} (使用可能: {', '.join(ALL_CHECKS)})")
    if not wanted:
        raise ConfigurationError("検査が指定されていません。")
    return tuple(check_id for check_id in ALL_CHECKS if check_id in wanted)


@dataclass(frozen=True)
class CheckJob:
    """1つのコーパス加群に対する仕事。別プロセスへ渡すので値だけを持つ。"""

    path: str
    module_id: str
    field_override: Optional[FieldMode]
    default_field: Optional[FieldMode]
    order: TermOrder
    bound: Optional[int]
    check_ids: Tuple[str, ...]
    run_ring_checks: bool = False
    questions: bool = False


# ---------------------------------------------------------------------- ワーカー側


@lru_cache(maxsize=None)
def _entries(
    path: str, field_override: Optional[FieldMode], default_field: Optional[FieldMode], order: TermOrder
) -> Dict[str, CorpusEntry]:
    entries = parse_file(Path(path), field_override=field_override, default_field=default_field, order=order)
    return {entry.module_id: entry for entry in entries}


@lru_cache(maxsize=1)
def _calculator() -> InvariantCalculator:
    # プロセスごとに1つの分解キャッシュを共有する。
    return InvariantCalculator(ResolutionCache())


def _guarded(check_id: str, check: CheckFunction, context: CheckContext) -> CheckOutcome:
    try:
        outcome = check(context)
    except (EngineAssertionError, ContractViolation) as exc:
        label = "エンジンの事後検査" if isinstance(exc, EngineAssertionError) else "契約違反"
        _LOGGER.error("%s/%s: %s のため FAIL とします。", context.module_id, check_id, label, exc_info=exc)
        return CheckOutcome(
            check_id,
            context.module_id,
            Status.FAIL,
            witnesses=(Witness(None, 0, 0, label),),
            notes=(str(exc),),
        )
    except HalgError as exc:
        _LOGGER.warning("%s/%s: 計算できませんでした: %s", context.module_id, check_id, exc)
        return CheckOutcome(check_id, context.module_id, Status.UNKNOWN, notes=(f"計算できませんでした: {exc}",))
    return reverify_failure(outcome, context, check, _LOGGER)


def run_job(job: CheckJob) -> List[CheckOutcome]:
    """仕事を1つ実行する。ファイルはプロセスごとに読み直す。"""
    entry = _entries(job.path, job.field_override, job.default_field, job.order)[job.module_id]
    context = CheckContext(
        module_id=entry.key,
        module=entry.module,
        calculator=_calculator(),
        bound=job.bound,
        equidimensional=entry.equidimensional,
        serre_k=entry.serre_k,
    )
    outcomes: List[CheckOutcome] = []
    for check_id in job.check_ids:
        if check_id in RING_CHECKS and not job.run_ring_checks:
            continue
        outcomes.append(_guarded(check_id, ALL_CHECKS[check_id], context))
    if job.questions:
        try:
            outcomes.extend(explore_questions(context))
        except HalgError as exc:
            _LOGGER.warning("%s: 問いの探索で計算できませんでした: %s", entry.key, exc)
            outcomes.extend(
                CheckOutcome(q, entry.key, Status.UNKNOWN, notes=(f"計算できませんでした: {exc}",))
                for q in QUESTION_IDS
            )
    return outcomes


# ---------------------------------------------------------------------- 呼び出し側


def plan_jobs(
    paths: Iterable[Path],
    check_ids: Sequence[str],
    *,
    field_override: Optional[FieldMode] = None,
    default_field: Optional[FieldMode] = None,
    order: TermOrder = TermOrder.DEGREVLEX,
    bound: Optional[int] = None,
    questions: bool = False,
) -> List[CheckJob]:
    """コーパスを読み、加群ごとの仕事を作る。環の検査は環ごとに最初の加群にだけ割り当てる。"""
    jobs: List[CheckJob] = []
    seen_rings: Set[str] = set()
    for path in paths:
        for entry in _entries(str(path), field_override, default_field, order).values():
            first_of_ring = entry.ring_id not in seen_rings
            seen_rings.add(entry.ring_id)
            jobs.append(
                CheckJob(
                    path=str(path),
                    module_id=entry.module_id,
                    field_override=field_override,
                    default_field=default_field,
                    order=order,
                    bound=bound,
                    check_ids=tuple(check_ids),
                    run_ring_checks=first_of_ring,
                    questions=questions,
                )
            )
    return jobs


def effective_jobs(jobs: int) -> int:
    """0 以下はマシンのコア数とする。"""
    if jobs > 0:
        return jobs
    return os.cpu_count() or 1


def execute(jobs: Sequence[CheckJob], workers: int = 1, *, desc: str = "verify") -> List[CheckOutcome]:
    """仕事を実行し、結果を (module, check) 順に並べて返す。

    workers が 2 以上なら spawn のプロセスプールで加群単位に並列化する。
    """
    workers = min(effective_jobs(workers), max(len(jobs), 1))
    _LOGGER.info("%d 件の加群を %d プロセスで検査します。", len(jobs), workers)
    results: List[CheckOutcome] = []
    if workers == 1:
        for job in tqdm(jobs, desc=desc, dynamic_ncols=True, ascii=True, disable=None):
            results.extend(run_job(job))
    else:
        context = mp.get_context("spawn")
        with context.Pool(processes=workers) as pool:
            for chunk in tqdm(
                pool.imap_unordered(run_job, jobs),
                total=len(jobs),
                desc=desc,
                dynamic_ncols=True,
                ascii=True,
                disable=None,
            ):
                results.extend(chunk)
    results.sort(key=lambda outcome: outcome.sort_key)
    for outcome in results:
        log_run_event(
            "check.outcome",
            {"module": outcome.module_id, "check": outcome.check_id, "status": outcome.status.value},
        )
    return results


def run_verify(
    paths: Iterable[Path],
    checks: Union[str, Sequence[str], None] = "all",
    *,
    field_override: Optional[FieldMode] = None,
    default_field: Optional[FieldMode] = None,
    order: TermOrder = TermOrder.DEGREVLEX,
    bound: Optional[int] = None,
    jobs: int = 1,
) -> List[CheckOutcome]:
    """コーパスの全加群に検査を実行する。問いの探索は含まない。"""
    check_ids = resolve_check_ids(checks)
    planned = plan_jobs(
        paths, check_ids, field_override=field_override, default_field=default_field, order=order, bound=bound
    )
    return execute(planned, jobs, desc="verify")


def run_explore(
    paths: Iterable[Path],
    questions: Sequence[int] = (1, 2),
    *,
    field_override: Optional[FieldMode] = None,
    default_field: Optional[FieldMode] = None,
    order: TermOrder = TermOrder.DEGREVLEX,
    bound: Optional[int] = None,
    jobs: int = 1,
) -> List[CheckOutcome]:
    """コーパスの全加群で2つの問いの両辺を評価する。

    Raises:
        ConfigurationError: 問いの番号が 1, 2 以外の場合。
    """
    invalid = sorted(set(questions) - {1, 2})
    if invalid:
        raise ConfigurationError(f"問いの番号は 1 または 2 です: {invalid}")
    planned = plan_jobs(
        paths,
        (),
        field_override=field_override,
        default_field=default_field,
        order=order,
        bound=bound,
        questions=True,
    )
    outcomes = execute(planned, jobs, desc="explore")
    keep = {f"question{n}" for n in questions}
    return [outcome for outcome in outcomes if outcome.check_id in keep]

