"""
可行性判定入口

按线程数选择单进程 DFS 或子树并行；可行结论的见证每次都用 verify_piercing 复核，
复核失败说明实现有 bug，直接抛 InvariantViolation。
"""

import structlog

from app.config import get_settings
from app.exceptions import InvalidInputError, InvariantViolation
from app.observability.metrics import (
    SEARCH_DURATION,
    SEARCH_NODES_TOTAL,
    SEARCH_PRUNES_TOTAL,
    SEARCH_VERDICT_TOTAL,
)
from app.piercing.verify import verify_piercing
from app.search.checkpoint import load_checkpoint
from app.search.engine import SearchEngine
from app.search.parallel import run_parallel
from app.search.schemas import Instance, SearchBudget, SearchOutcome, Verdict

log = structlog.get_logger()


def _record(outcome: SearchOutcome) -> None:
    SEARCH_NODES_TOTAL.inc(outcome.stats.nodes)
    for kind, count in outcome.stats.prunes.items():
        SEARCH_PRUNES_TOTAL.labels(kind=kind).inc(count)
    SEARCH_VERDICT_TOTAL.labels(verdict=outcome.verdict.value).inc()
    SEARCH_DURATION.observe(outcome.stats.elapsed_ms / 1000)


def feasible(
    instance: Instance,
    budget: SearchBudget | None = None,
    threads: int | None = None,
    symmetry: bool | None = None,
    split_depth: int | None = None,
    checkpoint_path: str | None = None,
    resume_path: str | None = None,
) -> SearchOutcome:
    settings = get_settings()
    budget = budget or SearchBudget.from_settings()
    threads = settings.SEARCH_THREADS if threads is None else threads
    symmetry = settings.SEARCH_SYMMETRY_BREAKING if symmetry is None else symmetry
    split_depth = settings.SEARCH_SPLIT_DEPTH if split_depth is None else split_depth
    if threads < 1:
        raise InvalidInputError(f"threads 必须 >= 1，收到 {threads}", field="threads")

    resume = None
    if resume_path:
        resume = load_checkpoint(resume_path)
        resume.require_matches(instance, symmetry)

    if threads > 1 or (resume is not None and resume.mode == "parallel"):
        outcome = run_parallel(
            instance,
            budget,
            symmetry,
            threads=threads,
            split_depth=split_depth,
            checkpoint_path=checkpoint_path,
            resume=resume,
        )
    elif resume is not None:
        outcome = SearchEngine.from_checkpoint(resume, budget, checkpoint_path).run()
    else:
        outcome = SearchEngine(instance, budget, symmetry, checkpoint_path=checkpoint_path).run()

    if outcome.verdict is Verdict.FEASIBLE:
        report = verify_piercing(outcome.witness, instance.f, instance.N)
        if not report.ok:
            raise InvariantViolation(
                f"见证未通过复核：n={report.level}, i={report.cell}（N={instance.N}）"
            )

    _record(outcome)
    log.info(
        "可行性判定完成",
        order=instance.N,
        f=instance.f.describe(),
        verdict=outcome.verdict.value,
        nodes=outcome.stats.nodes,
        elapsed_ms=outcome.stats.elapsed_ms,
    )
    return outcome
