"""
s(d)：(n+d)-穿刺序列的最大阶

可行性对 N 单调（N 阶见证的前缀就是更低阶的见证），所以从已知可行的阶向上扫描。
对数序列下界 ⌊c₁d⌋ 通过校验时，扫描直接从它的下一阶开始。
"""

import structlog

from app.constructors.lower_bound import lower_bound_sequence
from app.piercing.schemas import GrowthFn
from app.search.schemas import (
    Instance,
    SearchBudget,
    SearchStats,
    SofDKind,
    SofDResult,
    Verdict,
)
from app.search.solver import feasible

log = structlog.get_logger()


def s_of_d(
    d: int,
    budget: SearchBudget | None = None,
    threads: int | None = None,
    symmetry: bool | None = None,
    max_order: int | None = None,
    use_lower_bound: bool = True,
) -> SofDResult:
    f = GrowthFn.affine(d)
    known = 0
    seed_witness = None
    if use_lower_bound and d > 0:
        lb = lower_bound_sequence(d)
        if lb.verify().ok:
            known = lb.N
            seed_witness = lb.seq
        else:
            log.warning("下界序列未通过校验，从 1 阶开始扫描", d=d, N=lb.N)

    result = SofDResult(d=d, kind=SofDKind.BUDGET_EXCEEDED, value=None, start=known + 1)
    # 第一阶就不可行或预算耗尽时，结论仍由下界序列作见证
    result.witness = seed_witness
    stats = SearchStats()
    N = known + 1
    while max_order is None or N <= max_order:
        outcome = feasible(Instance(N, f), budget=budget, threads=threads, symmetry=symmetry)
        stats.merge(outcome.stats)
        result.orders[N] = outcome.verdict.value
        if outcome.verdict is Verdict.FEASIBLE:
            known = N
            result.witness = outcome.witness
            N += 1
            continue
        if outcome.verdict is Verdict.INFEASIBLE:
            result.kind, result.value = SofDKind.EXACT, known
        elif known > 0:
            result.kind, result.value = SofDKind.LOWER_BOUND, known
        break
    else:
        result.kind, result.value = SofDKind.LOWER_BOUND, known

    result.stats = stats
    log.info("s(d) 扫描结束", d=d, kind=result.kind.value, value=result.value, start=result.start)
    return result
