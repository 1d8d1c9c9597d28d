"""
子树级并行

主进程把搜索树展开到固定深度，按 DFS 顺序得到一组强制前缀，每个前缀交给一个
worker 进程独立搜索。结果按子树编号顺序汇总：编号最小的可行子树给出见证，
与单进程 DFS 找到的是同一个；全部子树穷尽才判定不可行。
整次运行共用一份预算：节点预算扣掉展开前缀的节点后平分给待搜子树，
墙钟预算由主进程按同一个截止时刻通过 stop 事件收回。
断点只由主进程写，记录已穷尽的子树编号。
"""

import time
from concurrent.futures import Future, ProcessPoolExecutor, wait
from multiprocessing import Manager

import structlog

from app.search.checkpoint import CheckpointDocument, GrowthDocument, save_checkpoint
from app.search.engine import Decision, SearchEngine
from app.search.schemas import Instance, SearchBudget, SearchOutcome, SearchStats, Verdict

log = structlog.get_logger()


def _run_subtree(
    instance: Instance,
    forced: list[Decision],
    budget: SearchBudget,
    symmetry: bool,
    stop,
) -> SearchOutcome:
    engine = SearchEngine(instance, budget=budget, symmetry=symmetry, forced=forced, stop=stop)
    return engine.run()


def _checkpoint(
    instance: Instance, symmetry: bool, depth: int, done: set[int], stats: SearchStats
) -> CheckpointDocument:
    return CheckpointDocument(
        mode="parallel",
        order=instance.N,
        growth=GrowthDocument.from_growth(instance.f),
        symmetry=symmetry,
        split_depth=depth,
        done=sorted(done),
        stats=stats.to_dict(),
    )


def node_shares(max_nodes: int, spent: int, pending: list[int]) -> dict[int, int]:
    """把剩余节点预算平分给待搜子树，余数给编号靠前的；0 表示不限

    剩余预算不够每棵一个节点时，分不到的子树份额为 -1（不提交，直接记为预算耗尽）。
    """
    if not max_nodes:
        return dict.fromkeys(pending, 0)
    left = max(0, max_nodes - spent)
    base, extra = divmod(left, len(pending)) if pending else (0, 0)
    shares = {}
    for rank, i in enumerate(pending):
        share = base + (1 if rank < extra else 0)
        shares[i] = share if share > 0 else -1
    return shares


def _await(fut: Future, deadline: float | None, stop) -> SearchOutcome:
    """等一个子树结果；过了截止时刻就发 stop，worker 会在下一次检查时收工"""
    if deadline is not None and not stop.is_set():
        remaining = deadline - time.monotonic()
        done, _ = wait([fut], timeout=max(0.0, remaining))
        if not done:
            log.info("墙钟预算耗尽，通知 worker 收工")
            stop.set()
    return fut.result()


def run_parallel(
    instance: Instance,
    budget: SearchBudget,
    symmetry: bool,
    threads: int,
    split_depth: int,
    checkpoint_path: str | None = None,
    resume: CheckpointDocument | None = None,
) -> SearchOutcome:
    started = time.monotonic()
    deadline = started + budget.max_seconds if budget.max_seconds else None
    if resume is not None:
        split_depth = resume.split_depth

    splitter = SearchEngine(instance, symmetry=symmetry)
    paths = splitter.frontier(split_depth)

    if resume is not None:
        stats = SearchStats.from_dict(resume.stats)
        done = set(resume.done)
    else:
        stats = SearchStats(nodes=splitter.stats.nodes, prunes=dict(splitter.state.prunes))
        done = set()
    prior_ms = stats.elapsed_ms

    pending = [i for i in range(len(paths)) if i not in done]
    shares = node_shares(budget.max_nodes, splitter.stats.nodes, pending)
    log.info(
        "并行搜索开始",
        subtrees=len(paths),
        pending=len(pending),
        threads=threads,
        depth=split_depth,
        node_share=min(shares.values()) if shares else 0,
    )

    found: SearchOutcome | None = None
    exceeded = False
    with Manager() as manager, ProcessPoolExecutor(max_workers=threads) as pool:
        stop = manager.Event()
        futures = {
            i: pool.submit(
                _run_subtree,
                instance,
                paths[i],
                SearchBudget(max_nodes=shares[i]),
                symmetry,
                stop,
            )
            for i in pending
            if shares[i] >= 0
        }
        for i in pending:
            if i not in futures:
                exceeded = True
                continue
            outcome = _await(futures[i], deadline, stop)
            stats.merge(SearchStats(nodes=outcome.stats.nodes, prunes=outcome.stats.prunes))
            if outcome.verdict is Verdict.FEASIBLE:
                found = outcome
                stop.set()
                for fut in futures.values():
                    fut.cancel()
                break
            if outcome.verdict is Verdict.INFEASIBLE:
                done.add(i)
                if checkpoint_path:
                    save_checkpoint(
                        _checkpoint(instance, symmetry, split_depth, done, stats), checkpoint_path
                    )
            else:
                exceeded = True

    stats.elapsed_ms = prior_ms + int((time.monotonic() - started) * 1000)
    if found is not None:
        return SearchOutcome(
            verdict=Verdict.FEASIBLE,
            stats=stats,
            witness=found.witness,
            assignment=found.assignment,
        )
    if exceeded:
        if checkpoint_path:
            save_checkpoint(_checkpoint(instance, symmetry, split_depth, done, stats), checkpoint_path)
        return SearchOutcome(verdict=Verdict.BUDGET_EXCEEDED, stats=stats)
    return SearchOutcome(verdict=Verdict.INFEASIBLE, stats=stats)
