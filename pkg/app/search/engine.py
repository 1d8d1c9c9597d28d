"""
可行性搜索：逐层为格子指派占据点

状态：层 n = 1..N 依次处理。第 n 层的 n 个格子各需一个占据点，取自前 f(n) 个点，
同层内一个点最多占一个格子（格子互不相交）。每个点维护被指派格子的交集 [lo, hi)，
以 L = lcm(1..N) 为公分母存成整数，判空就是 lo >= hi，不存在容差。

剪枝：
- empty_range：某个格子没有候选点
- hall：       本层剩余格子或之后任一层无法匹配（凸二部图贪心）
- symmetry：   范围相同的已激活点可互换，只试下标最小的；
               各层完成时若点范围的多重集首次与其镜像不同，只保留字典序较小的一侧

迭代式 DFS，栈可以整体写入断点文件并原样恢复。
"""

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import structlog

from app.exact import HalfOpenInterval
from app.exceptions import InvalidInputError
from app.search.checkpoint import (
    CheckpointDocument,
    FrameDocument,
    GrowthDocument,
    save_checkpoint,
)
from app.search.matching import cell_span, hall_ok
from app.search.schemas import (
    PRUNE_KINDS,
    CoverAssignment,
    Instance,
    SearchBudget,
    SearchOutcome,
    SearchStats,
    Verdict,
)
from app.search.witness import extract_witness

log = structlog.get_logger()

Decision = tuple[int, int]  # (格子, 点)

_TIME_CHECK_MASK = 0xFF


class SearchState:
    """可回退的搜索状态；push 总会压入一条回退记录，返回值表示是否通过剪枝"""

    def __init__(self, instance: Instance, symmetry: bool):
        self.instance = instance
        self.N = instance.N
        self.L = math.lcm(*range(1, self.N + 1))
        self.M = instance.points
        self.active = [0] + [instance.active(n) for n in range(1, self.N + 1)]
        self.symmetry = symmetry

        self.lo = [0] * self.M
        self.hi = [self.L] * self.M
        self.level = 1
        self.cells: dict[int, int] = {}
        self.used: set[int] = set()
        self.history: list[tuple[int, ...]] = []
        self.symmetric = True
        self.undo: list[list] = []
        self.prunes = dict.fromkeys(PRUNE_KINDS, 0)

    @property
    def complete(self) -> bool:
        return self.level > self.N

    def choose(self) -> tuple[int, list[int]]:
        """候选最少的未指派格子（fail-first）及其候选点"""
        n = self.level
        step = self.L // n
        free = [j for j in range(self.active[n]) if j not in self.used]
        best_cell, best = -1, None
        for i in range(n):
            if i in self.cells:
                continue
            c_lo, c_hi = i * step, (i + 1) * step
            cands = [j for j in free if self.lo[j] < c_hi and self.hi[j] > c_lo]
            if best is None or len(cands) < len(best):
                best_cell, best = i, cands
                if not cands:
                    break
        assert best is not None

        if self.symmetry and len(best) > 1:
            seen: set[tuple[int, int]] = set()
            uniq: list[int] = []
            for j in best:
                key = (self.lo[j], self.hi[j])
                if key not in seen:
                    seen.add(key)
                    uniq.append(j)
            self.prunes["symmetry"] += len(best) - len(uniq)
            best = uniq
        return best_cell, best

    def push(self, cell: int, j: int) -> bool:
        n = self.level
        step = self.L // n
        record = [cell, j, self.lo[j], self.hi[j], False, self.symmetric]
        self.undo.append(record)
        self.lo[j] = max(self.lo[j], cell * step)
        self.hi[j] = min(self.hi[j], (cell + 1) * step)
        self.cells[cell] = j
        self.used.add(j)
        if self.lo[j] >= self.hi[j]:
            self.prunes["empty_range"] += 1
            return False

        if len(self.cells) < n:
            rest = [c for c in range(n) if c not in self.cells]
            spans = [
                cell_span(self.lo[k], self.hi[k], step)
                for k in range(self.active[n])
                if k not in self.used
            ]
            if not hall_ok(rest, spans):
                self.prunes["hall"] += 1
                return False
            return True

        # 本层完成
        if self.symmetry and self.symmetric:
            ranges = sorted(zip(self.lo[: self.active[n]], self.hi[: self.active[n]]))
            mirror = sorted((self.L - hi, self.L - lo) for lo, hi in ranges)
            if mirror < ranges:
                self.prunes["symmetry"] += 1
                return False
            if mirror != ranges:
                self.symmetric = False

        for m in range(n + 1, self.N + 1):
            step_m = self.L // m
            spans = [cell_span(self.lo[k], self.hi[k], step_m) for k in range(self.active[m])]
            if not hall_ok(range(m), spans):
                self.prunes["hall"] += 1
                return False

        self.history.append(tuple(self.cells[c] for c in range(n)))
        self.level += 1
        self.cells = {}
        self.used = set()
        record[4] = True
        return True

    def pop(self) -> None:
        cell, j, lo, hi, advanced, symmetric = self.undo.pop()
        if advanced:
            self.level -= 1
            vec = self.history.pop()
            self.cells = dict(enumerate(vec))
            self.used = set(vec)
        self.symmetric = symmetric
        del self.cells[cell]
        self.used.discard(j)
        self.lo[j] = lo
        self.hi[j] = hi

    def assignment(self) -> CoverAssignment:
        assign = {
            (n, i): j for n, vec in enumerate(self.history, start=1) for i, j in enumerate(vec)
        }
        ranges = tuple(
            HalfOpenInterval(Fraction(lo, self.L), Fraction(hi, self.L))
            for lo, hi in zip(self.lo, self.hi)
        )
        return CoverAssignment(N=self.N, assign=assign, ranges=ranges)


@dataclass
class Frame:
    cell: int
    cands: list[int]
    idx: int = 0          # 下一个要试的候选
    applied: bool = False  # cands[idx−1] 当前是否已压入状态


class SearchEngine:
    def __init__(
        self,
        instance: Instance,
        budget: SearchBudget | None = None,
        symmetry: bool = True,
        forced: list[Decision] | tuple[Decision, ...] = (),
        checkpoint_path: str | None = None,
        stop=None,
    ):
        self.instance = instance
        self.stop = stop  # 带 is_set() 的事件，并行时用于提前收工
        self.budget = budget or SearchBudget()
        self.symmetry = symmetry
        self.forced = [tuple(d) for d in forced]
        self.checkpoint_path = checkpoint_path
        self.state = SearchState(instance, symmetry)
        self.stats = SearchStats()
        self.stack: list[Frame] = []
        self._prior_elapsed_ms = 0
        self._base_nodes = 0  # 恢复前已累计的节点，不计入本次预算
        self._resumed = False

    # ── 断点 ──

    @classmethod
    def from_checkpoint(
        cls,
        doc: CheckpointDocument,
        budget: SearchBudget | None = None,
        checkpoint_path: str | None = None,
    ) -> "SearchEngine":
        if doc.mode != "sequential":
            raise InvalidInputError("并行断点需要交给并行调度恢复", field="checkpoint.mode")
        engine = cls(
            doc.instance(),
            budget=budget,
            symmetry=doc.symmetry,
            forced=doc.forced,
            checkpoint_path=checkpoint_path,
        )
        prior = SearchStats.from_dict(doc.stats)
        engine.stats.nodes = prior.nodes
        engine._base_nodes = prior.nodes
        engine._prior_elapsed_ms = prior.elapsed_ms
        for kind, count in prior.prunes.items():
            engine.state.prunes[kind] = count

        if not engine._replay_forced():
            raise InvalidInputError("断点的强制前缀无法重放", field="checkpoint.forced")
        for fd in doc.stack:
            frame = Frame(cell=fd.cell, cands=list(fd.cands), idx=fd.idx, applied=fd.applied)
            if frame.applied and not engine.state.push(frame.cell, frame.cands[frame.idx - 1]):
                raise InvalidInputError("断点栈无法重放", field="checkpoint.stack")
            engine.stack.append(frame)
        engine._resumed = True
        return engine

    def to_checkpoint(self, started: float = 0.0) -> CheckpointDocument:
        return CheckpointDocument(
            mode="sequential",
            order=self.instance.N,
            growth=GrowthDocument.from_growth(self.instance.f),
            symmetry=self.symmetry,
            forced=self.forced,
            stack=[
                FrameDocument(cell=f.cell, cands=f.cands, idx=f.idx, applied=f.applied)
                for f in self.stack
            ],
            stats=self._snapshot_stats(started).to_dict(),
        )

    def _write_checkpoint(self, started: float) -> None:
        if self.checkpoint_path:
            save_checkpoint(self.to_checkpoint(started), self.checkpoint_path)
            log.info("断点已写入", path=self.checkpoint_path, nodes=self.stats.nodes, depth=len(self.stack))

    # ── 搜索 ──

    def _replay_forced(self) -> bool:
        for cell, j in self.forced:
            if not self.state.push(cell, j):
                return False
        return True

    def _expand(self) -> Frame | None:
        cell, cands = self.state.choose()
        if not cands:
            self.state.prunes["empty_range"] += 1
            return None
        return Frame(cell=cell, cands=cands)

    def _snapshot_stats(self, started: float) -> SearchStats:
        elapsed = (time.monotonic() - started) if started else 0.0
        return SearchStats(
            nodes=self.stats.nodes,
            prunes=dict(self.state.prunes),
            elapsed_ms=self._prior_elapsed_ms + int(elapsed * 1000),
        )

    def _over_budget(self, started: float) -> bool:
        b = self.budget
        if b.max_nodes and self.stats.nodes - self._base_nodes >= b.max_nodes:
            return True
        if (self.stats.nodes & _TIME_CHECK_MASK) == 0:
            if self.stop is not None and self.stop.is_set():
                return True
            if b.max_seconds and time.monotonic() - started >= b.max_seconds:
                return True
        return False

    def _outcome(self, verdict: Verdict, started: float) -> SearchOutcome:
        stats = self._snapshot_stats(started)
        self.stats = stats
        if verdict is not Verdict.FEASIBLE:
            return SearchOutcome(verdict=verdict, stats=stats)
        assignment = self.state.assignment()
        return SearchOutcome(
            verdict=verdict,
            stats=stats,
            witness=extract_witness(assignment),
            assignment=assignment,
        )

    def run(self) -> SearchOutcome:
        started = time.monotonic()
        state = self.state
        stack = self.stack

        if not self._resumed:
            if not self._replay_forced():
                return self._outcome(Verdict.INFEASIBLE, started)
            if state.complete:
                return self._outcome(Verdict.FEASIBLE, started)
            root = self._expand()
            if root is None:
                return self._outcome(Verdict.INFEASIBLE, started)
            stack.append(root)

        interval = self.budget.checkpoint_interval
        while stack:
            frame = stack[-1]
            if frame.applied:
                state.pop()
                frame.applied = False
            if frame.idx >= len(frame.cands):
                stack.pop()
                continue
            if self._over_budget(started):
                self._write_checkpoint(started)
                return self._outcome(Verdict.BUDGET_EXCEEDED, started)

            j = frame.cands[frame.idx]
            frame.idx += 1
            self.stats.nodes += 1
            frame.applied = True
            if not state.push(frame.cell, j):
                continue
            if state.complete:
                return self._outcome(Verdict.FEASIBLE, started)
            child = self._expand()
            if child is not None:
                stack.append(child)
            if interval and self.stats.nodes % interval == 0:
                self._write_checkpoint(started)

        return self._outcome(Verdict.INFEASIBLE, started)

    def frontier(self, depth: int) -> list[list[Decision]]:
        """按 DFS 顺序列出深度为 depth 的全部存活决策前缀（更早完成的解也列入）"""
        state = self.state
        if not self._replay_forced():
            return []
        paths: list[list[Decision]] = []
        path: list[Decision] = list(self.forced)

        def walk() -> None:
            if state.complete or len(path) - len(self.forced) >= depth:
                paths.append(list(path))
                return
            frame = self._expand()
            if frame is None:
                return
            for j in frame.cands:
                self.stats.nodes += 1
                if state.push(frame.cell, j):
                    path.append((frame.cell, j))
                    walk()
                    path.pop()
                state.pop()

        walk()
        return paths
