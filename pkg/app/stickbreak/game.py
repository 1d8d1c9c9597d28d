"""
折棍游戏

第 k 轮开始时恰有 k 段，总长 1。每轮策略选一段、给出比例 ρ，
该段 [s, s+L) 在 s + (1−ρ)L 处断开：左段 (1−ρ)L，右段 ρL。
段 id 按创建顺序递增，同长时 id 小者更"老"。
"""

import heapq
import math
import random
from dataclasses import dataclass
from typing import Protocol

from app.exceptions import InvalidInputError, InvariantViolation


@dataclass(slots=True)
class Segment:
    id: int
    start: float
    length: float
    exps: tuple[int, int] | None = None  # (a, b)：长度 = r^a (1−r)^b


class StickState:
    """段的多重集 + 最长段堆（惰性删除）"""

    def __init__(self, track_exponents: bool = False):
        self.track_exponents = track_exponents
        self.segments: dict[int, Segment] = {0: Segment(0, 0.0, 1.0, (0, 0) if track_exponents else None)}
        self._heap: list[tuple[float, int]] = [(-1.0, 0)]
        self._next_id = 1
        self.break_log: list[tuple[int, float]] = []

    @property
    def round(self) -> int:
        """当前轮次 k（= 段数）"""
        return len(self.segments)

    def longest(self) -> Segment:
        while self._heap[0][1] not in self.segments:
            heapq.heappop(self._heap)
        return self.segments[self._heap[0][1]]

    @property
    def max_length(self) -> float:
        return self.longest().length

    def lengths(self) -> list[float]:
        return [seg.length for seg in self.segments.values()]

    def total(self) -> float:
        return math.fsum(self.lengths())

    def split(self, seg_id: int, ratio: float) -> tuple[Segment, Segment]:
        if not 0.0 < ratio < 1.0:
            raise InvalidInputError(f"断开比例必须落在 (0, 1)：{ratio}", field="ratio")
        seg = self.segments.pop(seg_id, None)
        if seg is None:
            raise InvalidInputError(f"段 {seg_id} 不存在或已被断开", field="segment")

        left_len = (1.0 - ratio) * seg.length
        right_len = seg.length - left_len
        left_exps = right_exps = None
        if self.track_exponents and seg.exps is not None:
            a, b = seg.exps
            left_exps, right_exps = (a, b + 1), (a + 1, b)

        left = Segment(self._next_id, seg.start, left_len, left_exps)
        right = Segment(self._next_id + 1, seg.start + left_len, right_len, right_exps)
        self._next_id += 2
        for piece in (left, right):
            self.segments[piece.id] = piece
            heapq.heappush(self._heap, (-piece.length, piece.id))
        self.break_log.append((seg_id, ratio))
        return left, right

    def check(self, tol: float = 1e-9) -> None:
        """段数与总长不变量"""
        if abs(self.total() - 1.0) > tol:
            raise InvariantViolation(f"总长偏离 1：{self.total()!r}")
        if self.max_length != max(self.lengths()):
            raise InvariantViolation("堆顶与实际最长段不一致")


class Strategy(Protocol):
    def choose(self, state: StickState) -> tuple[int, float]:
        """返回 (段 id, 比例 ρ)"""
        ...


@dataclass(frozen=True)
class NonchalantParams:
    r: float

    def __post_init__(self) -> None:
        if not 0.0 < self.r < 0.5:
            raise InvalidInputError(f"r 必须落在 (0, 1/2)：{self.r}", field="r")


class NonchalantStrategy:
    """总是以 (1−r):r 断开最长段（同长取最老）"""

    def __init__(self, params: NonchalantParams | float):
        self.params = params if isinstance(params, NonchalantParams) else NonchalantParams(params)

    def choose(self, state: StickState) -> tuple[int, float]:
        return state.longest().id, self.params.r


class RandomStrategy:
    """均匀随机选段、随机比例，用于性质测试"""

    def __init__(self, seed: int):
        self._rng = random.Random(seed)

    def choose(self, state: StickState) -> tuple[int, float]:
        seg_id = self._rng.choice(list(state.segments))
        ratio = 0.0
        while ratio == 0.0:
            ratio = self._rng.random()
        return seg_id, ratio


def step(state: StickState, strategy: Strategy) -> StickState:
    """推进一轮（原地修改，返回同一个 state）"""
    seg_id, ratio = strategy.choose(state)
    state.split(seg_id, ratio)
    return state
