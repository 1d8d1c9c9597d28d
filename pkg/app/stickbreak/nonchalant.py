"""
漫不经心策略的长程统计

该策略下每段长度都是 r^a (1−r)^b，同一 (a, b) 的段长度相同、可互换，
因此长跑只维护 (a, b) → 段数 的计数和按长度排序的堆，每轮 O(log C)。
"""

import heapq
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import structlog

from app.bounds.limits import predicted_limit
from app.config import get_settings
from app.exceptions import InvalidInputError, InvariantViolation
from app.observability.metrics import STICK_ROUNDS_TOTAL
from app.stickbreak.game import NonchalantParams

log = structlog.get_logger()

Sample = tuple[int, float, float]  # (k, M_k, kM_k)


@dataclass
class SimulationConfig:
    stride: int
    window_fraction: float

    @classmethod
    def from_settings(cls) -> "SimulationConfig":
        s = get_settings()
        return cls(stride=s.SIMULATE_STRIDE, window_fraction=s.SIMULATE_WINDOW_FRACTION)


@dataclass
class LimitStats:
    r: float
    rounds: int
    predicted: float
    windowed_max: float
    windowed_mean: float
    window_start: int
    final_sum: float
    samples: list[Sample] = field(default_factory=list)

    @property
    def estimate(self) -> float:
        return self.windowed_max

    @property
    def relative_error(self) -> float:
        return abs(self.windowed_max - self.predicted) / self.predicted

    def summary(self) -> dict:
        return {
            "r": self.r,
            "rounds": self.rounds,
            "estimate": self.windowed_max,
            "windowed_mean": self.windowed_mean,
            "predicted": self.predicted,
            "relative_error": self.relative_error,
            "window_start": self.window_start,
        }


def run_nonchalant(
    r: float,
    rounds: int,
    config: SimulationConfig | None = None,
    on_sample: Callable[[Sample], None] | None = None,
) -> LimitStats:
    """推进 rounds 轮，报告末尾窗口内 kM_k 的最大值（limsup 估计）与均值"""
    params = NonchalantParams(r)
    if rounds < 1:
        raise InvalidInputError(f"rounds 必须 >= 1，收到 {rounds}", field="rounds")
    config = config or SimulationConfig.from_settings()
    stride = max(1, config.stride)
    window_start = rounds - int(rounds * config.window_fraction) + 1
    window_start = min(max(window_start, 1), rounds)

    ln_r, ln_s = math.log(params.r), math.log1p(-params.r)
    upper = 1.0 / params.r + 1e-9

    counts: dict[tuple[int, int], int] = {(0, 0): 1}
    heap: list[tuple[float, int, int]] = [(-1.0, 0, 0)]
    best, acc, seen = 0.0, 0.0, 0
    samples: list[Sample] = []

    for k in range(1, rounds + 1):
        neg, a, b = heap[0]
        M = -neg
        kM = k * M
        if not 1.0 - 1e-9 <= kM <= upper:
            raise InvariantViolation(f"kM_k 越界：k={k}, kM_k={kM!r}, 1/r={1 / params.r!r}")
        if k >= window_start:
            best = max(best, kM)
            acc += kM
            seen += 1
        if k % stride == 0 or k == 1 or k == rounds:
            sample = (k, M, kM)
            samples.append(sample)
            if on_sample is not None:
                on_sample(sample)

        left = counts[(a, b)] - 1
        if left:
            counts[(a, b)] = left
        else:
            del counts[(a, b)]
            heapq.heappop(heap)
        for key in ((a + 1, b), (a, b + 1)):
            if key in counts:
                counts[key] += 1
            else:
                counts[key] = 1
                heapq.heappush(heap, (-math.exp(key[0] * ln_r + key[1] * ln_s), *key))

    final_sum = math.fsum(
        cnt * math.exp(a * ln_r + b * ln_s) for (a, b), cnt in counts.items()
    )
    if abs(final_sum - 1.0) > 1e-9:
        raise InvariantViolation(f"总长偏离 1：{final_sum!r}")
    STICK_ROUNDS_TOTAL.inc(rounds)

    stats = LimitStats(
        r=params.r,
        rounds=rounds,
        predicted=predicted_limit(params.r),
        windowed_max=best,
        windowed_mean=acc / seen,
        window_start=window_start,
        final_sum=final_sum,
        samples=samples,
    )
    log.info(
        "折棍模拟完成",
        r=params.r,
        rounds=rounds,
        estimate=round(stats.estimate, 6),
        predicted=round(stats.predicted, 6),
        relative_error=round(stats.relative_error, 6),
    )
    return stats
