"""
可行性搜索的数据结构
"""

from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

from pydantic import BaseModel, Field

from app.config import get_settings
from app.exact import HalfOpenInterval, format_rational
from app.exceptions import InvalidInputError
from app.piercing.growth import f_eval
from app.piercing.schemas import GrowthFn, PointSeq, SequenceDocument

PRUNE_KINDS = ("empty_range", "hall", "symmetry")


@dataclass(frozen=True)
class Instance:
    """是否存在 N 阶 f-穿刺序列"""

    N: int
    f: GrowthFn

    def __post_init__(self) -> None:
        if self.N < 1:
            raise InvalidInputError(f"阶数必须 >= 1，收到 {self.N}", field="order")
        if self.f.domain is not None and self.f.domain < self.N:
            raise InvalidInputError(
                f"表格只定义到 n={self.f.domain}，不足阶数 {self.N}", field="f"
            )
        prev = 0
        for n in range(1, self.N + 1):
            v = f_eval(self.f, n)
            if v < n or v < prev:
                raise InvalidInputError(f"f 在 n={n} 处违反 f(n) ≥ n 或单调性", field="f")
            prev = v

    @property
    def points(self) -> int:
        """参与搜索的点数 f(N)"""
        return f_eval(self.f, self.N)

    def active(self, n: int) -> int:
        """第 n 层可用的点数 f(n)"""
        return f_eval(self.f, n)


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 0          # 0 表示不限
    max_seconds: float = 0.0    # 0 表示不限
    checkpoint_interval: int = 0

    @classmethod
    def from_settings(cls) -> "SearchBudget":
        s = get_settings()
        return cls(
            max_nodes=s.SEARCH_MAX_NODES,
            max_seconds=s.SEARCH_MAX_SECONDS,
            checkpoint_interval=s.CHECKPOINT_INTERVAL_NODES,
        )


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: dict[str, int] = field(default_factory=lambda: dict.fromkeys(PRUNE_KINDS, 0))
    elapsed_ms: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        for kind, count in other.prunes.items():
            self.prunes[kind] = self.prunes.get(kind, 0) + count
        self.elapsed_ms += other.elapsed_ms

    def to_dict(self) -> dict:
        return {"nodes": self.nodes, "prunes": dict(self.prunes), "elapsed_ms": self.elapsed_ms}

    @classmethod
    def from_dict(cls, data: dict) -> "SearchStats":
        stats = cls(nodes=int(data.get("nodes", 0)), elapsed_ms=int(data.get("elapsed_ms", 0)))
        for kind, count in data.get("prunes", {}).items():
            stats.prunes[kind] = int(count)
        return stats


@dataclass(frozen=True)
class CoverAssignment:
    """格子 (n, i) → 点下标 j 的证书；ranges[j] 是 j 被分配格子的交"""

    N: int
    assign: dict[tuple[int, int], int]
    ranges: tuple[HalfOpenInterval, ...]


class Verdict(StrEnum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass
class SearchOutcome:
    verdict: Verdict
    stats: SearchStats
    witness: PointSeq | None = None
    assignment: CoverAssignment | None = None

    @property
    def decided(self) -> bool:
        return self.verdict is not Verdict.BUDGET_EXCEEDED


class SofDKind(StrEnum):
    EXACT = "exact"
    LOWER_BOUND = "lower_bound"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass
class SofDResult:
    d: int
    kind: SofDKind
    value: int | None
    start: int                    # 扫描起点
    orders: dict[int, str] = field(default_factory=dict)  # N → 结论
    stats: SearchStats = field(default_factory=SearchStats)
    witness: PointSeq | None = None  # 最大可行阶的见证


# ── JSON 文档 ──


class WitnessDocument(SequenceDocument):
    """见证 JSON：序列字段之外附带格子分配与每点范围，可直接喂给 verify"""

    order: int
    f: str
    assignment: list[tuple[int, int, int]] = Field(default_factory=list)  # (n, i, j)
    ranges: list[tuple[str, str]] = Field(default_factory=list)
    stats: dict | None = None  # 找到见证时的搜索统计：nodes / prunes / elapsed_ms

    @classmethod
    def from_outcome(cls, instance: Instance, outcome: SearchOutcome) -> "WitnessDocument":
        if outcome.witness is None or outcome.assignment is None:
            raise InvalidInputError("只有可行结论才带见证", field="verdict")
        a = outcome.assignment
        return cls(
            representation="exact",
            points=[format_rational(Fraction(x)) for x in outcome.witness.points],
            order=instance.N,
            f=instance.f.describe(),
            assignment=sorted((n, i, j) for (n, i), j in a.assign.items()),
            ranges=[(format_rational(r.lo), format_rational(r.hi)) for r in a.ranges],
            stats=outcome.stats.to_dict(),
        )
