"""
穿刺序列的数据结构

运行时使用不可变 dataclass，JSON 输入输出使用 pydantic 模型。
"""

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, Field

from app.exact import format_rational, parse_rational
from app.exceptions import InvalidInputError

Point = Fraction | float


class Representation(StrEnum):
    EXACT = "exact"
    FLOAT = "float"


# ── 点序列 ──


@dataclass(frozen=True)
class PointSeq:
    """[0,1) 中的有限点序列，表示方式在整个序列内统一"""

    points: tuple[Point, ...]
    representation: Representation

    def __post_init__(self) -> None:
        for idx, x in enumerate(self.points):
            if self.representation is Representation.EXACT:
                if not isinstance(x, Fraction):
                    raise InvalidInputError(f"精确序列混入非有理数：{x!r}", field=f"points[{idx}]")
            elif not isinstance(x, float) or not math.isfinite(x):
                raise InvalidInputError(f"浮点序列混入非法值：{x!r}", field=f"points[{idx}]")
            if not 0 <= x < 1:
                raise InvalidInputError(f"点必须落在 [0, 1)：{x}", field=f"points[{idx}]")

    @classmethod
    def exact(cls, points: Iterable[Fraction | int]) -> "PointSeq":
        return cls(tuple(Fraction(x) for x in points), Representation.EXACT)

    @classmethod
    def floats(cls, points: Iterable[float]) -> "PointSeq":
        return cls(tuple(float(x) for x in points), Representation.FLOAT)

    @property
    def is_exact(self) -> bool:
        return self.representation is Representation.EXACT

    def prefix(self, m: int) -> tuple[Point, ...]:
        return self.points[:m]

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, idx: int) -> Point:
        return self.points[idx]

    def __iter__(self):
        return iter(self.points)


# ── 增长函数 ──


class GrowthKind(StrEnum):
    AFFINE = "affine"  # f(n) = n + d
    CEIL = "ceil"      # f(n) = ⌈γn⌉
    TABLE = "table"    # f(n) = values[n−1]


@dataclass(frozen=True)
class GrowthFn:
    kind: GrowthKind
    d: int = 0
    gamma: Fraction = Fraction(1)
    values: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is GrowthKind.AFFINE and self.d < 0:
            raise InvalidInputError(f"d 必须 >= 0，收到 {self.d}", field="d")
        if self.kind is GrowthKind.CEIL and self.gamma < 1:
            raise InvalidInputError(f"γ 必须 >= 1，收到 {self.gamma}", field="gamma")
        if self.kind is GrowthKind.TABLE:
            prev = 0
            for n, v in enumerate(self.values, start=1):
                if v < n or v < prev:
                    raise InvalidInputError(
                        f"表格在 n={n} 处违反 f(n) ≥ n 或单调性：{v}", field="values"
                    )
                prev = v

    @classmethod
    def affine(cls, d: int) -> "GrowthFn":
        return cls(GrowthKind.AFFINE, d=d)

    @classmethod
    def ceil_gamma(cls, gamma: Fraction | float | int) -> "GrowthFn":
        # binary64 的 γ 按其精确有理值参与运算，避免二次舍入
        return cls(GrowthKind.CEIL, gamma=Fraction(gamma))

    @classmethod
    def table(cls, values: Sequence[int]) -> "GrowthFn":
        return cls(GrowthKind.TABLE, values=tuple(int(v) for v in values))

    @property
    def domain(self) -> int | None:
        """表格型的最大 n；其余类型不限"""
        return len(self.values) if self.kind is GrowthKind.TABLE else None

    def describe(self) -> str:
        if self.kind is GrowthKind.AFFINE:
            return f"n+d:{self.d}"
        if self.kind is GrowthKind.CEIL:
            return f"ceil:{format_rational(self.gamma)}"
        return f"table[{len(self.values)}]"


# ── 报告 ──


class VerifyStatus(StrEnum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class PiercingReport:
    """校验结论；失败时给出首个失败位置"""

    mode: Literal["plain", "strong"]
    order: int
    status: VerifyStatus
    level: int | None = None            # 失败 / 不确定所在的 n
    cell: int | None = None             # plain 模式下的格子 i
    gap: tuple[Point, Point] | None = None  # strong 模式下的见证空隙 (lo, hi)

    @property
    def ok(self) -> bool:
        return self.status is VerifyStatus.PASS

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class GapProfile:
    n: int
    sorted_gaps: tuple[Point, ...]
    max_gap: Point


@dataclass(frozen=True)
class Lemma23Witness:
    """N ≤ n ≤ 2N 且 b_n ≥ γ_N / n"""

    n: int
    b_n: Point
    bound: Point  # γ_N / n


# ── JSON 文档 ──


class SequenceDocument(BaseModel):
    """序列 JSON：{"representation": "exact"|"float", "points": [...]}"""

    representation: Literal["exact", "float"]
    points: list[str] = Field(default_factory=list)

    @classmethod
    def from_seq(cls, seq: PointSeq) -> "SequenceDocument":
        if seq.is_exact:
            pts = [format_rational(x) for x in seq.points]
        else:
            pts = [repr(x) for x in seq.points]
        return cls(representation=seq.representation.value, points=pts)

    def to_seq(self) -> PointSeq:
        if self.representation == "exact":
            return PointSeq.exact(
                parse_rational(p, field=f"points[{i}]") for i, p in enumerate(self.points)
            )
        values = []
        for i, p in enumerate(self.points):
            try:
                values.append(float(p))
            except ValueError as e:
                raise InvalidInputError(f"无法解析的浮点数：{p!r}", field=f"points[{i}]", cause=e) from e
        return PointSeq.floats(values)
