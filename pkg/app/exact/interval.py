"""
半开区间 [lo, hi)，端点为精确有理数

空区间统一规范化为 lo = hi = 0，判空只需一次比较。
"""

from dataclasses import dataclass
from fractions import Fraction

from app.exceptions import InvalidInputError


@dataclass(frozen=True, slots=True)
class HalfOpenInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise InvalidInputError(f"区间端点顺序错误：[{lo}, {hi})", field="interval")
        if lo == hi:
            lo = hi = Fraction(0)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def cell(cls, n: int, i: int) -> "HalfOpenInterval":
        """第 n 层的第 i 个格子 [i/n, (i+1)/n)"""
        return cls(Fraction(i, n), Fraction(i + 1, n))

    @property
    def is_empty(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x < self.hi

    def contains_interval(self, other: "HalfOpenInterval") -> bool:
        """other ⊆ self（空集包含于任何区间）"""
        if other.is_empty:
            return True
        return self.lo <= other.lo and other.hi <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi})"


EMPTY = HalfOpenInterval(Fraction(0), Fraction(0))


def intersect(a: HalfOpenInterval, b: HalfOpenInterval) -> HalfOpenInterval:
    """[max(lo), min(hi))，真交集为空时返回规范空区间"""
    lo = max(a.lo, b.lo)
    hi = min(a.hi, b.hi)
    if lo >= hi:
        return EMPTY
    return HalfOpenInterval(lo, hi)
