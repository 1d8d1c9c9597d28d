"""
Farey 点窗口 FP_n^m

FP_n^m = {a/p : n ≤ p ≤ m, 0 ≤ a ≤ p}，a/p 不要求既约。
一个既约值 b/q 属于窗口 ⇔ 窗口里存在 q 的倍数 ⇔ ⌈n/q⌉·q ≤ m。
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from app.exceptions import InvalidInputError


@dataclass(frozen=True, slots=True, order=True)
class FareyPoint:
    value: Fraction

    def __post_init__(self) -> None:
        value = Fraction(self.value)
        if not 0 <= value <= 1:
            raise InvalidInputError(f"Farey 点必须落在 [0, 1]：{value}", field="value")
        object.__setattr__(self, "value", value)

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, slots=True)
class FareyWindow:
    n: int
    m: int

    def __post_init__(self) -> None:
        if not 0 < self.n <= self.m:
            raise InvalidInputError(
                f"窗口必须满足 0 < n ≤ m，收到 n={self.n}, m={self.m}", field="window"
            )

    def denominators(self) -> range:
        return range(self.n, self.m + 1)


def in_window(value: Fraction, w: FareyWindow) -> bool:
    """value 是否能写成分母落在窗口内的分数"""
    if not 0 <= value <= 1:
        return False
    q = value.denominator
    return -(-w.n // q) * q <= w.m


def representations(value: Fraction, w: FareyWindow) -> list[int]:
    """value 在窗口内所有可用分母 p（升序）"""
    q = value.denominator
    first = -(-w.n // q) * q
    return list(range(first, w.m + 1, q))


def enumerate_window(w: FareyWindow) -> list[FareyPoint]:
    """窗口内全部 Farey 点，去重后升序"""
    values = {Fraction(a, p) for p in w.denominators() for a in range(p + 1)}
    return [FareyPoint(v) for v in sorted(values)]


@lru_cache(maxsize=64)
def low_order_points(W: int) -> tuple[Fraction, ...]:
    """FP_1^{W−1} 的既约值，升序"""
    return tuple(pt.value for pt in enumerate_window(FareyWindow(1, W - 1)))


def neighbors(
    p: FareyPoint | Fraction, w: FareyWindow
) -> tuple[FareyPoint | None, FareyPoint | None]:
    """窗口排序下的前驱与后继；在 0 / 1 端点处缺省为 None"""
    x = p.value if isinstance(p, FareyPoint) else Fraction(p)
    if not in_window(x, w):
        raise InvalidInputError(f"{x} 不在窗口 FP_{w.n}^{w.m} 中", field="point")

    prev: Fraction | None = None
    nxt: Fraction | None = None
    for q in w.denominators():
        below = -((-x.numerator * q) // x.denominator) - 1  # ⌈xq⌉ − 1
        if below >= 0:
            cand = Fraction(below, q)
            if prev is None or cand > prev:
                prev = cand
        above = (x.numerator * q) // x.denominator + 1  # ⌊xq⌋ + 1
        if above <= q:
            cand = Fraction(above, q)
            if nxt is None or cand < nxt:
                nxt = cand
    return (
        FareyPoint(prev) if prev is not None else None,
        FareyPoint(nxt) if nxt is not None else None,
    )
