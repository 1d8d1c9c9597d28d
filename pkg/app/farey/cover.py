"""
有效覆盖与区间分类

给定 W ≥ 2、N > 2W³，α = (W+1)/(W−1)，β = W/(W−1)，工作窗口为 FP_{⌈βN⌉}^{⌊αN⌋}。
y 的有效覆盖是窗口中的 c/r，满足 y < c/r ≤ y + 1/(WN)；此时 [c/r, (c+1)/r) ⊆ [y, y+1/N)。

构造顺序：
1. 低阶点 b/q 的中位移动 (a+b)/(p+q)、(a−b)/(p−q)（"提供覆盖"）
2. 分母贴近 ⌊αN⌋ / ⌈βN⌉ 时的边界链 c_i/r_i
3. 都不成立时，a/p 必在某个低阶点 W/N 范围内
"""

from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

import structlog

from app.exact import HalfOpenInterval
from app.exceptions import InvariantViolation, PreconditionError
from app.farey.window import FareyPoint, FareyWindow, in_window, low_order_points, representations

log = structlog.get_logger()


@dataclass(frozen=True)
class CoverParams:
    W: int
    alpha: Fraction = field(init=False)
    beta: Fraction = field(init=False)
    N0: int = field(init=False)

    def __post_init__(self) -> None:
        if self.W < 2:
            raise PreconditionError(f"W 必须 >= 2，收到 {self.W}", field="W")
        object.__setattr__(self, "alpha", Fraction(self.W + 1, self.W - 1))
        object.__setattr__(self, "beta", Fraction(self.W, self.W - 1))
        object.__setattr__(self, "N0", 2 * self.W**3)

    def window(self, N: int) -> FareyWindow:
        """分母窗口 [⌈βN⌉, ⌊αN⌋]"""
        lo = -((-self.beta.numerator * N) // self.beta.denominator)
        hi = (self.alpha.numerator * N) // self.alpha.denominator
        return FareyWindow(lo, hi)

    def require_order(self, N: int) -> None:
        if N <= self.N0:
            raise PreconditionError(f"需要 N > 2W³ = {self.N0}，收到 N={N}", field="N")


# ── 有效覆盖 ──


class CoverRule(StrEnum):
    MEDIANT_PLUS = "mediant_plus"    # (a+b)/(p+q)
    MEDIANT_MINUS = "mediant_minus"  # (a−b)/(p−q)
    HIGH_CHAIN = "high_chain"        # 分母贴近 ⌊αN⌋
    LOW_CHAIN = "low_chain"          # 分母贴近 ⌈βN⌉
    SCAN = "scan"                    # 构造全部失效时的直接扫描


@dataclass(frozen=True)
class ValidCover:
    """有效覆盖 c/r（保留未约分的 r，区间 [c/r, (c+1)/r) 依赖它）"""

    c: int
    r: int
    rule: CoverRule
    low_order: Fraction | None = None  # 提供覆盖的低阶点 b/q
    chain: tuple[tuple[int, int], ...] = ()

    @property
    def value(self) -> Fraction:
        return Fraction(self.c, self.r)

    @property
    def interval(self) -> HalfOpenInterval:
        return HalfOpenInterval(Fraction(self.c, self.r), Fraction(self.c + 1, self.r))


@dataclass(frozen=True)
class LowOrderException:
    """例外情形（返回值）：a/p 距低阶点 b/q 小于 W/N"""

    point: Fraction
    distance: Fraction


def is_valid_cover(y: Fraction, c: int, r: int, params: CoverParams, N: int) -> bool:
    """y < c/r ≤ y + 1/(WN) 且 r 在窗口内"""
    w = params.window(N)
    if not w.n <= r <= w.m or not 0 <= c <= r:
        return False
    x = Fraction(c, r)
    return y < x <= y + Fraction(1, params.W * N)


def _provides_plus(a: int, p: int, b: int, q: int, W: int, top: int) -> bool:
    """b/q 在右侧提供覆盖：a/p < b/q，p+q ≤ ⌊αN⌋，a ≥ (b(W−1)p − p − q)/(q(W−1))"""
    return (
        a * q < b * p
        and p + q <= top
        and a * q * (W - 1) >= b * (W - 1) * p - p - q
    )


def _provides_minus(a: int, p: int, b: int, q: int, W: int, bottom: int) -> bool:
    """b/q 在左侧提供覆盖：a/p > b/q，p−q ≥ ⌈βN⌉，a ≤ (b(W−1)p + p − q)/(q(W−1))"""
    return (
        a * q > b * p
        and p - q >= bottom
        and a * q * (W - 1) <= b * (W - 1) * p + p - q
    )


def high_chain(a: int, p: int, b: int, q: int, bottom: int) -> list[tuple[int, int]]:
    """分母贴近 ⌊αN⌋ 一侧的链 (c+bi)/(r+qi)，i = 0..(p−r)/q

    r ∈ [⌈βN⌉, ⌈βN⌉+q) 且 r ≡ p (mod q)，c = ⌊ar/p⌋。
    """
    r = bottom + (p - bottom) % q
    c = (a * r) // p
    t = (p - r) // q
    return [(c + b * i, r + q * i) for i in range(t + 1)]


def low_chain(a: int, p: int, b: int, q: int, top: int) -> list[tuple[int, int]]:
    """分母贴近 ⌈βN⌉ 一侧的链 (c−bi)/(r−qi)，末项为 (a+1)/p

    r ∈ (⌊αN⌋−q, ⌊αN⌋] 且 r ≡ p (mod q)，c = a+1+b(r−p)/q。
    """
    r = top - (top - p) % q
    t = (r - p) // q
    c = a + 1 + b * t
    return [(c - b * i, r - q * i) for i in range(t + 1)]


def _bracket(chain: list[tuple[int, int]], a: int, p: int) -> tuple[int, int] | None:
    """链上第一个严格大于 a/p 的元素"""
    for c, r in chain:
        if c * p > a * r:
            return c, r
    return None


def _by_distance(y: Fraction, points: tuple[Fraction, ...]) -> list[Fraction]:
    return sorted(points, key=lambda v: (abs(v - y), v))


def valid_cover_of_point(
    a_over_p: FareyPoint | Fraction,
    params: CoverParams,
    N: int,
    p: int | None = None,
) -> ValidCover | LowOrderException:
    """窗口点 a/p 的有效覆盖，或它所贴近的低阶点

    p 给定时只使用该表示；否则依次尝试窗口内所有表示。
    """
    params.require_order(N)
    y = a_over_p.value if isinstance(a_over_p, FareyPoint) else Fraction(a_over_p)
    w = params.window(N)
    if not in_window(y, w):
        raise PreconditionError(f"{y} 不在窗口 FP_{w.n}^{w.m} 中", field="a_over_p")
    if p is None:
        reps = representations(y, w)
    else:
        if not w.n <= p <= w.m or (y * p).denominator != 1:
            raise PreconditionError(f"{y} 不能以分母 {p} 写在窗口中", field="p")
        reps = [p]

    W = params.W
    lows = _by_distance(y, low_order_points(W))
    near = W * Fraction(1, N)

    # 1. 中位移动
    for den in reps:
        a = int(y * den)
        for bq in lows:
            b, q = bq.numerator, bq.denominator
            if _provides_plus(a, den, b, q, W, w.m):
                cover = ValidCover(a + b, den + q, CoverRule.MEDIANT_PLUS, bq)
            elif _provides_minus(a, den, b, q, W, w.n):
                cover = ValidCover(a - b, den - q, CoverRule.MEDIANT_MINUS, bq)
            else:
                continue
            if is_valid_cover(y, cover.c, cover.r, params, N):
                return cover

    # 2. 边界链
    for den in reps:
        a = int(y * den)
        for bq in lows:
            b, q = bq.numerator, bq.denominator
            chain: list[tuple[int, int]] | None = None
            rule = CoverRule.HIGH_CHAIN
            if (
                y <= bq - near
                and a * q * (W - 1) >= b * (W - 1) * den - den - q
                and den >= w.m - q + 1
            ):
                chain = high_chain(a, den, b, q, w.n)
            elif (
                y >= bq + near
                and a * q * (W - 1) <= b * (W - 1) * den + den - q
                and den <= w.n + q - 1
            ):
                chain = low_chain(a, den, b, q, w.m)
                rule = CoverRule.LOW_CHAIN
            if not chain:
                continue
            hit = _bracket(chain, a, den)
            if hit is not None and is_valid_cover(y, hit[0], hit[1], params, N):
                return ValidCover(hit[0], hit[1], rule, bq, tuple(chain))

    # 3. 低阶点例外
    for bq in lows:
        if abs(y - bq) < near:
            return LowOrderException(point=bq, distance=abs(y - bq))

    # 构造性步骤全部失败：直接扫描窗口，仍失败则违反引理
    for r in w.denominators():
        c = (y.numerator * r) // y.denominator + 1
        if is_valid_cover(y, c, r, params, N):
            log.warning("构造性覆盖失败，回退到扫描", y=str(y), W=W, N=N)
            return ValidCover(c, r, CoverRule.SCAN)
    raise InvariantViolation(f"{y} 既无有效覆盖也不贴近低阶点（W={W}, N={N}）")


# ── 区间分类 ──


class CoverKind(StrEnum):
    FAREY_INTERVAL_INSIDE = "farey_interval_inside"
    NEAR_LOW_ORDER_POINT = "near_low_order_point"


@dataclass(frozen=True)
class CoverVerdict:
    kind: CoverKind
    interval: HalfOpenInterval | None = None  # [c/r, (c+1)/r)
    denominator: int | None = None            # 区间所用的 r
    point: Fraction | None = None             # 低阶点 b/q
    within_lemma_threshold: bool = False      # |y − b/q| < (W+1)/N
    within_proof_threshold: bool = False      # |y − b/q| < W/N

    @property
    def witness(self) -> HalfOpenInterval | Fraction:
        return self.interval if self.kind is CoverKind.FAREY_INTERVAL_INSIDE else self.point

    def check(self, y: Fraction, params: CoverParams, N: int) -> bool:
        """用直接算术复核见证"""
        if self.kind is CoverKind.FAREY_INTERVAL_INSIDE:
            w = params.window(N)
            r = self.denominator
            target = HalfOpenInterval(y, y + Fraction(1, N))
            return (
                r is not None
                and w.n <= r <= w.m
                and self.interval.length == Fraction(1, r)
                and (self.interval.lo * r).denominator == 1
                and target.contains_interval(self.interval)
            )
        return (
            self.point in low_order_points(params.W)
            and abs(y - self.point) < Fraction(params.W + 1, N)
        )


def classify_interval(y: Fraction, params: CoverParams, N: int) -> CoverVerdict:
    """[y, y+1/N) 要么包含某个窗口 Farey 区间，要么 y 贴近某个低阶点"""
    params.require_order(N)
    y = Fraction(y)
    if not 0 <= y <= 1 - Fraction(1, N):
        raise PreconditionError(f"y 必须落在 [0, 1 − 1/N]，收到 {y}", field="y")

    w = params.window(N)
    u, v = y.numerator, y.denominator
    rhs_num = u * N + v  # y + 1/N = (uN + v)/(vN)
    for r in w.denominators():
        c = (u * r) // v + 1  # 最小的 c 使 c/r > y
        if (c + 1) * v * N <= r * rhs_num:
            return CoverVerdict(
                kind=CoverKind.FAREY_INTERVAL_INSIDE,
                interval=HalfOpenInterval(Fraction(c, r), Fraction(c + 1, r)),
                denominator=r,
            )

    lemma_bound = Fraction(params.W + 1, N)
    for bq in _by_distance(y, low_order_points(params.W)):
        dist = abs(y - bq)
        if dist < lemma_bound:
            return CoverVerdict(
                kind=CoverKind.NEAR_LOW_ORDER_POINT,
                point=bq,
                within_lemma_threshold=True,
                within_proof_threshold=dist < Fraction(params.W, N),
            )
    raise InvariantViolation(f"[{y}, {y} + 1/{N}) 两个分支都不成立（W={params.W}）")
