"""
对数序列：x_i = frac(log₂(奇数))

两种下标：odd_from_one 取 2i−1（首点为 0），odd_from_three 取 2i+1。
点为 binary64，由 numpy 批量计算。
"""

from enum import StrEnum

import numpy as np
import structlog

from app.config import get_settings
from app.exceptions import IndeterminateError, InvalidInputError, InvariantViolation
from app.piercing.schemas import PointSeq

log = structlog.get_logger()


class DbeVariant(StrEnum):
    ODD_FROM_ONE = "odd_from_one"      # 2i − 1
    ODD_FROM_THREE = "odd_from_three"  # 2i + 1

    @property
    def offset(self) -> int:
        return -1 if self is DbeVariant.ODD_FROM_ONE else 1


def parse_variant(value: str | DbeVariant | None) -> DbeVariant:
    if value is None:
        value = get_settings().DBE_DEFAULT_VARIANT
    try:
        return DbeVariant(value)
    except ValueError as e:
        raise InvalidInputError(f"未知的对数序列变体：{value!r}", field="variant", cause=e) from e


def _dbe_array(m: int, variant: DbeVariant) -> np.ndarray:
    odd = 2 * np.arange(1, m + 1, dtype=np.float64) + variant.offset
    v = np.log2(odd)
    return v - np.floor(v)


def dbe_sequence(m: int, variant: DbeVariant | str | None = None) -> PointSeq:
    if m < 1:
        raise InvalidInputError(f"m 必须 >= 1，收到 {m}", field="m")
    variant = parse_variant(variant)
    return PointSeq.floats(_dbe_array(m, variant).tolist())


def _strong_at_level(points: np.ndarray, n: int, eps: float) -> bool:
    """对前缀做 n 级空隙判定；落在保护带内时抛 IndeterminateError"""
    if n == 1:
        return points.size > 0
    h = 1.0 / n
    P = np.sort(points)
    gaps = np.concatenate(([P[0]], np.diff(P), [1.0 - P[-1]]))
    if np.any(np.abs(gaps - h) < eps):
        raise IndeterminateError(f"前缀长度 {P.size} 的空隙距 1/{n} 不足 ε", field="n")
    # 左端严格，内部与右端非严格；保护带外两者一致
    return bool(np.all(gaps <= h))


def dbe_needed_prefix(
    n: int, variant: DbeVariant | str | None = None, eps: float | None = None
) -> int:
    """满足 n 级强穿刺空隙判据的最短前缀长度 m(n)"""
    if n < 1:
        raise InvalidInputError(f"n 必须 >= 1，收到 {n}", field="n")
    variant = parse_variant(variant)
    eps = get_settings().FLOAT_GUARD_EPS if eps is None else eps
    if n == 1:
        return 1

    cap = 16 * n + 16
    hi = max(n, 2)
    points = _dbe_array(hi, variant)
    while not _strong_at_level(points, n, eps):
        hi *= 2
        if hi > cap:
            raise InvariantViolation(f"对数序列在 {cap} 点内仍未满足 n={n} 的强穿刺判据")
        points = _dbe_array(hi, variant)

    # 判据对前缀长度单调，二分找最小的 m
    lo = n - 1  # 少于 n 个点不可能满足
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _strong_at_level(points[:mid], n, eps):
            hi = mid
        else:
            lo = mid
    return hi
