"""
补丁集合 H_r^W = {b/q + a/2^r : b/q ∈ FP_1^{W−1}, −2(W+1) ≤ a ≤ 2(W+1)} ∩ [0, 1)

低阶点附近的二进偏移，用来补上 Farey 区间覆盖不到的位置。元素升序存放。
"""

from fractions import Fraction
from functools import lru_cache

from app.exceptions import PreconditionError
from app.farey.window import low_order_points


@lru_cache(maxsize=256)
def _h_set(r: int, W: int) -> tuple[Fraction, ...]:
    step = Fraction(1, 2**r)
    reach = 2 * (W + 1)
    values = {
        bq + a * step
        for bq in low_order_points(W)
        for a in range(-reach, reach + 1)
    }
    return tuple(sorted(v for v in values if 0 <= v < 1))


def h_set(r: int, W: int) -> list[Fraction]:
    if W < 2:
        raise PreconditionError(f"W 必须 >= 2，收到 {W}", field="W")
    if r < 0:
        raise PreconditionError(f"r 必须 >= 0，收到 {r}", field="r")
    return list(_h_set(r, W))
