"""
穷举对照

FP_1^N 的相邻点把 [0,1) 切成若干基本区间，同一基本区间内的点在每一层都落在
同一个格子里，所以只需给每个点选一个基本区间。逐层激活新点、穷举其基本区间，
某层出现空格子就丢弃该前缀。同批激活的点可以互换，只枚举不减的组合。
不使用范围、匹配或镜像，作为 engine 的独立对照。
"""

import math
from fractions import Fraction
from itertools import combinations_with_replacement

from app.farey.window import FareyWindow, enumerate_window
from app.piercing.schemas import PointSeq
from app.search.schemas import Instance


def elementary_intervals(N: int) -> list[tuple[Fraction, Fraction]]:
    marks = [pt.value for pt in enumerate_window(FareyWindow(1, N))]
    return list(zip(marks, marks[1:]))


def brute_force_feasible(instance: Instance) -> PointSeq | None:
    """可行时返回一个见证（各点取所在基本区间的中点），否则返回 None"""
    N = instance.N
    pieces = elementary_intervals(N)
    mids = [(a + b) / 2 for a, b in pieces]
    # cells[k][n] = 基本区间 k 在第 n 层所属的格子
    cells = [[None] + [math.floor(lo * n) for n in range(1, N + 1)] for lo, _ in pieces]

    def pierced(chosen: list[int], n: int) -> bool:
        return len({cells[k][n] for k in chosen[: instance.active(n)]}) == n

    def extend(chosen: list[int], n: int) -> list[int] | None:
        if n > N:
            return chosen
        fresh = instance.active(n) - len(chosen)
        for combo in combinations_with_replacement(range(len(pieces)), fresh):
            candidate = chosen + list(combo)
            if pierced(candidate, n):
                result = extend(candidate, n + 1)
                if result is not None:
                    return result
        return None

    found = extend([], 1)
    if found is None:
        return None
    return PointSeq.exact(mids[k] for k in found)
