"""
Hall 条件检查

同一层的格子是 [0,1) 上从左到右的区间，点的范围也是区间，
所以每个点能占的格子是连续的一段下标 [a, b]（凸二部图）。
凸二部图的最大匹配可以贪心求得：格子从左到右，每次分给
可用点里右端 b 最小的那个。贪心失败即存在违反 Hall 条件的格子集合。
"""

import heapq
from collections.abc import Iterable


def cell_span(lo: int, hi: int, step: int) -> tuple[int, int]:
    """范围 [lo, hi) 在步长 step 的格子上覆盖的下标区间 [a, b]"""
    return lo // step, (hi - 1) // step


def hall_ok(cells: Iterable[int], spans: Iterable[tuple[int, int]]) -> bool:
    """cells 能否被 spans 中互不相同的点覆盖"""
    need = sorted(cells)
    if not need:
        return True
    pool = sorted(spans)
    if len(pool) < len(need):
        return False

    heap: list[int] = []
    k = 0
    for c in need:
        while k < len(pool) and pool[k][0] <= c:
            heapq.heappush(heap, pool[k][1])
            k += 1
        while heap and heap[0] < c:
            heapq.heappop(heap)
        if not heap:
            return False
        heapq.heappop(heap)
    return True
