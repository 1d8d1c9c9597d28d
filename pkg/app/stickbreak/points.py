"""
折棍过程 → 点序列

圆周约定：0 与 1 视为同一点，第一个点放在 0（把圆周剪成长度 1 的棍），
之后每次断开追加断点位置。k 个点把圆周分成 k 段弧，与模拟器的段多重集一致。
"""

import math
from collections.abc import Iterable

from app.exceptions import InvalidInputError
from app.piercing.schemas import PointSeq


def to_point_sequence(break_log: Iterable[tuple[int, float]]) -> PointSeq:
    """重放断开日志（段 id 与 StickState 的编号规则一致）"""
    segments: dict[int, tuple[float, float]] = {0: (0.0, 1.0)}
    next_id = 1
    points = [0.0]
    for idx, (seg_id, ratio) in enumerate(break_log):
        if seg_id not in segments:
            raise InvalidInputError(f"日志第 {idx} 条引用了不存在的段 {seg_id}", field="break_log")
        start, length = segments.pop(seg_id)
        left_len = (1.0 - ratio) * length
        cut = start + left_len
        segments[next_id] = (start, left_len)
        segments[next_id + 1] = (cut, length - left_len)
        next_id += 2
        points.append(cut)
    return PointSeq.floats(points)


def circle_arcs(X: PointSeq) -> list[float]:
    """点序列在圆周上切出的弧长（升序）"""
    if len(X) == 0:
        return []
    pts = sorted(float(x) for x in X)
    arcs = [b - a for a, b in zip(pts, pts[1:])]
    arcs.append(1.0 - pts[-1] + pts[0])
    return sorted(arcs)


def same_multiset(xs: Iterable[float], ys: Iterable[float], tol: float = 1e-12) -> bool:
    a, b = sorted(xs), sorted(ys)
    return len(a) == len(b) and all(math.isclose(u, v, rel_tol=0.0, abs_tol=tol) for u, v in zip(a, b))
