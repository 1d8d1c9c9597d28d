"""
从格子分配证书提取精确见证序列
"""

from collections import defaultdict
from fractions import Fraction

from app.exact import HalfOpenInterval
from app.exceptions import PreconditionError
from app.piercing.schemas import PointSeq
from app.search.schemas import CoverAssignment


def extract_witness(assignment: CoverAssignment | list[HalfOpenInterval]) -> PointSeq:
    """单独占用一个范围的点取中点；m 个点共享 [lo, hi) 时第 k 个取 lo + (k+1)(hi−lo)/(m+1)"""
    ranges = assignment.ranges if isinstance(assignment, CoverAssignment) else assignment
    sharing: dict[tuple[Fraction, Fraction], list[int]] = defaultdict(list)
    for j, r in enumerate(ranges):
        if r.is_empty:
            raise PreconditionError(f"点 {j} 的范围为空", field=f"ranges[{j}]")
        sharing[(r.lo, r.hi)].append(j)

    points: list[Fraction] = [Fraction(0)] * len(ranges)
    for (lo, hi), members in sharing.items():
        m = len(members)
        for k, j in enumerate(members):
            points[j] = lo + (k + 1) * (hi - lo) / (m + 1)
    return PointSeq.exact(points)
