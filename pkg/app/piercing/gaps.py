"""
最大空隙与 γ_N

Y^n = sort(0, 1, x_1, …, x_n)，b_n 为 Y^n 相邻元素的最大差。
γ_N = 1 / (H_{2N} − H_{N−1})；对任意序列，总存在 N ≤ n ≤ 2N 使 b_n ≥ γ_N / n。
"""

import math
from bisect import insort
from fractions import Fraction
from functools import lru_cache

from app.exceptions import InvariantViolation, PreconditionError
from app.piercing.schemas import GapProfile, Lemma23Witness, Point, PointSeq


def gap_profile(X: PointSeq, n: int) -> GapProfile:
    if n < 0 or len(X) < n:
        raise PreconditionError(f"需要 0 ≤ n ≤ len(X)，收到 n={n}", field="n")
    if X.is_exact:
        ends: list[Point] = [Fraction(0), Fraction(1)]
    else:
        ends = [0.0, 1.0]
    Y = sorted(list(X.prefix(n)) + ends)
    gaps = sorted((b - a for a, b in zip(Y, Y[1:])), reverse=True)

    total = sum(gaps) if X.is_exact else math.fsum(gaps)
    if (X.is_exact and total != 1) or (not X.is_exact and abs(total - 1.0) > 1e-12):
        raise InvariantViolation(f"空隙之和 {total} 不等于 1")
    return GapProfile(n=n, sorted_gaps=tuple(gaps), max_gap=gaps[0])


@lru_cache(maxsize=1024)
def gamma_N(N: int) -> Fraction:
    """1 / (H_{2N} − H_{N−1})，精确有理数"""
    if N < 2:
        raise PreconditionError(f"γ_N 需要 N >= 2，收到 {N}", field="N")
    return 1 / sum(Fraction(1, k) for k in range(N, 2 * N + 1))


def _max_gap(Y: list[Point]) -> Point:
    return max(b - a for a, b in zip(Y, Y[1:]))


def lemma23_witness(X: PointSeq, N: int) -> Lemma23Witness:
    """扫描 n ∈ [N, 2N]，返回第一个满足 b_n ≥ γ_N/n 的 (n, b_n)"""
    if N < 2:
        raise PreconditionError(f"需要 N >= 2，收到 {N}", field="N")
    if len(X) < 2 * N:
        raise PreconditionError(f"序列长度 {len(X)} 小于 2N = {2 * N}", field="points")

    gamma = gamma_N(N)
    gamma_f = float(gamma)
    Y: list[Point] = sorted(list(X.prefix(N - 1)))
    Y = [Fraction(0), *Y, Fraction(1)] if X.is_exact else [0.0, *Y, 1.0]

    for n in range(N, 2 * N + 1):
        insort(Y, X[n - 1])
        b_n = _max_gap(Y)
        if X.is_exact:
            if b_n * n >= gamma:
                return Lemma23Witness(n=n, b_n=b_n, bound=gamma / n)
        elif b_n * n >= gamma_f:
            return Lemma23Witness(n=n, b_n=b_n, bound=gamma_f / n)
    raise InvariantViolation(f"n ∈ [{N}, {2 * N}] 内找不到 b_n ≥ γ_N/n，算术实现有误")
