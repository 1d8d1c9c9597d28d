"""
极限值：漫不经心策略的闭式 kM_k，以及 γ_N 向 1/ln2 的趋势表
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from app.exceptions import InvalidInputError
from app.piercing.gaps import gamma_N

EXACT_TREND_LIMIT = 200  # 超过此 N 的行不再携带精确有理数


def predicted_limit(r: float) -> float:
    """−1 / (r ln r + (1−r) ln(1−r))"""
    if not 0.0 < r < 1.0:
        raise InvalidInputError(f"r 必须落在 (0, 1)：{r}", field="r")
    return -1.0 / (r * math.log(r) + (1.0 - r) * math.log1p(-r))


@dataclass(frozen=True)
class GammaTrendRow:
    N: int
    gamma: float
    diff: float                     # γ_N − 1/ln2（带符号）
    gamma_exact: Fraction | None = None


def gamma_trend(N_max: int, exact_limit: int = EXACT_TREND_LIMIT) -> list[GammaTrendRow]:
    """N = 2..N_max 的 γ_N 与极限之差；只记录数据，不断言符号"""
    if N_max < 2:
        raise InvalidInputError(f"N_max 必须 >= 2，收到 {N_max}", field="n_max")
    rows: list[GammaTrendRow] = []
    with mpmath.workdps(30):
        limit = 1 / mpmath.log(2)
        for N in range(2, N_max + 1):
            gamma = 1 / (mpmath.harmonic(2 * N) - mpmath.harmonic(N - 1))
            rows.append(
                GammaTrendRow(
                    N=N,
                    gamma=float(gamma),
                    diff=float(gamma - limit),
                    gamma_exact=gamma_N(N) if N <= exact_limit else None,
                )
            )
    return rows
