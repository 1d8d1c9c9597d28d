"""
有理比例下的代际计数

若 b/a = p/q（a = −ln r，b = −ln(1−r)，gcd(p, q) = 1），取时间单位 t = a/q = b/p，
d_n 为时刻 nt 断开的段数，满足 d_n = d_{n−p} + d_{n−q}，生成函数 1/(1 − x^p − x^q)。
β 是 β^p + β^q = 1 在 (0, 1) 内的唯一根，β = e^{−t}，β^q = r，β^p = 1 − r。
"""

import math
from dataclasses import dataclass

import mpmath

from app.bounds.limits import predicted_limit
from app.exceptions import InvalidInputError


@dataclass(frozen=True)
class RecurrenceReport:
    p: int
    q: int
    d: tuple[int, ...]
    beta: float
    ratio_error: float          # d_n β^n 在 [0.8·terms, terms] 上的相对变化
    normalized: float           # d_terms · β^terms
    r: float                    # β^q
    identity_error: float       # |β^p − (1 − r)|


def dominant_root(p: int, q: int) -> float:
    """β^p + β^q = 1 在 (0, 1) 内的根（f(0) = −1，f(1) = 1）"""
    with mpmath.workdps(30):
        beta = mpmath.findroot(lambda b: b**p + b**q - 1, (0, 1), solver="anderson", maxsteps=200)
    return float(beta)


def _validate(p: int, q: int) -> None:
    if not 0 < p < q:
        raise InvalidInputError(f"需要 0 < p < q，收到 p={p}, q={q}", field="p")
    if math.gcd(p, q) != 1:
        raise InvalidInputError(f"p 与 q 必须互素，收到 p={p}, q={q}", field="q")


def generation_counts(p: int, q: int, terms: int) -> list[int]:
    """1/(1 − x^p − x^q) 的系数 d_0..d_terms"""
    d = [0] * (terms + 1)
    d[0] = 1
    for n in range(1, terms + 1):
        d[n] = (d[n - p] if n >= p else 0) + (d[n - q] if n >= q else 0)
    return d


def _normalized(d_n: int, n: int, ln_beta: float) -> float:
    if d_n <= 0:
        return 0.0
    return math.exp(math.log(d_n) + n * ln_beta)


def recurrence_check(p: int, q: int, terms: int) -> RecurrenceReport:
    _validate(p, q)
    if terms < 1:
        raise InvalidInputError(f"terms 必须 >= 1，收到 {terms}", field="terms")
    d = generation_counts(p, q, terms)
    beta = dominant_root(p, q)
    ln_beta = math.log(beta)

    last = _normalized(d[terms], terms, ln_beta)
    earlier = _normalized(d[int(terms * 0.8)], int(terms * 0.8), ln_beta)
    ratio_error = abs(last - earlier) / last if last else math.inf

    r = beta**q
    return RecurrenceReport(
        p=p,
        q=q,
        d=tuple(d),
        beta=beta,
        ratio_error=ratio_error,
        normalized=last,
        r=r,
        identity_error=abs(beta**p - (1.0 - r)),
    )


def rational_ratio(p: int, q: int) -> float:
    """使 −ln(1−r) / −ln r = p/q 的 r（= β^q）"""
    _validate(p, q)
    return dominant_root(p, q) ** q


def mean_length_ratio(p: int, q: int) -> float:
    """M / M_k 的渐近值 (1 − β)(pβ^p + qβ^q)"""
    _validate(p, q)
    beta = dominant_root(p, q)
    return (1.0 - beta) * (p * beta**p + q * beta**q)


def predicted_limit_rational(p: int, q: int) -> float:
    """有理情形的 kM_k：闭式乘以 t/(1 − e^{−t})，t = −ln β"""
    _validate(p, q)
    beta = dominant_root(p, q)
    t = -math.log(beta)
    return predicted_limit(beta**q) * t / (1.0 - beta)
