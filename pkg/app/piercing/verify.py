"""
穿刺性校验

plain：对每个 n ≤ N、每个 0 ≤ i < n，前 f(n) 个点中有点落在 [i/n, (i+1)/n)。
strong：对每个 n ≤ N，前缀 P 满足 min(P) < 1/n，相邻空隙 ≤ 1/n，1 − max(P) ≤ 1/n。

浮点模式下，离边界不足 ε 的比较记为 INDETERMINATE，不会静默通过。
"""

from bisect import insort
from fractions import Fraction

import structlog

from app.config import get_settings
from app.exceptions import PreconditionError
from app.observability.metrics import VERIFY_TOTAL
from app.piercing.growth import f_eval
from app.piercing.schemas import GrowthFn, PiercingReport, Point, PointSeq, VerifyStatus

log = structlog.get_logger()


def _require_length(X: PointSeq, f: GrowthFn, N: int) -> None:
    if N < 0:
        raise PreconditionError(f"阶数必须 >= 0，收到 {N}", field="order")
    if N >= 1 and len(X) < f_eval(f, N):
        raise PreconditionError(
            f"序列长度 {len(X)} 小于 f({N}) = {f_eval(f, N)}", field="points"
        )


def _finish(report: PiercingReport) -> PiercingReport:
    VERIFY_TOTAL.labels(mode=report.mode, status=report.status.value).inc()
    if report.status is not VerifyStatus.PASS:
        log.debug("校验未通过", mode=report.mode, status=report.status.value, level=report.level)
    return report


# ── plain ──


def _cells_float(x: float, n: int, eps: float) -> tuple[int | None, tuple[int, ...]]:
    """返回 (确定格子, 可能格子)；离边界不足 ε 时确定格子为 None"""
    t = x * n
    k = round(t)
    if abs(x - k / n) < eps:
        possible = tuple(i for i in (k - 1, k) if 0 <= i < n)
        if len(possible) == 1:  # 0 与 1 附近只有一侧有格子
            return possible[0], possible
        return None, possible
    i = min(int(t), n - 1)
    return i, (i,)


def verify_piercing(
    X: PointSeq, f: GrowthFn, N: int, eps: float | None = None
) -> PiercingReport:
    _require_length(X, f, N)
    eps = get_settings().FLOAT_GUARD_EPS if eps is None else eps
    pending: PiercingReport | None = None

    for n in range(1, N + 1):
        prefix = X.prefix(f_eval(f, n))
        if X.is_exact:
            hit = {(x.numerator * n) // x.denominator for x in prefix}
            maybe: set[int] = set()
        else:
            hit, maybe = set(), set()
            for x in prefix:
                sure, possible = _cells_float(x, n, eps)
                if sure is None:
                    maybe.update(possible)
                else:
                    hit.add(sure)
        if len(hit) == n:
            continue
        for i in range(n):
            if i in hit:
                continue
            if i not in maybe:
                return _finish(
                    PiercingReport("plain", N, VerifyStatus.FAIL, level=n, cell=i)
                )
            if pending is None:
                pending = PiercingReport("plain", N, VerifyStatus.INDETERMINATE, level=n, cell=i)

    return _finish(pending or PiercingReport("plain", N, VerifyStatus.PASS))


# ── strong ──


def _check_gaps(
    P: list[Point], n: int, exact: bool, eps: float
) -> tuple[VerifyStatus, tuple[Point, Point] | None]:
    """对已排序的前缀做空隙判定，返回 (状态, 见证空隙)"""
    if not P:
        return VerifyStatus.FAIL, ((Fraction(0), Fraction(1)) if exact else (0.0, 1.0))
    if n == 1:  # 任意非空前缀都满足
        return VerifyStatus.PASS, None
    if exact:
        h = Fraction(1, n)
        if not P[0] < h:
            return VerifyStatus.FAIL, (Fraction(0), P[0])
        for lo, hi in zip(P, P[1:]):
            if hi - lo > h:
                return VerifyStatus.FAIL, (lo, hi)
        if 1 - P[-1] > h:
            return VerifyStatus.FAIL, (P[-1], Fraction(1))
        return VerifyStatus.PASS, None

    h = 1.0 / n
    status, witness = VerifyStatus.PASS, None
    # 左端严格、内部与右端非严格
    checks: list[tuple[float, float, float, bool]] = [(0.0, P[0], P[0], True)]
    checks += [(lo, hi, hi - lo, False) for lo, hi in zip(P, P[1:])]
    checks.append((P[-1], 1.0, 1.0 - P[-1], False))
    for lo, hi, gap, strict in checks:
        if abs(gap - h) < eps:
            if status is VerifyStatus.PASS:
                status, witness = VerifyStatus.INDETERMINATE, (lo, hi)
            continue
        if gap > h:
            return VerifyStatus.FAIL, (lo, hi)
    return status, witness


def verify_strong(
    X: PointSeq, f: GrowthFn, N: int, eps: float | None = None
) -> PiercingReport:
    _require_length(X, f, N)
    eps = get_settings().FLOAT_GUARD_EPS if eps is None else eps
    pending: PiercingReport | None = None

    P: list[Point] = []
    taken = 0
    for n in range(1, N + 1):
        m = f_eval(f, n)
        for x in X.points[taken:m]:
            insort(P, x)
        taken = max(taken, m)
        status, witness = _check_gaps(P, n, X.is_exact, eps)
        if status is VerifyStatus.FAIL:
            return _finish(PiercingReport("strong", N, status, level=n, gap=witness))
        if status is VerifyStatus.INDETERMINATE and pending is None:
            pending = PiercingReport("strong", N, status, level=n, gap=witness)

    return _finish(pending or PiercingReport("strong", N, VerifyStatus.PASS))


def strong_by_sampling(X: PointSeq, f: GrowthFn, N: int) -> bool:
    """采样判定强穿刺（只用于精确序列，作为空隙判据的对照）

    对每个 n，[y, y+1/n) 是否被击中只在断点 {x_j, x_j − 1/n, 0, 1 − 1/n} 处变化，
    因此检查断点本身及相邻断点的中点即可。
    """
    _require_length(X, f, N)
    for n in range(1, N + 1):
        h = Fraction(1, n)
        prefix = [Fraction(x) for x in X.prefix(f_eval(f, n))]
        top = 1 - h
        marks = {Fraction(0), top}
        for x in prefix:
            marks.update(v for v in (x, x - h) if 0 <= v <= top)
        marks_sorted = sorted(marks)
        probes = set(marks_sorted)
        probes.update((a + b) / 2 for a, b in zip(marks_sorted, marks_sorted[1:]))
        for y in probes:
            if not any(y <= x < y + h for x in prefix):
                return False
    return True
