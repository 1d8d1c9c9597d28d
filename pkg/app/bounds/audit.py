"""
上界证明不等式链的具体数值审计

给定 d、W（以及 s 的候选系数 c），逐条计算证明中出现的不等式。
只审计算术，不证明定理：s 候选取 ⌈c·d⌉，c 缺省为 2K，K = (1+α²ln2)/(1−α²ln2)。
"""

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import structlog

from app.exceptions import InvalidInputError
from app.farey.hset import h_set

log = structlog.get_logger()

AUDIT_DPS = 60


@dataclass(frozen=True)
class AuditStep:
    name: str
    lhs: str
    rhs: str
    passed: bool


@dataclass
class AuditReport:
    d: int
    W: int
    c: str
    s: int | None = None
    N0: int | None = None
    L: int | None = None
    preconditions: list[AuditStep] = field(default_factory=list)
    steps: list[AuditStep] = field(default_factory=list)

    @property
    def failed_precondition(self) -> str | None:
        for pre in self.preconditions:
            if not pre.passed:
                return pre.name
        return None

    @property
    def all_pass(self) -> bool:
        return self.failed_precondition is None and bool(self.steps) and all(
            step.passed for step in self.steps
        )

    def summary(self) -> dict:
        return {
            "d": self.d,
            "W": self.W,
            "c": self.c,
            "s": self.s,
            "N0": self.N0,
            "L": self.L,
            "all_pass": self.all_pass,
            "failed_precondition": self.failed_precondition,
            "preconditions": [vars(p) for p in self.preconditions],
            "steps": [vars(s) for s in self.steps],
        }


def _fmt(x) -> str:
    if isinstance(x, int):
        return str(x)
    return mpmath.nstr(x, 20)


def _check(bucket: list[AuditStep], name: str, lhs, rhs, passed: bool) -> bool:
    bucket.append(AuditStep(name=name, lhs=_fmt(lhs), rhs=_fmt(rhs), passed=bool(passed)))
    return bool(passed)


def _ceil_log2(num: int, den: int = 1) -> int:
    """⌈log₂(num/den)⌉，num/den ≥ 1"""
    r = 0
    while den * 2**r < num:
        r += 1
    return r


def _harmonic_gap(k: int) -> mpmath.mpf:
    """H_{2k} − H_{k−1}"""
    return mpmath.harmonic(2 * k) - mpmath.harmonic(k - 1)


def audit_upper_bound(d: int, W: int, c: float | None = None) -> AuditReport:
    if d < 0:
        raise InvalidInputError(f"d 必须 >= 0，收到 {d}", field="d")
    if W < 2:
        raise InvalidInputError(f"W 必须 >= 2，收到 {W}", field="W")

    alpha = Fraction(W + 1, W - 1)
    W3 = W**3
    report = AuditReport(d=d, W=W, c="2K" if c is None else repr(c))
    pre = report.preconditions

    with mpmath.workdps(AUDIT_DPS):
        ln2 = mpmath.log(2)
        a = mpmath.mpf(alpha.numerator) / alpha.denominator
        a2l = a * a * ln2

        if not _check(pre, "W > 10", W, 10, W > 10):
            return report
        if not _check(pre, "α²ln2 < 1", a2l, 1, a2l < 1):
            return report

        K = (1 + a2l) / (1 - a2l)
        coef = 2 * K if c is None else mpmath.mpf(c)
        s = int(mpmath.ceil(coef * d))
        report.s = s
        bound = int(mpmath.ceil(K * d + 500 * W3))
        if not _check(pre, "s > ⌈K·d + 500W³⌉", s, bound, s > bound):
            return report

        N0 = (s * alpha.denominator) // alpha.numerator  # ⌊s/α⌋
        report.N0 = N0
        half = N0 // 2
        if not _check(pre, "⌊N0/2⌋ ≥ 2", half, 2, half >= 2):
            return report
        gamma_half = 1 / _harmonic_gap(half)
        if not _check(pre, "1/(H_{2⌊N0/2⌋} − H_{⌊N0/2⌋−1}) > 1/(α ln2)",
                      gamma_half, 1 / (a * ln2), gamma_half > 1 / (a * ln2)):
            return report

        steps = report.steps
        rhs = (1 + a2l) / (a * (1 - a2l)) * d + 400 * W3
        _check(steps, "N0 > (1+α²ln2)/(α(1−α²ln2))·d + 400W³", N0, rhs, N0 > rhs)

        top = _ceil_log2(N0)
        blocks = [max(top - shift, 0) for shift in (3, 2, 1, 0)]
        h_total = sum(len(h_set(r, W)) for r in blocks)
        floor_alpha_N0 = (alpha.numerator * N0) // alpha.denominator
        z_len = h_total + floor_alpha_N0 + d
        L = -(-z_len // 2)
        report.L = L
        log.debug("审计布局", blocks=blocks, h_total=h_total, z_len=z_len, L=L)

        _check(steps, "|H| ≤ 20W³", h_total, 20 * W3, h_total <= 20 * W3)
        _check(steps, "2L > αN0", 2 * L, a * N0, 2 * L > a * N0)
        _check(steps, "L > N0/2", L, mpmath.mpf(N0) / 2, 2 * L > N0)
        rhs = (d * (1 + a2l) + 2 + 40 * W3) / (1 - a2l)
        _check(steps, "s ≥ (d(1+α²ln2)+2+40W³)/(1−α²ln2)", s, rhs, s >= rhs)
        _check(steps, "2L ≥ s + d", 2 * L, s + d, 2 * L >= s + d)
        rhs = (2 * d + 2 + 40 * W3) / (1 - a2l)
        _check(steps, "s + d ≥ (2d+2+40W³)/(1−α²ln2)", s + d, rhs, s + d >= rhs)
        rhs = (d + 1 + 20 * W3) / (1 - a2l)
        _check(steps, "L ≥ (d+1+20W³)/(1−α²ln2)", L, rhs, L >= rhs)
        gamma_L = 1 / _harmonic_gap(L)
        _check(steps, "1/(H_{2L} − H_{L−1}) > 1/(H_{2⌊N0/2⌋} − H_{⌊N0/2⌋−1})",
               gamma_L, gamma_half, gamma_L > gamma_half)

        for tag, l in (("l=L", L), ("l=2L", 2 * L)):
            M = l - 20 * W3 - 1 - d
            lhs = l * (1 - a2l)
            _check(steps, f"l(1−α²ln2) ≥ d+1+20W³ [{tag}]", lhs, d + 1 + 20 * W3,
                   lhs >= d + 1 + 20 * W3)
            _check(steps, f"M ≥ α²l·ln2 [{tag}]", M, a2l * l, M >= a2l * l)
            _check(steps, f"M/α ≥ α·l·ln2 [{tag}]", M / a, a * l * ln2, M / a >= a * l * ln2)
            m_over_a = Fraction(M) / alpha
            _check(steps, f"N0/8 < M/α ≤ N0 [{tag}]", M / a, N0,
                   Fraction(N0, 8) < m_over_a <= N0)
            _check(steps, f"α/M ≤ 1/(α·l·ln2) [{tag}]", a / M, 1 / (a * l * ln2),
                   M > 0 and a / M <= 1 / (a * l * ln2))

    log.info("上界审计完成", d=d, W=W, all_pass=report.all_pass)
    return report
