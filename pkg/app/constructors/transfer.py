"""
穿刺 → 强穿刺的转换构造

给定 f-穿刺序列 X（阶 ⌊αN⌋），按如下次序拼接出 Z：
    Z₀ = ⟨1/N₀, …, (N₀−1)/N₀⟩ ⊙ ⟨x_1..x_{f(1)}⟩
    r = 1..l：追加 H_r^W 与 ⟨x_{f(2^{r−1})+1}..x_{f(2^r)}⟩
    最后追加 H_{l+1}^W 与 X 剩余部分（到 x_{f(⌊αN⌋)}）
其中 l = ⌊log₂⌊αN⌋⌋。布局只依赖 (f, N, W, N₀)，与 X 的取值无关，
因此先生成 TransferPlan，再把 X 装配进去。

每个 n 的保证前缀长度 g(n)：
- n < N₀ 时为 |Z₀|（N₀ 等分网格已强穿刺）
- n ≥ N₀ 时为同时包含 H_{⌈log₂n⌉} 与 x_{f(⌊αn⌋)} 的最短前缀
再取前缀最大值使其单调。
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import structlog
from pydantic import BaseModel

from app.exact import format_rational
from app.exceptions import IndeterminateError, InvariantViolation, PreconditionError
from app.farey.cover import CoverParams
from app.farey.hset import h_set
from app.piercing.growth import f_eval
from app.piercing.schemas import GrowthFn, GrowthKind, PointSeq, VerifyStatus
from app.piercing.verify import verify_piercing, verify_strong

log = structlog.get_logger()


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length()


def growth_gamma(f: GrowthFn) -> Fraction | None:
    """增长函数的线性系数 γ；表格型未知"""
    if f.kind is GrowthKind.CEIL:
        return f.gamma
    if f.kind is GrowthKind.AFFINE:
        return Fraction(1)
    return None


def default_N0(f: GrowthFn, W: int) -> int:
    """大于 2W³ 且对所有 n ≥ N₀ 都有 f(n) < αγn 的最小整数"""
    params = CoverParams(W)
    floor_n0 = params.N0 + 1
    if f.kind is GrowthKind.CEIL:
        # ⌈γn⌉ < γn + 1 ≤ αγn 当 n ≥ (W−1)/(2γ)，而 2W³ 已远大于此
        return floor_n0
    if f.kind is GrowthKind.AFFINE:
        # n + d < αn ⇔ n > d(W−1)/2
        return max(floor_n0, f.d * (W - 1) // 2 + 1)
    raise PreconditionError("表格型增长函数需要显式给出 N0", field="N0")


# ── 布局 ──


@dataclass(frozen=True)
class Block:
    label: str           # grid / x / h<r>
    size: int
    x_start: int = 0     # x 块在 X 中的切片 [x_start, x_stop)
    x_stop: int = 0


@dataclass(frozen=True)
class TransferPlan:
    W: int
    alpha: Fraction
    N0: int
    N: int
    f: GrowthFn
    l: int
    layout: tuple[Block, ...]

    @classmethod
    def build(cls, f: GrowthFn, N: int, W: int, N0: int) -> "TransferPlan":
        params = CoverParams(W)
        if N0 < 2:
            raise PreconditionError(f"N0 必须 >= 2，收到 {N0}", field="N0")
        if N < 1:
            raise PreconditionError(f"N 必须 >= 1，收到 {N}", field="N")
        top = (params.alpha.numerator * N) // params.alpha.denominator  # ⌊αN⌋
        l = top.bit_length() - 1

        def x_block(lo: int, hi: int) -> Block:
            hi = max(lo, hi)
            return Block("x", hi - lo, lo, hi)

        layout = [Block("grid", N0 - 1), x_block(0, f_eval(f, 1))]
        for r in range(1, l + 1):
            layout.append(Block(f"h{r}", len(h_set(r, W))))
            layout.append(x_block(f_eval(f, 2 ** (r - 1)), f_eval(f, 2**r)))
        layout.append(Block(f"h{l + 1}", len(h_set(l + 1, W))))
        layout.append(x_block(f_eval(f, 2**l), f_eval(f, top)))
        return cls(W=W, alpha=params.alpha, N0=N0, N=N, f=f, l=l, layout=tuple(layout))

    @property
    def top(self) -> int:
        return (self.alpha.numerator * self.N) // self.alpha.denominator

    @property
    def total_length(self) -> int:
        return sum(b.size for b in self.layout)

    @property
    def x_needed(self) -> int:
        return f_eval(self.f, self.top)

    def _positions(self) -> tuple[dict[int, int], list[tuple[int, int, int]]]:
        """H_r 块的结束位置，以及 x 块的 (x_start, x_stop, 起始位置)"""
        h_end: dict[int, int] = {}
        x_spans: list[tuple[int, int, int]] = []
        pos = 0
        for block in self.layout:
            if block.label == "x":
                x_spans.append((block.x_start, block.x_stop, pos))
            elif block.label != "grid":
                h_end[int(block.label[1:])] = pos + block.size
            pos += block.size
        return h_end, x_spans

    def guaranteed(self) -> tuple[int, ...]:
        """g(1..N)"""
        h_end, x_spans = self._positions()
        z0 = self.layout[0].size + self.layout[1].size

        def x_end(j: int) -> int:
            # 包含 x_1..x_j 的最短前缀
            if j == 0:
                return 0
            for lo, hi, start in x_spans:
                if lo < j <= hi:
                    return start + (j - lo)
            raise InvariantViolation(f"布局中找不到 x_{j}")

        values: list[int] = []
        best = z0
        for n in range(1, self.N + 1):
            if n >= self.N0:
                need_h = h_end.get(_ceil_log2(n), 0)
                need_x = x_end(f_eval(self.f, (self.alpha.numerator * n) // self.alpha.denominator))
                best = max(best, need_h, need_x)
            values.append(best)
        return tuple(values)

    def bound(self, gamma: Fraction | None) -> tuple[float | None, ...]:
        """α²γn + N₀ + 5W³(log₂n + 1)"""
        if gamma is None:
            return tuple(None for _ in range(self.N))
        a2g = float(self.alpha**2 * gamma)
        w3 = 5 * self.W**3
        return tuple(a2g * n + self.N0 + w3 * (math.log2(n) + 1) for n in range(1, self.N + 1))


# ── 结果 ──


class TransferDocument(BaseModel):
    """provenance 旁车 JSON"""

    W: int
    N: int
    N0: int
    l: int
    alpha: str
    f: str
    layout: list[dict]
    provenance: list[str]
    guaranteed: list[int]
    bound: list[float | None]


@dataclass(frozen=True)
class TransferResult:
    plan: TransferPlan
    Z: PointSeq
    provenance: tuple[str, ...]
    guaranteed: tuple[int, ...]
    bound: tuple[float | None, ...]

    @property
    def growth(self) -> GrowthFn:
        """由 g(n) 诱导的表格型增长函数"""
        return GrowthFn.table(self.guaranteed)

    def prefix_labels(self, n: int) -> set[str]:
        """前 g(n) 个元素涉及的块标签"""
        return set(self.provenance[: self.guaranteed[n - 1]])

    def to_document(self) -> TransferDocument:
        return TransferDocument(
            W=self.plan.W,
            N=self.plan.N,
            N0=self.plan.N0,
            l=self.plan.l,
            alpha=format_rational(self.plan.alpha),
            f=self.plan.f.describe(),
            layout=[vars(b) for b in self.plan.layout],
            provenance=list(self.provenance),
            guaranteed=list(self.guaranteed),
            bound=list(self.bound),
        )


def assemble(X: PointSeq, plan: TransferPlan, gamma: Fraction | None = None) -> TransferResult:
    """按布局拼接 Z；不检查 X 的穿刺性"""
    if len(X) < plan.x_needed:
        raise PreconditionError(
            f"序列长度 {len(X)} 小于 f(⌊αN⌋) = {plan.x_needed}", field="points"
        )
    points: list = []
    provenance: list[str] = []
    for block in plan.layout:
        if block.label == "grid":
            chunk = [Fraction(i, plan.N0) for i in range(1, plan.N0)]
        elif block.label == "x":
            chunk = list(X.points[block.x_start : block.x_stop])
        else:
            chunk = h_set(int(block.label[1:]), plan.W)
        points.extend(chunk)
        provenance.extend([block.label] * len(chunk))

    Z = PointSeq.exact(points) if X.is_exact else PointSeq.floats(float(x) for x in points)
    return TransferResult(
        plan=plan,
        Z=Z,
        provenance=tuple(provenance),
        guaranteed=plan.guaranteed(),
        bound=plan.bound(gamma),
    )


def transfer(
    X: PointSeq,
    f: GrowthFn,
    N: int,
    W: int,
    N0: int | None = None,
    gamma: Fraction | None = None,
    self_check: bool = True,
) -> TransferResult:
    params = CoverParams(W)
    N0 = default_N0(f, W) if N0 is None else N0
    gamma = growth_gamma(f) if gamma is None else gamma
    if N0 <= params.N0:
        raise PreconditionError(f"需要 N0 > 2W³ = {params.N0}，收到 {N0}", field="N0")
    if N < N0:
        raise PreconditionError(f"需要 N >= N0 = {N0}，收到 N={N}", field="N")
    if gamma is not None and not f_eval(f, N) < params.alpha * gamma * N:
        raise PreconditionError(f"需要 f(N) < αγN，f({N}) = {f_eval(f, N)}", field="f")

    plan = TransferPlan.build(f, N, W, N0)
    report = verify_piercing(X, f, plan.top)
    if report.status is VerifyStatus.FAIL:
        raise PreconditionError(
            f"输入序列不是 {plan.top} 阶 f-穿刺的：n={report.level}, i={report.cell}",
            field="X",
        )
    if report.status is VerifyStatus.INDETERMINATE:
        raise IndeterminateError(
            f"输入序列的穿刺性在 n={report.level}, i={report.cell} 处无法确定", field="X"
        )

    result = assemble(X, plan, gamma)
    log.info("转换构造完成", N=N, W=W, N0=N0, length=len(result.Z), l=plan.l)

    if self_check:
        check = verify_strong(result.Z, result.growth, N)
        if check.status is VerifyStatus.FAIL:
            raise InvariantViolation(f"转换结果在 n={check.level} 处不是强穿刺的：{check.gap}")
        if check.status is VerifyStatus.INDETERMINATE:
            raise IndeterminateError(
                f"转换结果在 n={check.level} 处的空隙贴近 1/n，浮点下无法确定：{check.gap}", field="Z"
            )
    return result
