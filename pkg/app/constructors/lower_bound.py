"""
s(d) 下界的显式构造

N = ⌊c₁·d⌋，取对数序列的前 N+d 个点（不少于 ⌈N/ln2⌉），
应当在 f(n) = n + d 下通过 N 阶普通穿刺校验。
"""

from dataclasses import dataclass

import structlog

from app.bounds.constants import ceil_over_ln2, floor_c1_times
from app.constructors.dbe import DbeVariant, dbe_sequence, parse_variant
from app.exceptions import InvalidInputError
from app.piercing.schemas import GrowthFn, PiercingReport, PointSeq
from app.piercing.verify import verify_piercing

log = structlog.get_logger()


@dataclass(frozen=True)
class LowerBoundResult:
    d: int
    N: int
    prefix_length: int  # ⌈N/ln2⌉
    variant: DbeVariant
    seq: PointSeq

    @property
    def growth(self) -> GrowthFn:
        return GrowthFn.affine(self.d)

    def verify(self) -> PiercingReport:
        return verify_piercing(self.seq, self.growth, self.N)


def lower_bound_sequence(d: int, variant: DbeVariant | str | None = None) -> LowerBoundResult:
    if d < 0:
        raise InvalidInputError(f"d 必须 >= 0，收到 {d}", field="d")
    variant = parse_variant(variant)
    N = floor_c1_times(d)
    if N == 0:
        return LowerBoundResult(d=d, N=0, prefix_length=0, variant=variant, seq=PointSeq.floats([]))

    prefix_length = ceil_over_ln2(N)
    seq = dbe_sequence(max(N + d, prefix_length), variant)
    log.debug("下界序列已生成", d=d, N=N, prefix_length=prefix_length, variant=variant.value)
    return LowerBoundResult(d=d, N=N, prefix_length=prefix_length, variant=variant, seq=seq)
