"""
数值常数：c₁ = ln2/(1−ln2)，c₂ = (1+ln2)/(1−ln2)，dBE = 1/ln2

binary64 版本供日常计算；mpmath 50 位版本作为独立参照与取整用。
"""

import math
from dataclasses import dataclass

import mpmath

REFERENCE_DPS = 50


@dataclass(frozen=True)
class Constants:
    c1: float
    c2: float
    dbe: float


LN2 = math.log(2.0)
CONSTANTS = Constants(
    c1=LN2 / (1.0 - LN2),
    c2=(1.0 + LN2) / (1.0 - LN2),
    dbe=1.0 / LN2,
)


def reference_constants(dps: int = REFERENCE_DPS) -> dict[str, mpmath.mpf]:
    """高精度参照值"""
    with mpmath.workdps(dps):
        ln2 = mpmath.log(2)
        return {
            "ln2": +ln2,
            "c1": ln2 / (1 - ln2),
            "c2": (1 + ln2) / (1 - ln2),
            "dbe": 1 / ln2,
        }


def floor_c1_times(d: int) -> int:
    """⌊c₁·d⌋，按 50 位精度取整"""
    with mpmath.workdps(REFERENCE_DPS):
        ln2 = mpmath.log(2)
        return int(mpmath.floor(ln2 / (1 - ln2) * d))


def ceil_over_ln2(n: int) -> int:
    """⌈n / ln2⌉，按 50 位精度取整"""
    with mpmath.workdps(REFERENCE_DPS):
        return int(mpmath.ceil(n / mpmath.log(2)))
