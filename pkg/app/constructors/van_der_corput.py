"""
二进 van der Corput 序列（精确有理数），可选有理旋转 θ

前 2^k 个点恰为 {j/2^k}，因此对 f(n) = 2n 强穿刺；旋转不改变这一点。
"""

from fractions import Fraction

from app.exceptions import InvalidInputError
from app.piercing.schemas import PointSeq


def radical_inverse(i: int, base: int = 2) -> Fraction:
    """i 的 base 进制各位倒排到小数点之后"""
    value = Fraction(0)
    scale = Fraction(1, base)
    while i > 0:
        i, digit = divmod(i, base)
        value += digit * scale
        scale /= base
    return value


def van_der_corput(m: int, theta: Fraction = Fraction(0), base: int = 2) -> PointSeq:
    if m < 0:
        raise InvalidInputError(f"m 必须 >= 0，收到 {m}", field="m")
    if base < 2:
        raise InvalidInputError(f"base 必须 >= 2，收到 {base}", field="base")
    theta = Fraction(theta)
    return PointSeq.exact((radical_inverse(i, base) + theta) % 1 for i in range(m))
