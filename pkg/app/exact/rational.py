"""
精确有理数：直接使用标准库 fractions.Fraction（任意精度、恒为既约形式、不可变）

JSON 文本形式统一为 "p/q"（q > 0），整数写成裸 "p"。
"""

from fractions import Fraction

from app.exceptions import InvalidInputError

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(num: int, den: int = 1) -> Fraction:
    """构造既约有理数，符号归到分子上"""
    if den == 0:
        raise InvalidInputError(f"分母不能为 0：{num}/{den}", field="denominator")
    return Fraction(num, den)


def compare(x: Fraction, y: Fraction) -> int:
    """交叉相乘比较大小，返回 -1 / 0 / 1"""
    lhs = x.numerator * y.denominator
    rhs = y.numerator * x.denominator
    return (lhs > rhs) - (lhs < rhs)


def floor_mul(x: Fraction, n: int) -> int:
    """⌊x·n⌋，纯整数运算"""
    return (x.numerator * n) // x.denominator


def ceil_mul(x: Fraction, n: int) -> int:
    """⌈x·n⌉，纯整数运算"""
    return -((-x.numerator * n) // x.denominator)


def parse_rational(text: str, field: str = "value") -> Fraction:
    """解析 "p/q" 或整数文本；拒绝小数写法，避免隐式舍入"""
    raw = str(text).strip()
    if not raw:
        raise InvalidInputError("空的有理数文本", field=field)
    parts = raw.split("/")
    if len(parts) > 2:
        raise InvalidInputError(f"无法解析的有理数：{raw!r}", field=field)
    try:
        num = int(parts[0])
        den = int(parts[1]) if len(parts) == 2 else 1
    except ValueError as e:
        raise InvalidInputError(f"无法解析的有理数：{raw!r}", field=field, cause=e) from e
    if den == 0:
        raise InvalidInputError(f"分母不能为 0：{raw!r}", field=field)
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    """既约文本形式：整数输出裸 "p"，其余输出 "p/q" """
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
