"""
增长函数求值与文本语法

语法：
- "n+d:<int>"             f(n) = n + d
- "ceil:<decimal|p/q>"    f(n) = ⌈γn⌉
- "table:<path>"          文件内容为 JSON 整数数组，或逗号 / 空白分隔的整数
"""

import json
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from app.exact import ceil_mul, parse_rational
from app.exceptions import InvalidInputError
from app.piercing.schemas import GrowthFn, GrowthKind


def f_eval(f: GrowthFn, n: int) -> int:
    if n < 1:
        raise InvalidInputError(f"n 必须 >= 1，收到 {n}", field="n")
    if f.kind is GrowthKind.AFFINE:
        return n + f.d
    if f.kind is GrowthKind.CEIL:
        return ceil_mul(f.gamma, n)
    if n > len(f.values):
        raise InvalidInputError(f"n={n} 超出表格定义域 {len(f.values)}", field="n")
    return f.values[n - 1]


def parse_growth_spec(text: str) -> GrowthFn:
    raw = text.strip()
    kind, sep, arg = raw.partition(":")
    if not sep or not arg.strip():
        raise InvalidInputError(f"无法解析的增长函数：{raw!r}", field="f")
    kind, arg = kind.strip(), arg.strip()

    if kind == "n+d":
        try:
            return GrowthFn.affine(int(arg))
        except ValueError as e:
            raise InvalidInputError(f"d 必须是整数：{arg!r}", field="f", cause=e) from e

    if kind == "ceil":
        if "/" in arg:
            gamma = parse_rational(arg, field="f")
        else:
            try:
                gamma = Fraction(Decimal(arg))
            except InvalidOperation as e:
                raise InvalidInputError(f"γ 无法解析：{arg!r}", field="f", cause=e) from e
        return GrowthFn.ceil_gamma(gamma)

    if kind == "table":
        return GrowthFn.table(_read_table(Path(arg)))

    raise InvalidInputError(f"未知的增长函数类型：{kind!r}", field="f")


def _read_table(path: Path) -> list[int]:
    try:
        content = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"无法读取表格文件：{path}", field="f", cause=e) from e
    content = content.strip()
    try:
        if content.startswith("["):
            values = json.loads(content)
        else:
            values = [int(tok) for tok in content.replace(",", " ").split()]
        return [int(v) for v in values]
    except (ValueError, TypeError) as e:
        raise InvalidInputError(f"表格文件内容不是整数序列：{path}", field="f", cause=e) from e
