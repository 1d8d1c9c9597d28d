"""
显式序列构造

- dbe.py:            对数序列 frac(log₂ 奇数) 及其强穿刺所需前缀
- lower_bound.py:    s(d) ≥ ⌊c₁d⌋ 的见证序列
- van_der_corput.py: 精确的二进低差异序列，转换构造的测试输入
- transfer.py:       f-穿刺序列 → 强 g-穿刺序列
"""

from app.constructors.dbe import DbeVariant, dbe_needed_prefix, dbe_sequence, parse_variant
from app.constructors.lower_bound import LowerBoundResult, lower_bound_sequence
from app.constructors.transfer import (
    Block,
    TransferDocument,
    TransferPlan,
    TransferResult,
    assemble,
    default_N0,
    growth_gamma,
    transfer,
)
from app.constructors.van_der_corput import radical_inverse, van_der_corput

__all__ = [
    "Block",
    "DbeVariant",
    "LowerBoundResult",
    "TransferDocument",
    "TransferPlan",
    "TransferResult",
    "assemble",
    "dbe_needed_prefix",
    "dbe_sequence",
    "default_N0",
    "growth_gamma",
    "lower_bound_sequence",
    "parse_variant",
    "radical_inverse",
    "transfer",
    "van_der_corput",
]
