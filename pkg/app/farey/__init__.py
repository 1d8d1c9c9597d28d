"""
Farey 点与有效覆盖

- window.py: FP_n^m 窗口、枚举、成员判定、前驱后继
- cover.py:  有效覆盖（中位移动 + 边界链）与区间二分法分类
- hset.py:   变换构造用的 H_r^W 补丁集合
"""

from app.farey.cover import (
    CoverKind,
    CoverParams,
    CoverRule,
    CoverVerdict,
    LowOrderException,
    ValidCover,
    classify_interval,
    valid_cover_of_point,
)
from app.farey.hset import h_set
from app.farey.window import (
    FareyPoint,
    FareyWindow,
    enumerate_window,
    in_window,
    low_order_points,
    neighbors,
)

__all__ = [
    "CoverKind",
    "CoverParams",
    "CoverRule",
    "CoverVerdict",
    "FareyPoint",
    "FareyWindow",
    "LowOrderException",
    "ValidCover",
    "classify_interval",
    "enumerate_window",
    "h_set",
    "in_window",
    "low_order_points",
    "neighbors",
    "valid_cover_of_point",
]
