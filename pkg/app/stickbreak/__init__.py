"""
折棍游戏

- game.py:       段状态、策略、单步推进
- nonchalant.py: 漫不经心策略的长跑统计（kM_k 的 limsup 估计）
- points.py:     断开日志 → 圆周点序列
- recurrence.py: 有理比例下的代际计数 d_n 与主根 β
"""

from app.stickbreak.game import (
    NonchalantParams,
    NonchalantStrategy,
    RandomStrategy,
    Segment,
    StickState,
    Strategy,
    step,
)
from app.stickbreak.nonchalant import LimitStats, SimulationConfig, run_nonchalant
from app.stickbreak.points import circle_arcs, same_multiset, to_point_sequence
from app.stickbreak.recurrence import (
    RecurrenceReport,
    dominant_root,
    mean_length_ratio,
    predicted_limit_rational,
    rational_ratio,
    recurrence_check,
)

__all__ = [
    "LimitStats",
    "NonchalantParams",
    "NonchalantStrategy",
    "RandomStrategy",
    "RecurrenceReport",
    "Segment",
    "SimulationConfig",
    "StickState",
    "Strategy",
    "circle_arcs",
    "dominant_root",
    "mean_length_ratio",
    "predicted_limit_rational",
    "rational_ratio",
    "recurrence_check",
    "run_nonchalant",
    "same_multiset",
    "step",
    "to_point_sequence",
]
