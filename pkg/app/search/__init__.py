"""
N 阶 f-穿刺序列的存在性判定与 s(d) 扫描

- schemas.py:    Instance / SearchBudget / SearchStats / 结论与见证文档
- engine.py:     逐层指派的迭代 DFS（fail-first、Hall、对称性破缺）
- matching.py:   凸二部图匹配，用于 Hall 剪枝
- checkpoint.py: 断点文件
- parallel.py:   子树并行
- solver.py:     feasible 入口（复核见证、记录指标）
- witness.py:    证书 → 精确见证序列
- oracle.py:     基本区间穷举对照
- scan.py:       s_of_d
"""

from app.search.checkpoint import CheckpointDocument, load_checkpoint, save_checkpoint
from app.search.engine import SearchEngine, SearchState
from app.search.oracle import brute_force_feasible, elementary_intervals
from app.search.scan import s_of_d
from app.search.schemas import (
    CoverAssignment,
    Instance,
    SearchBudget,
    SearchOutcome,
    SearchStats,
    SofDKind,
    SofDResult,
    Verdict,
    WitnessDocument,
)
from app.search.solver import feasible
from app.search.witness import extract_witness

__all__ = [
    "CheckpointDocument",
    "CoverAssignment",
    "Instance",
    "SearchBudget",
    "SearchEngine",
    "SearchOutcome",
    "SearchState",
    "SearchStats",
    "SofDKind",
    "SofDResult",
    "Verdict",
    "WitnessDocument",
    "brute_force_feasible",
    "elementary_intervals",
    "extract_witness",
    "feasible",
    "load_checkpoint",
    "s_of_d",
    "save_checkpoint",
]
