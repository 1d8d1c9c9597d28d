"""
Prometheus 指标定义

所有指标统一在此文件定义，业务代码按需引用。
CLI 通过 --metrics-file 把注册表写成 textfile 格式。
"""

from pathlib import Path

from prometheus_client import REGISTRY, Counter, Histogram, Info, write_to_textfile

# ── 运行 ──

RUN_INFO = Info(
    "piercing_run",
    "本次运行的 run_id 与种子",
)

# ── 搜索 ──

SEARCH_NODES_TOTAL = Counter(
    "piercing_search_nodes_total",
    "搜索展开的节点总数",
)

SEARCH_PRUNES_TOTAL = Counter(
    "piercing_search_prunes_total",
    "搜索剪枝次数",
    ["kind"],  # empty_range / hall / symmetry
)

SEARCH_VERDICT_TOTAL = Counter(
    "piercing_search_verdict_total",
    "搜索结论计数",
    ["verdict"],  # feasible / infeasible / budget_exceeded
)

SEARCH_DURATION = Histogram(
    "piercing_search_duration_seconds",
    "单次可行性判定耗时（秒）",
    buckets=[0.01, 0.1, 1, 10, 60, 600, 3600],
)

# ── 校验 ──

VERIFY_TOTAL = Counter(
    "piercing_verify_total",
    "序列校验次数",
    ["mode", "status"],  # mode: plain/strong；status: pass/fail/indeterminate
)

# ── 模拟 ──

STICK_ROUNDS_TOTAL = Counter(
    "piercing_stick_rounds_total",
    "折棍模拟推进的轮数",
)


def dump_metrics(path: str | Path) -> None:
    """把默认注册表写成 node-exporter textfile"""
    write_to_textfile(str(path), REGISTRY)
