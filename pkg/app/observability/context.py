"""
运行上下文：通过 contextvars 传播 run_id / seed，并同步绑定到 structlog
"""

import contextvars

import structlog
from uuid6 import uuid7

# ── 全局上下文变量 ──
run_id_var: contextvars.ContextVar[str] = contextvars.ContextVar("run_id", default="")
seed_var: contextvars.ContextVar[int | None] = contextvars.ContextVar("seed", default=None)


def _new_run_id() -> str:
    """生成新的 run_id（uuid7，按时间可排序）"""
    return str(uuid7())


def bind_run(seed: int | None = None) -> str:
    """开始一次运行：生成 run_id，写入 contextvars 并绑定到日志上下文"""
    run_id = _new_run_id()
    run_id_var.set(run_id)
    seed_var.set(seed)
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(run_id=run_id, seed=seed)
    return run_id


def get_run_id() -> str:
    return run_id_var.get()


def get_seed() -> int | None:
    return seed_var.get()
