"""
全局配置模块：通过 pydantic-settings 读取 .env 环境变量
"""

from functools import lru_cache
from pathlib import Path

from pydantic import model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """应用全局配置，从 .env 文件加载"""

    model_config = SettingsConfigDict(
        env_file=Path(__file__).parent / ".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # ── 可行性搜索 ──
    SEARCH_MAX_NODES: int = 50_000_000  # 节点预算，0 表示不限
    SEARCH_MAX_SECONDS: float = 0.0     # 墙钟预算（秒），0 表示不限
    SEARCH_THREADS: int = 1             # 并行 worker 数
    SEARCH_SPLIT_DEPTH: int = 3         # 并行切分子树时展开的决策深度
    SEARCH_SYMMETRY_BREAKING: bool = True
    CHECKPOINT_INTERVAL_NODES: int = 1_000_000  # 每隔多少节点写一次 checkpoint

    # ── 校验 ──
    FLOAT_GUARD_EPS: float = 1e-12  # 浮点模式下的边界保护带

    # ── 折棍模拟 ──
    SIMULATE_STRIDE: int = 1000            # CSV 采样步长
    SIMULATE_WINDOW_FRACTION: float = 0.5  # limsup 估计窗口（末尾占比）

    # ── 构造 ──
    DBE_DEFAULT_VARIANT: str = "odd_from_three"  # odd_from_one | odd_from_three

    # ── 应用 ──
    ENV: str = "development"  # development | production
    LOG_LEVEL: str = "INFO"
    APP_NAME: str = "steinhaus-piercing"

    @model_validator(mode="after")
    def _check_ranges(self) -> "Settings":
        """拒绝明显不合理的配置组合"""
        if self.SEARCH_THREADS < 1:
            raise ValueError("SEARCH_THREADS 必须 >= 1")
        if not 0.0 < self.SIMULATE_WINDOW_FRACTION <= 1.0:
            raise ValueError("SIMULATE_WINDOW_FRACTION 必须落在 (0, 1]")
        if not 0.0 < self.FLOAT_GUARD_EPS <= 1e-6:
            raise ValueError("FLOAT_GUARD_EPS 必须落在 (0, 1e-6]")
        if self.DBE_DEFAULT_VARIANT not in ("odd_from_one", "odd_from_three"):
            raise ValueError("DBE_DEFAULT_VARIANT 只能是 odd_from_one / odd_from_three")
        return self


@lru_cache
def get_settings() -> Settings:
    """单例获取配置（带缓存）"""
    return Settings()
