"""
结构化日志配置：structlog + contextvars 自动注入 run_id / seed
- 开发环境：彩色文本输出（stderr 是终端时）
- 生产环境：JSON 输出

日志统一写 stderr，stdout 留给 JSON / CSV 结果。
"""

import logging
import sys
from fractions import Fraction

import structlog

from app.exact import format_rational


def _render_rationals(_logger, _method: str, event_dict: dict) -> dict:
    """Fraction 值渲染成 "p/q"，与序列 JSON 的写法一致"""
    for key, value in event_dict.items():
        if isinstance(value, Fraction):
            event_dict[key] = format_rational(value)
    return event_dict


def setup_logging(env: str = "development", level: str = "INFO") -> None:
    log_level = logging.getLevelName(level.upper())
    if not isinstance(log_level, int):
        log_level = logging.INFO

    processors: list = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        _render_rationals,
        structlog.processors.StackInfoRenderer(),
    ]
    if env == "production":
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()))

    # 每次 main() 都重新配置，缓存的 logger 会绑住旧的 stderr
    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=log_level, force=True)
