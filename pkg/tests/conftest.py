"""
测试公共夹具
"""

import json
from pathlib import Path

import pytest
import structlog

from app.config import get_settings
from app.observability.logging_config import setup_logging
from app.piercing import PointSeq, SequenceDocument


@pytest.fixture(autouse=True)
def _fresh_settings():
    """每个用例重新读取配置"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def write_sequence(tmp_path: Path):
    """把 PointSeq 写成序列 JSON，返回路径字符串"""

    def _write(seq: PointSeq, name: str = "seq.json") -> str:
        path = tmp_path / name
        path.write_text(SequenceDocument.from_seq(seq).model_dump_json(), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def run_cli(capsys):
    """调用 main(argv)，返回 (退出码, 解析后的 stdout JSON)"""
    from app.main import main

    def _run(*argv: str) -> tuple[int, dict]:
        code = main(list(argv))
        out = capsys.readouterr().out
        return code, json.loads(out) if out.strip() else {}

    return _run


@pytest.fixture(autouse=True)
def _stderr_logging():
    """每个用例前后把 structlog 指向当前的 stderr，不让 logger 绑住已关闭的捕获流"""
    structlog.reset_defaults()
    setup_logging()
    yield
    structlog.reset_defaults()
    structlog.contextvars.clear_contextvars()
