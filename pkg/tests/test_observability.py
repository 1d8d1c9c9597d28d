import json
from fractions import Fraction

import structlog

from app.observability.context import bind_run, get_run_id, get_seed
from app.observability.logging_config import setup_logging
from app.observability.metrics import VERIFY_TOTAL, dump_metrics


def test_bind_run_sets_context():
    first = bind_run(5)
    assert get_run_id() == first
    assert get_seed() == 5
    second = bind_run()
    assert second != first
    assert get_seed() is None


def test_production_logs_are_json_on_stderr(capsys):
    setup_logging(env="production", level="INFO")
    run_id = bind_run(9)
    structlog.get_logger().info("校验完成", gap=Fraction(1, 3), nodes=4)
    captured = capsys.readouterr()
    assert captured.out == ""
    line = json.loads(captured.err.strip().splitlines()[-1])
    assert line["event"] == "校验完成"
    assert line["gap"] == "1/3"
    assert line["run_id"] == run_id and line["seed"] == 9
    assert line["level"] == "info"


def test_level_filter(capsys):
    setup_logging(env="production", level="WARNING")
    structlog.get_logger().info("不会输出")
    assert capsys.readouterr().err == ""
    setup_logging(env="production", level="bogus")
    structlog.get_logger().info("回落到 INFO")
    assert "回落到 INFO" in capsys.readouterr().err


def test_dump_metrics(tmp_path):
    VERIFY_TOTAL.labels(mode="plain", status="pass").inc()
    path = tmp_path / "m.prom"
    dump_metrics(path)
    assert 'piercing_verify_total{mode="plain",status="pass"}' in path.read_text(encoding="utf-8")
