"""
命令行主入口

stdout 只输出结果（JSON 信封或 CSV），日志统一写 stderr。
退出码：0 已判定 / 1 输入错误 / 2 预算耗尽 / 3 内部不变量被打破
"""

import sys

import structlog
from pydantic import ValidationError

from app.cli.commands import dispatch
from app.cli.parser import RunConfig, build_parser
from app.cli.response import CODE_INPUT_ERROR, CODE_INVARIANT, emit, fail
from app.config import Settings, get_settings
from app.exceptions import IndeterminateError, InvalidInputError, PiercingError
from app.observability.context import bind_run, get_run_id, get_seed
from app.observability.logging_config import setup_logging
from app.observability.metrics import RUN_INFO, dump_metrics

log = structlog.get_logger()

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_INVARIANT = 3


def _failure(e: PiercingError, code: int) -> dict:
    data = {"field": e.field} if e.field else None
    return fail(code, e.message, data)


def _load_settings() -> Settings:
    """配置校验失败转成输入错误，field 指向出错的变量"""
    try:
        return get_settings()
    except ValidationError as e:
        first = e.errors()[0]
        loc = ".".join(str(p) for p in first["loc"])
        field = f"settings.{loc}" if loc else "settings"
        raise InvalidInputError(f"配置无效：{first['msg']}", field=field) from e


def _write_metrics(path: str) -> None:
    seed = get_seed()
    RUN_INFO.info({"run_id": get_run_id(), "seed": "" if seed is None else str(seed)})
    dump_metrics(path)


def main(argv: list[str] | None = None) -> int:
    # 先按默认值接管 structlog，之后的任何日志都不会落到 stdout
    setup_logging()
    metrics_file = None
    try:
        settings = _load_settings()
        setup_logging(env=settings.ENV, level=settings.LOG_LEVEL)
        args = build_parser().parse_args(argv)
        metrics_file = args.metrics_file
        if args.log_level:
            setup_logging(env=settings.ENV, level=args.log_level)
        bind_run(args.seed)
        cfg = RunConfig.from_args(args)
        log.info("开始运行", command=cfg.command, app=settings.APP_NAME)
        body, exit_code = dispatch(cfg)
        if body:
            emit(body)
        return exit_code
    except (InvalidInputError, IndeterminateError) as e:
        log.warning("输入错误", error=e.message, field=e.field)
        emit(_failure(e, CODE_INPUT_ERROR))
        return EXIT_INPUT
    except PiercingError as e:
        log.error("内部不变量被打破", error=e.message, field=e.field)
        emit(_failure(e, CODE_INVARIANT))
        return EXIT_INVARIANT
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    finally:
        if metrics_file:
            _write_metrics(metrics_file)


if __name__ == "__main__":
    sys.exit(main())
