"""
复现 s(1) ≥ 31：在 N = 31、d = 1 上找到可行见证

搜索很长，默认每 CHECKPOINT_INTERVAL_NODES 个节点写一次断点；
中断后带同样参数重跑即从断点继续。见证连同节点数与耗时写到
doc/witnesses/s1_order31.json，tests/test_search.py 会加载并复核它。
N = 32 的反驳不在本脚本范围内。

运行方式：
    poetry run python scripts/reproduce_s1.py --checkpoint s1.ckpt.json --max-seconds 7200
"""

import argparse
import sys
from pathlib import Path

# 确保项目根目录在 sys.path 中
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from dotenv import load_dotenv

load_dotenv(Path(__file__).resolve().parent.parent / "app" / ".env")

from app.config import get_settings
from app.observability.logging_config import setup_logging
from app.piercing import GrowthFn, verify_piercing
from app.search import Instance, SearchBudget, Verdict, WitnessDocument, feasible

ORDER = 31
D = 1
WITNESS_OUT = Path(__file__).resolve().parent.parent / "doc" / "witnesses" / "s1_order31.json"


def main() -> int:
    parser = argparse.ArgumentParser(description="复现 s(1) >= 31")
    parser.add_argument("--checkpoint", default="s1.ckpt.json")
    parser.add_argument("--max-seconds", type=float, default=7200.0)
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--witness-out", default=str(WITNESS_OUT))
    args = parser.parse_args()

    settings = get_settings()
    setup_logging(env=settings.ENV, level=settings.LOG_LEVEL)

    instance = Instance(ORDER, GrowthFn.affine(D))
    budget = SearchBudget(
        max_nodes=0,
        max_seconds=args.max_seconds,
        checkpoint_interval=settings.CHECKPOINT_INTERVAL_NODES,
    )
    resume = args.checkpoint if Path(args.checkpoint).exists() else None
    if resume:
        print(f"从断点继续: {resume}")

    outcome = feasible(
        instance,
        budget,
        threads=args.threads,
        checkpoint_path=args.checkpoint,
        resume_path=resume,
    )
    print(f"结论: {outcome.verdict.value}  节点 {outcome.stats.nodes}  耗时 {outcome.stats.elapsed_ms}ms")

    if outcome.verdict is Verdict.BUDGET_EXCEEDED:
        print(f"预算耗尽，断点保存在 {args.checkpoint}，重跑即可继续")
        return 2
    if outcome.verdict is Verdict.INFEASIBLE:
        print("N = 31 不可行，与已知结论矛盾")
        return 3

    report = verify_piercing(outcome.witness, instance.f, ORDER)
    doc = WitnessDocument.from_outcome(instance, outcome)
    Path(args.witness_out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.witness_out).write_text(doc.model_dump_json(indent=2), encoding="utf-8")
    print(f"见证复核: {report.status.value}，已写入 {args.witness_out}")
    return 0 if report.ok else 3


if __name__ == "__main__":
    sys.exit(main())
