"""
复现 s(0) = 17：N = 17 可行，N = 18 不可行

运行方式：
    poetry run python scripts/reproduce_s0.py [--threads 4] [--witness-out s0.json]
"""

import argparse
import sys
import time
from pathlib import Path

# 确保项目根目录在 sys.path 中
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from dotenv import load_dotenv

load_dotenv(Path(__file__).resolve().parent.parent / "app" / ".env")

from app.config import get_settings
from app.observability.logging_config import setup_logging
from app.piercing import GrowthFn, SequenceDocument, verify_piercing
from app.search import SearchBudget, SofDKind, s_of_d


def main() -> int:
    parser = argparse.ArgumentParser(description="复现 s(0) = 17")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--witness-out", default=None)
    args = parser.parse_args()

    settings = get_settings()
    setup_logging(env=settings.ENV, level=settings.LOG_LEVEL)

    start = time.monotonic()
    result = s_of_d(0, SearchBudget(), threads=args.threads)
    elapsed = time.monotonic() - start

    print(f"结论: {result.kind.value}  s(0) = {result.value}  耗时 {elapsed:.1f}s")
    for n, verdict in result.orders.items():
        print(f"  N={n:>3}  {verdict}")

    if result.kind is not SofDKind.EXACT or result.value != 17:
        print("未能复现 s(0) = 17")
        return 1
    report = verify_piercing(result.witness, GrowthFn.affine(0), 17)
    print(f"见证复核: {report.status.value}")
    if args.witness_out:
        doc = SequenceDocument.from_seq(result.witness)
        Path(args.witness_out).write_text(doc.model_dump_json(indent=2), encoding="utf-8")
        print(f"见证已写入 {args.witness_out}")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
