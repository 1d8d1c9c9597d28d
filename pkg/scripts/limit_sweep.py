"""
常数趋势扫描：随意策略的 kM_k 估计，以及 dBE 前缀比 m(n)/n

运行方式：
    poetry run python scripts/limit_sweep.py [--rounds 1000000]

窗口最大值在同长段逐个折断期间偏高，窗口均值更贴近闭式值。
"""

import argparse
import math
import sys
from pathlib import Path

# 确保项目根目录在 sys.path 中
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.bounds import CONSTANTS
from app.config import get_settings
from app.constructors import dbe_needed_prefix
from app.observability.logging_config import setup_logging
from app.stickbreak import SimulationConfig, run_nonchalant

RATIOS = {"sqrt2-1": math.sqrt(2) - 1, "1/pi": 1 / math.pi, "0.45": 0.45}


def main() -> int:
    parser = argparse.ArgumentParser(description="常数趋势扫描")
    parser.add_argument("--rounds", type=int, default=1_000_000)
    args = parser.parse_args()

    settings = get_settings()
    setup_logging(env=settings.ENV, level="WARNING")

    print("随意策略（末尾一半窗口内 kM_k 的最大值与均值）")
    config = SimulationConfig(stride=args.rounds, window_fraction=0.5)
    for name, r in RATIOS.items():
        stats = run_nonchalant(r, args.rounds, config)
        print(
            f"  r={name:<8} 最大 {stats.estimate:.5f}  均值 {stats.windowed_mean:.5f}  "
            f"闭式 {stats.predicted:.5f}  最大值误差 {stats.relative_error:.2%}  "
            f"均值误差 {abs(stats.windowed_mean - stats.predicted) / stats.predicted:.2%}"
        )

    print(f"dBE 前缀比 m(n)/n → 1/ln2 = {CONSTANTS.dbe:.5f}")
    for k in range(10, 15):
        n = 2**k
        m = dbe_needed_prefix(n)
        print(f"  n=2^{k:<2} m={m:<6} m/n={m / n:.5f}  偏差 {m / n - CONSTANTS.dbe:+.5f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
