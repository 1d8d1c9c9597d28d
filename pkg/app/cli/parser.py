"""
命令行参数定义
"""

import argparse
from dataclasses import dataclass

from app.exceptions import InvalidInputError
from app.search.schemas import SearchBudget

DEFAULT_SEED = 0


class ArgumentParser(argparse.ArgumentParser):
    """用法错误抛 InvalidInputError，由 main 统一输出信封、退出码 1"""

    def error(self, message: str):
        raise InvalidInputError(f"{self.prog}: {message}", field="argv")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="随机模式使用的 64 位种子")
    parser.add_argument("--format", choices=["json", "csv"], default="json", dest="fmt")
    parser.add_argument("--metrics-file", default=None, help="退出时写出 Prometheus textfile")
    parser.add_argument("--log-level", default=None)


def _budget(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-nodes", type=int, default=None)
    parser.add_argument("--max-seconds", type=float, default=None)
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--split-depth", type=int, default=None)
    parser.add_argument("--checkpoint", default=None, help="断点文件路径（定期写入）")
    parser.add_argument("--checkpoint-interval", type=int, default=None)
    parser.add_argument("--resume", default=None, help="从断点文件恢复")
    parser.add_argument("--no-symmetry", action="store_true", help="关闭对称性破缺")


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(
        prog="piercing",
        description="Steinhaus 穿刺序列：校验、搜索、构造、折棍模拟与常数审计",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    # ── verify ──
    p = sub.add_parser("verify", help="校验序列文件的穿刺性")
    p.add_argument("--file", default=None, help="序列或见证 JSON")
    p.add_argument("--f", default="n+d:0", help='增长函数，如 "n+d:1"、"ceil:1.5"、"table:g.json"')
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--mode", choices=["plain", "strong", "lemma23"], default="plain")
    p.add_argument("--oracle", action="store_true", help="strong 模式额外运行采样对照")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--n-level", type=int, default=None, help="lemma23 的 N")
    p.add_argument("--trials", type=int, default=0, help="lemma23 随机序列个数（不给 --file 时）")
    _common(p)

    # ── search ──
    p = sub.add_parser("search", help="判定 N 阶 f-穿刺序列是否存在；不给 --order 时扫描 s(d)")
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--f", default=None, help="覆盖 --d 的增长函数")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--max-order", type=int, default=None, help="扫描 s(d) 时的最高阶")
    p.add_argument("--witness-out", default=None)
    _budget(p)
    _common(p)

    # ── simulate ──
    p = sub.add_parser("simulate", help="折棍游戏模拟")
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--rounds", type=int, default=1_000_000)
    p.add_argument("--strategy", choices=["nonchalant", "random"], default="nonchalant")
    p.add_argument("--stride", type=int, default=None)
    p.add_argument("--window-fraction", type=float, default=None)
    p.add_argument("--ratio", default=None, help="有理比例 p/q：报告代际递推与修正极限")
    p.add_argument("--terms", type=int, default=200)
    p.add_argument("--csv", default=None, help="采样流写入 CSV 文件")
    p.add_argument("--points-out", default=None, help="把断点序列写成序列 JSON")
    _common(p)

    # ── construct ──
    p = sub.add_parser("construct", help="显式构造序列")
    p.add_argument(
        "--type",
        choices=["dbe", "dbe-prefix", "lower-bound", "transfer", "vdc"],
        required=True,
        dest="kind",
    )
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--variant", default=None)
    p.add_argument("--theta", default="0", help="vdc 的有理旋转")
    p.add_argument("--file", default=None, help="transfer 的输入序列")
    p.add_argument("--f", default=None)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--W", type=int, default=None, dest="W")
    p.add_argument("--N0", type=int, default=None, dest="N0")
    p.add_argument("--out", default=None)
    p.add_argument("--provenance-out", default=None)
    _common(p)

    # ── farey ──
    p = sub.add_parser("farey", help="Farey 窗口与有效覆盖")
    fsub = p.add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    q = fsub.add_parser("window", help="枚举 FP_n^m")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    _common(q)
    q = fsub.add_parser("neighbors", help="窗口中的前驱与后继")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--point", required=True)
    _common(q)
    q = fsub.add_parser("cover", help="窗口点 a/p 的有效覆盖")
    q.add_argument("--W", type=int, required=True, dest="W")
    q.add_argument("--N", type=int, required=True, dest="N")
    q.add_argument("--point", required=True)
    q.add_argument("--p", type=int, default=None, help="a/p 的分母（未约分）")
    _common(q)
    q = fsub.add_parser("classify", help="[y, y+1/N) 的二分法分类")
    q.add_argument("--W", type=int, required=True, dest="W")
    q.add_argument("--N", type=int, required=True, dest="N")
    q.add_argument("--y", required=True)
    _common(q)
    q = fsub.add_parser("hset", help="H_r^W")
    q.add_argument("--W", type=int, required=True, dest="W")
    q.add_argument("--r", type=int, required=True)
    _common(q)

    # ── bounds ──
    p = sub.add_parser("bounds", help="常数、极限与证明链审计")
    bsub = p.add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    q = bsub.add_parser("audit")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--W", type=int, required=True, dest="W")
    q.add_argument("--c", type=float, default=None)
    _common(q)
    q = bsub.add_parser("trend")
    q.add_argument("--n-max", type=int, required=True)
    _common(q)
    q = bsub.add_parser("constants")
    _common(q)
    q = bsub.add_parser("limit")
    q.add_argument("--r", type=float, required=True)
    _common(q)

    # ── schema ──
    p = sub.add_parser("schema", help="打印输出文档的 JSON Schema")
    p.add_argument(
        "--name",
        choices=["sequence", "witness", "checkpoint", "envelope", "provenance"],
        required=True,
    )
    _common(p)
    return parser


@dataclass(frozen=True)
class RunConfig:
    """一次运行的全部输入；相同的 RunConfig 产生相同的输出（计时字段除外）"""

    command: str
    seed: int
    fmt: str
    args: argparse.Namespace

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(command=args.command, seed=args.seed, fmt=args.fmt, args=args)

    def budget(self) -> SearchBudget:
        """设置默认值叠加命令行覆盖"""
        base = SearchBudget.from_settings()
        a = self.args
        return SearchBudget(
            max_nodes=base.max_nodes if a.max_nodes is None else a.max_nodes,
            max_seconds=base.max_seconds if a.max_seconds is None else a.max_seconds,
            checkpoint_interval=(
                base.checkpoint_interval if a.checkpoint_interval is None else a.checkpoint_interval
            ),
        )
