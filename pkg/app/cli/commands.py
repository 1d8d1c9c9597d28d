"""
子命令实现

每个处理函数接收 RunConfig，返回 (信封, 退出码)。
异常统一在 main 中映射为失败信封与退出码。
"""

import csv
import io
import json
import random
import sys
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path

import mpmath
import structlog
from pydantic import BaseModel, ValidationError

from app.bounds import (
    CONSTANTS,
    audit_upper_bound,
    gamma_trend,
    predicted_limit,
    reference_constants,
)
from app.cli.parser import RunConfig
from app.cli.response import CODE_BUDGET_EXCEEDED, Envelope, ok
from app.config import get_settings
from app.constructors import (
    TransferDocument,
    dbe_needed_prefix,
    dbe_sequence,
    lower_bound_sequence,
    parse_variant,
    transfer,
    van_der_corput,
)
from app.exact import format_rational, parse_rational
from app.exceptions import InvalidInputError
from app.farey import (
    CoverParams,
    FareyWindow,
    ValidCover,
    classify_interval,
    enumerate_window,
    h_set,
    neighbors,
    valid_cover_of_point,
)
from app.piercing import (
    PointSeq,
    SequenceDocument,
    lemma23_witness,
    parse_growth_spec,
    strong_by_sampling,
    verify_piercing,
    verify_strong,
)
from app.piercing.schemas import GrowthFn, GrowthKind
from app.search import (
    CheckpointDocument,
    Instance,
    SofDKind,
    Verdict,
    WitnessDocument,
    feasible,
    s_of_d,
)
from app.stickbreak import (
    NonchalantStrategy,
    RandomStrategy,
    SimulationConfig,
    StickState,
    mean_length_ratio,
    predicted_limit_rational,
    rational_ratio,
    recurrence_check,
    run_nonchalant,
    step,
    to_point_sequence,
)

log = structlog.get_logger()

Result = tuple[dict, int]


# ── 文件读写 ──


def load_sequence(path: str) -> PointSeq:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InvalidInputError(f"无法读取序列文件：{path}", field="file", cause=e) from e
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"序列文件不是合法 JSON：{path}", field="file", cause=e) from e
    try:
        doc = SequenceDocument.model_validate(raw)
    except ValidationError as e:
        loc = ".".join(str(part) for part in e.errors()[0]["loc"])
        raise InvalidInputError(f"序列文件字段不合法：{loc}", field=loc or "file", cause=e) from e
    return doc.to_seq()


def write_document(path: str, doc: BaseModel) -> None:
    try:
        Path(path).write_text(doc.model_dump_json(indent=2), encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"无法写入文件：{path}", field="out", cause=e) from e


def _require(value, name: str):
    if value is None:
        raise InvalidInputError(f"缺少参数 --{name}", field=name)
    return value


def _point_text(x) -> str:
    return format_rational(x) if isinstance(x, Fraction) else repr(x)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ── verify ──


def cmd_verify(cfg: RunConfig) -> Result:
    a = cfg.args
    if a.mode == "lemma23":
        return _verify_lemma23(cfg)

    X = load_sequence(_require(a.file, "file"))
    f = parse_growth_spec(a.f)
    order = _require(a.order, "order")
    check = verify_piercing if a.mode == "plain" else verify_strong
    report = check(X, f, order, eps=a.eps)
    data = {
        "verdict": report.ok,
        "status": report.status.value,
        "mode": report.mode,
        "order": order,
        "f": f.describe(),
        "level": report.level,
        "cell": report.cell,
        "gap": None if report.gap is None else [_point_text(v) for v in report.gap],
    }
    if a.oracle:
        if a.mode != "strong" or not X.is_exact:
            raise InvalidInputError("采样对照只用于精确序列的 strong 模式", field="oracle")
        data["oracle"] = strong_by_sampling(X, f, order)
    return ok(data), 0


def _verify_lemma23(cfg: RunConfig) -> Result:
    a = cfg.args
    if a.file:
        X = load_sequence(a.file)
        N = _require(a.n_level, "n-level")
        w = lemma23_witness(X, N)
        return ok({"N": N, "n": w.n, "b_n": _point_text(w.b_n), "bound": _point_text(w.bound)}), 0

    trials = a.trials
    if trials < 1:
        raise InvalidInputError("没有 --file 时需要 --trials >= 1", field="trials")
    rng = random.Random(cfg.seed)
    worst = None
    for _ in range(trials):
        N = a.n_level or rng.randint(2, 50)
        X = PointSeq.exact(Fraction(rng.getrandbits(32), 2**32) for _ in range(2 * N))
        w = lemma23_witness(X, N)
        slack = w.b_n / w.bound
        if worst is None or slack < worst:
            worst = slack
    return ok({"trials": trials, "seed": cfg.seed, "failures": 0, "min_ratio": float(worst)}), 0


# ── search ──


def _instance_growth(a) -> GrowthFn:
    return parse_growth_spec(a.f) if a.f else GrowthFn.affine(a.d)


def cmd_search(cfg: RunConfig) -> Result:
    a = cfg.args
    budget = cfg.budget()
    symmetry = False if a.no_symmetry else None
    if a.order is None:
        return _search_scan(cfg)

    instance = Instance(a.order, _instance_growth(a))
    outcome = feasible(
        instance,
        budget=budget,
        threads=a.threads,
        symmetry=symmetry,
        split_depth=a.split_depth,
        checkpoint_path=a.checkpoint,
        resume_path=a.resume,
    )
    data = {
        "verdict": outcome.verdict.value,
        "order": instance.N,
        "f": instance.f.describe(),
        "stats": outcome.stats.to_dict(),
    }
    if outcome.verdict is Verdict.FEASIBLE:
        doc = WitnessDocument.from_outcome(instance, outcome)
        data["witness"] = doc.points
        if a.witness_out:
            write_document(a.witness_out, doc)
    if outcome.verdict is Verdict.BUDGET_EXCEEDED:
        return ok(data, message="budget exceeded", code=CODE_BUDGET_EXCEEDED), 2
    return ok(data), 0


def _search_scan(cfg: RunConfig) -> Result:
    a = cfg.args
    if a.f and parse_growth_spec(a.f).kind is not GrowthKind.AFFINE:
        raise InvalidInputError("扫描 s(d) 只支持 n+d 型增长函数", field="f")
    if a.checkpoint or a.resume:
        raise InvalidInputError("断点只用于单个阶数的搜索，请给出 --order", field="checkpoint")
    d = parse_growth_spec(a.f).d if a.f else a.d
    result = s_of_d(
        d,
        budget=cfg.budget(),
        threads=a.threads,
        symmetry=False if a.no_symmetry else None,
        max_order=a.max_order,
    )
    data = {
        "d": d,
        "kind": result.kind.value,
        "value": result.value,
        "start": result.start,
        "orders": {str(n): v for n, v in result.orders.items()},
        "stats": result.stats.to_dict(),
    }
    if result.witness is not None:
        data["witness"] = [format_rational(x) for x in result.witness.points]
        if a.witness_out:
            write_document(a.witness_out, SequenceDocument.from_seq(result.witness))
    undecided = Verdict.BUDGET_EXCEEDED.value in result.orders.values()
    if result.kind is SofDKind.BUDGET_EXCEEDED or undecided:
        return ok(data, message="budget exceeded", code=CODE_BUDGET_EXCEEDED), 2
    return ok(data), 0


# ── simulate ──


def _parse_ratio(text: str) -> tuple[int, int]:
    value = parse_rational(text, field="ratio")
    return value.numerator, value.denominator


def cmd_simulate(cfg: RunConfig) -> Result:
    a = cfg.args
    if a.strategy == "random":
        return _simulate_random(cfg)

    report = None
    if a.ratio:
        p, q = _parse_ratio(a.ratio)
        r = rational_ratio(p, q)
        report = recurrence_check(p, q, a.terms)
    else:
        r = _require(a.r, "r")

    base = SimulationConfig.from_settings()
    config = SimulationConfig(
        stride=base.stride if a.stride is None else a.stride,
        window_fraction=base.window_fraction if a.window_fraction is None else a.window_fraction,
    )

    rows: list[list] = []
    on_sample: Callable | None = None
    if a.csv or cfg.fmt == "csv":
        on_sample = lambda s: rows.append(list(s))  # noqa: E731
    stats = run_nonchalant(r, a.rounds, config, on_sample=on_sample)

    header = ["k", "M_k", "kM_k"]
    if a.csv:
        Path(a.csv).write_text(_csv_text(header, rows), encoding="utf-8")
    if a.points_out:
        state = StickState()
        strategy = NonchalantStrategy(r)
        for _ in range(a.rounds - 1):
            step(state, strategy)
        write_document(a.points_out, SequenceDocument.from_seq(to_point_sequence(state.break_log)))
    if cfg.fmt == "csv":
        sys.stdout.write(_csv_text(header, rows))
        return {}, 0

    data = stats.summary()
    data["strategy"] = "nonchalant"
    if report is not None:
        data["rational"] = {
            "p": report.p,
            "q": report.q,
            "beta": report.beta,
            "ratio_error": report.ratio_error,
            "identity_error": report.identity_error,
            "mean_length_ratio": mean_length_ratio(report.p, report.q),
            "predicted": predicted_limit_rational(report.p, report.q),
        }
    return ok(data), 0


def _simulate_random(cfg: RunConfig) -> Result:
    a = cfg.args
    state = StickState()
    strategy = RandomStrategy(cfg.seed)
    best = 0.0
    for _ in range(a.rounds - 1):
        step(state, strategy)
        best = max(best, state.round * state.max_length)
    state.check()
    if a.points_out:
        write_document(a.points_out, SequenceDocument.from_seq(to_point_sequence(state.break_log)))
    return ok(
        {
            "strategy": "random",
            "seed": cfg.seed,
            "rounds": state.round,
            "max_length": state.max_length,
            "kM_k": state.round * state.max_length,
            "max_kM_k": best,
            "total": state.total(),
        }
    ), 0


# ── construct ──


def _sequence_payload(seq: PointSeq) -> dict:
    return SequenceDocument.from_seq(seq).model_dump(mode="json")


def cmd_construct(cfg: RunConfig) -> Result:
    a = cfg.args
    if a.kind == "dbe":
        m = _require(a.m, "m")
        variant = parse_variant(a.variant)
        seq = dbe_sequence(m, variant)
        data = {"type": "dbe", "m": m, "variant": variant.value, "sequence": _sequence_payload(seq)}
    elif a.kind == "dbe-prefix":
        n = _require(a.n, "n")
        variant = parse_variant(a.variant)
        m = dbe_needed_prefix(n, variant)
        return ok({"type": "dbe-prefix", "n": n, "m": m, "ratio": m / n, "variant": variant.value}), 0
    elif a.kind == "lower-bound":
        result = lower_bound_sequence(_require(a.d, "d"), a.variant)
        seq = result.seq
        report = result.verify()
        data = {
            "type": "lower-bound",
            "d": result.d,
            "N": result.N,
            "prefix_length": result.prefix_length,
            "variant": result.variant.value,
            "verified": report.ok,
            "status": report.status.value,
            "sequence": _sequence_payload(seq),
        }
    elif a.kind == "vdc":
        m = _require(a.m, "m")
        seq = van_der_corput(m, parse_rational(a.theta, field="theta"))
        data = {"type": "vdc", "m": m, "theta": a.theta, "sequence": _sequence_payload(seq)}
    else:
        return _construct_transfer(cfg)

    if a.out:
        write_document(a.out, SequenceDocument.from_seq(seq))
    return ok(data), 0


def _construct_transfer(cfg: RunConfig) -> Result:
    a = cfg.args
    X = load_sequence(_require(a.file, "file"))
    f = parse_growth_spec(_require(a.f, "f"))
    N = _require(a.order, "order")
    W = _require(a.W, "W")
    result = transfer(X, f, N, W, N0=a.N0)
    report = verify_strong(result.Z, result.growth, N)
    doc = result.to_document()
    if a.out:
        write_document(a.out, SequenceDocument.from_seq(result.Z))
    if a.provenance_out:
        write_document(a.provenance_out, doc)
    return ok(
        {
            "type": "transfer",
            "order": N,
            "W": W,
            "N0": result.plan.N0,
            "l": result.plan.l,
            "length": len(result.Z),
            "guaranteed": list(result.guaranteed),
            "verified": report.ok,
            "status": report.status.value,
        }
    ), 0


# ── farey ──


def cmd_farey(cfg: RunConfig) -> Result:
    a = cfg.args
    if a.action == "window":
        pts = enumerate_window(FareyWindow(a.n, a.m))
        return ok({"n": a.n, "m": a.m, "count": len(pts), "points": [str(p) for p in pts]}), 0
    if a.action == "neighbors":
        prev, nxt = neighbors(parse_rational(a.point, field="point"), FareyWindow(a.n, a.m))
        return ok(
            {
                "point": a.point,
                "prev": None if prev is None else str(prev),
                "next": None if nxt is None else str(nxt),
            }
        ), 0
    if a.action == "hset":
        values = h_set(a.r, a.W)
        return ok({"r": a.r, "W": a.W, "count": len(values), "points": [format_rational(v) for v in values]}), 0

    params = CoverParams(a.W)
    if a.action == "cover":
        found = valid_cover_of_point(parse_rational(a.point, field="point"), params, a.N, p=a.p)
        if isinstance(found, ValidCover):
            return ok(
                {
                    "kind": "valid_cover",
                    "c": found.c,
                    "r": found.r,
                    "value": format_rational(found.value),
                    "rule": found.rule.value,
                    "low_order": None if found.low_order is None else format_rational(found.low_order),
                    "chain": [list(link) for link in found.chain],
                }
            ), 0
        return ok(
            {
                "kind": "low_order_exception",
                "point": format_rational(found.point),
                "distance": format_rational(found.distance),
            }
        ), 0

    y = parse_rational(a.y, field="y")
    verdict = classify_interval(y, params, a.N)
    return ok(
        {
            "kind": verdict.kind.value,
            "interval": None if verdict.interval is None else [
                format_rational(verdict.interval.lo),
                format_rational(verdict.interval.hi),
            ],
            "denominator": verdict.denominator,
            "point": None if verdict.point is None else format_rational(verdict.point),
            "within_lemma_threshold": verdict.within_lemma_threshold,
            "within_proof_threshold": verdict.within_proof_threshold,
            "checked": verdict.check(y, params, a.N),
        }
    ), 0


# ── bounds ──


def cmd_bounds(cfg: RunConfig) -> Result:
    a = cfg.args
    if a.action == "audit":
        return ok(audit_upper_bound(a.d, a.W, a.c).summary()), 0
    if a.action == "limit":
        return ok({"r": a.r, "predicted": predicted_limit(a.r)}), 0
    if a.action == "constants":
        ref = reference_constants()
        return ok(
            {
                "c1": CONSTANTS.c1,
                "c2": CONSTANTS.c2,
                "dbe": CONSTANTS.dbe,
                "reference": {k: mpmath.nstr(v, 30) for k, v in ref.items()},
            }
        ), 0

    rows = gamma_trend(a.n_max)
    if cfg.fmt == "csv":
        sys.stdout.write(
            _csv_text(
                ["N", "gamma", "diff"],
                [[row.N, repr(row.gamma), repr(row.diff)] for row in rows],
            )
        )
        return {}, 0
    return ok(
        {
            "n_max": a.n_max,
            "rows": [
                {
                    "N": row.N,
                    "gamma": row.gamma,
                    "diff": row.diff,
                    "gamma_exact": None if row.gamma_exact is None else format_rational(row.gamma_exact),
                }
                for row in rows
            ],
        }
    ), 0


# ── schema ──

SCHEMAS: dict[str, type[BaseModel]] = {
    "sequence": SequenceDocument,
    "witness": WitnessDocument,
    "checkpoint": CheckpointDocument,
    "envelope": Envelope[dict],
    "provenance": TransferDocument,
}


def cmd_schema(cfg: RunConfig) -> Result:
    return ok(SCHEMAS[cfg.args.name].model_json_schema()), 0


HANDLERS: dict[str, Callable[[RunConfig], Result]] = {
    "verify": cmd_verify,
    "search": cmd_search,
    "simulate": cmd_simulate,
    "construct": cmd_construct,
    "farey": cmd_farey,
    "bounds": cmd_bounds,
    "schema": cmd_schema,
}


def dispatch(cfg: RunConfig) -> Result:
    log.debug("执行子命令", command=cfg.command, env=get_settings().ENV)
    return HANDLERS[cfg.command](cfg)
