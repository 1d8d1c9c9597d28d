import json
from fractions import Fraction
from pathlib import Path

import pytest

from app.exact import HalfOpenInterval
from app.exceptions import InvalidInputError, PreconditionError
from app.piercing import GrowthFn, verify_piercing
from app.search import (
    Instance,
    SearchBudget,
    SofDKind,
    Verdict,
    WitnessDocument,
    brute_force_feasible,
    elementary_intervals,
    extract_witness,
    feasible,
    load_checkpoint,
    s_of_d,
)
from app.search.engine import SearchEngine
from app.search.matching import cell_span, hall_ok
from app.search.parallel import node_shares

F = Fraction
UNLIMITED = SearchBudget()
S1_WITNESS = Path(__file__).resolve().parent.parent / "doc" / "witnesses" / "s1_order31.json"


def affine(N: int, d: int = 0) -> Instance:
    return Instance(N, GrowthFn.affine(d))


class TestInstance:
    def test_rejects_order_zero(self):
        with pytest.raises(InvalidInputError):
            affine(0)

    def test_table_too_short(self):
        with pytest.raises(InvalidInputError):
            Instance(3, GrowthFn.table([1, 2]))

    def test_points(self):
        inst = affine(5, 2)
        assert inst.points == 7
        assert inst.active(1) == 3


class TestWitness:
    def test_shared_ranges(self):
        half = HalfOpenInterval(F(0), F(1, 2))
        seq = extract_witness([half, half, HalfOpenInterval(F(1, 2), F(1))])
        assert list(seq) == [F(1, 6), F(1, 3), F(3, 4)]

    def test_empty_range(self):
        with pytest.raises(PreconditionError) as exc:
            extract_witness([HalfOpenInterval(F(0), F(1)), HalfOpenInterval(F(1, 2), F(1, 2))])
        assert exc.value.field == "ranges[1]"


class TestMatching:
    def test_cell_span(self):
        assert cell_span(3, 9, 3) == (1, 2)
        assert cell_span(0, 1, 3) == (0, 0)

    def test_hall(self):
        assert hall_ok([], [])
        assert hall_ok([0, 1, 2], [(0, 0), (0, 2), (2, 2)])
        assert not hall_ok([0, 1, 2], [(0, 1), (0, 1), (0, 1)])
        assert not hall_ok([0, 1], [(0, 0), (0, 0)])
        assert not hall_ok([0, 1], [(0, 1)])


class TestFeasible:
    def test_order_one(self):
        outcome = feasible(affine(1), UNLIMITED)
        assert outcome.verdict is Verdict.FEASIBLE
        assert list(outcome.witness) == [F(1, 2)]
        assert outcome.assignment.assign == {(1, 0): 0}

    def test_elementary_intervals(self):
        assert elementary_intervals(3) == [(F(0), F(1, 3)), (F(1, 3), F(1, 2)), (F(1, 2), F(2, 3)), (F(2, 3), F(1))]

    @pytest.mark.parametrize("d", [0, 1])
    @pytest.mark.parametrize("N", range(1, 7))
    def test_agrees_with_brute_force(self, N, d):
        inst = affine(N, d)
        oracle = brute_force_feasible(inst)
        outcome = feasible(inst, UNLIMITED)
        assert (oracle is not None) == (outcome.verdict is Verdict.FEASIBLE)
        if oracle is not None:
            assert verify_piercing(oracle, inst.f, N).ok

    @pytest.mark.parametrize("N", range(1, 9))
    def test_symmetry_breaking_keeps_verdict(self, N):
        on = feasible(affine(N), UNLIMITED, symmetry=True)
        off = feasible(affine(N), UNLIMITED, symmetry=False)
        assert on.verdict is off.verdict is Verdict.FEASIBLE

    def test_witness_is_witness_for_lower_orders(self):
        inst = affine(9)
        outcome = feasible(inst, UNLIMITED)
        for n in range(1, 10):
            assert verify_piercing(outcome.witness, inst.f, n).ok

    def test_ceil_growth(self):
        inst = Instance(6, GrowthFn.ceil_gamma(F(3, 2)))
        outcome = feasible(inst, UNLIMITED)
        assert outcome.verdict is Verdict.FEASIBLE
        assert len(outcome.witness) == 9

    def test_rejects_zero_threads(self):
        with pytest.raises(InvalidInputError):
            feasible(affine(3), UNLIMITED, threads=0)

    def test_witness_document(self):
        inst = affine(2)
        outcome = feasible(inst, UNLIMITED)
        doc = WitnessDocument.from_outcome(inst, outcome)
        assert doc.order == 2 and doc.f == "n+d:0"
        assert len(doc.assignment) == 3
        assert len(doc.ranges) == 2
        assert verify_piercing(doc.to_seq(), inst.f, 2).ok

    def test_witness_document_needs_feasible(self):
        inst = affine(10)
        outcome = feasible(inst, SearchBudget(max_nodes=5))
        with pytest.raises(InvalidInputError):
            WitnessDocument.from_outcome(inst, outcome)


class TestBudgetAndCheckpoint:
    def test_budget_exceeded(self):
        outcome = feasible(affine(10), SearchBudget(max_nodes=20))
        assert outcome.verdict is Verdict.BUDGET_EXCEEDED
        assert not outcome.decided
        assert outcome.witness is None
        assert outcome.stats.nodes == 20

    def test_resume_matches_fresh_run(self, tmp_path):
        path = tmp_path / "ckpt.json"
        inst = affine(10)
        first = feasible(inst, SearchBudget(max_nodes=20), checkpoint_path=str(path))
        assert first.verdict is Verdict.BUDGET_EXCEEDED

        raw = json.loads(path.read_text(encoding="utf-8"))
        assert raw["version"] == 1 and raw["mode"] == "sequential"
        assert raw["order"] == 10 and raw["stack"]

        resumed = feasible(inst, UNLIMITED, resume_path=str(path))
        fresh = feasible(inst, UNLIMITED)
        assert resumed.verdict is fresh.verdict is Verdict.FEASIBLE
        assert resumed.witness == fresh.witness
        assert resumed.stats.nodes == fresh.stats.nodes

    def test_resume_rejects_other_instance(self, tmp_path):
        path = tmp_path / "ckpt.json"
        feasible(affine(10), SearchBudget(max_nodes=20), checkpoint_path=str(path))
        with pytest.raises(InvalidInputError) as exc:
            feasible(affine(9), UNLIMITED, resume_path=str(path))
        assert exc.value.field == "checkpoint"
        with pytest.raises(InvalidInputError):
            feasible(affine(10), UNLIMITED, symmetry=False, resume_path=str(path))

    def test_load_errors(self, tmp_path):
        with pytest.raises(InvalidInputError) as exc:
            load_checkpoint(tmp_path / "missing.json")
        assert exc.value.field == "checkpoint"

        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        with pytest.raises(InvalidInputError):
            load_checkpoint(bad)

        future = tmp_path / "future.json"
        future.write_text(json.dumps({"version": 99, "order": 3}), encoding="utf-8")
        with pytest.raises(InvalidInputError) as exc:
            load_checkpoint(future)
        assert exc.value.field == "checkpoint.version"

    def test_parallel_matches_sequential(self):
        inst = affine(8)
        outcome = feasible(inst, UNLIMITED, threads=2, split_depth=2)
        assert outcome.verdict is Verdict.FEASIBLE
        assert verify_piercing(outcome.witness, inst.f, 8).ok

    def test_node_shares(self):
        assert node_shares(10, 3, [0, 1, 2]) == {0: 3, 1: 2, 2: 2}
        assert node_shares(10, 9, [0, 4, 5]) == {0: 1, 4: -1, 5: -1}
        assert node_shares(5, 8, [2]) == {2: -1}
        assert node_shares(0, 8, [1, 3]) == {1: 0, 3: 0}

    def test_parallel_node_budget_is_shared(self):
        inst = affine(12)
        splitter = SearchEngine(inst)
        splitter.frontier(2)
        outcome = feasible(inst, SearchBudget(max_nodes=60), threads=2, split_depth=2)
        assert outcome.stats.nodes <= max(60, splitter.stats.nodes)

    def test_parallel_deadline_is_shared(self):
        outcome = feasible(affine(18), SearchBudget(max_seconds=0.5), threads=2, split_depth=2)
        assert outcome.verdict is Verdict.BUDGET_EXCEEDED
        assert outcome.stats.elapsed_ms < 5000


class TestSOfD:
    def test_bounded_scan_from_zero(self):
        result = s_of_d(0, UNLIMITED, max_order=5)
        assert result.kind is SofDKind.LOWER_BOUND
        assert result.value == 5 and result.start == 1
        assert result.orders == dict.fromkeys(range(1, 6), "feasible")
        assert verify_piercing(result.witness, GrowthFn.affine(0), 5).ok

    def test_scan_starts_after_lower_bound(self):
        result = s_of_d(1, UNLIMITED, max_order=3)
        assert result.start == 3
        assert result.kind is SofDKind.LOWER_BOUND and result.value == 3
        assert list(result.orders) == [3]

    def test_lower_bound_alone_carries_witness(self):
        result = s_of_d(1, UNLIMITED, max_order=2)
        assert result.kind is SofDKind.LOWER_BOUND and result.value == 2
        assert result.orders == {}
        assert verify_piercing(result.witness, GrowthFn.affine(1), 2).ok

    def test_stalled_first_order_keeps_lower_bound_witness(self):
        result = s_of_d(20, SearchBudget(max_nodes=1), max_order=40)
        assert result.orders == {result.start: "budget_exceeded"}
        assert result.kind is SofDKind.LOWER_BOUND and result.value == result.start - 1
        assert verify_piercing(result.witness, GrowthFn.affine(20), result.value).ok

    def test_scan_without_lower_bound(self):
        result = s_of_d(1, UNLIMITED, max_order=2, use_lower_bound=False)
        assert result.start == 1
        assert list(result.orders) == [1, 2]

    def test_budget_stops_scan(self):
        result = s_of_d(0, SearchBudget(max_nodes=30), max_order=12)
        assert result.kind is SofDKind.LOWER_BOUND
        assert "budget_exceeded" in result.orders.values()
        assert result.value == max(n for n, v in result.orders.items() if v == "feasible")

    @pytest.mark.skipif(not S1_WITNESS.exists(), reason="先运行 scripts/reproduce_s1.py 生成见证")
    def test_s1_witness_of_order_31(self):
        doc = WitnessDocument.model_validate_json(S1_WITNESS.read_text(encoding="utf-8"))
        assert doc.order == 31 and doc.f == "n+d:1"
        assert doc.stats["nodes"] > 0 and doc.stats["elapsed_ms"] <= 2 * 3600 * 1000
        assert verify_piercing(doc.to_seq(), GrowthFn.affine(1), 31).ok

    @pytest.mark.slow
    def test_s0_is_17(self):
        result = s_of_d(0, UNLIMITED)
        assert result.kind is SofDKind.EXACT
        assert result.value == 17
        assert result.orders[17] == "feasible"
        assert result.orders[18] == "infeasible"
        assert verify_piercing(result.witness, GrowthFn.affine(0), 17).ok
