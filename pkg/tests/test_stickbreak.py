import math

import pytest

from app.exceptions import InvalidInputError
from app.stickbreak import (
    NonchalantParams,
    NonchalantStrategy,
    RandomStrategy,
    SimulationConfig,
    StickState,
    circle_arcs,
    dominant_root,
    mean_length_ratio,
    predicted_limit_rational,
    rational_ratio,
    recurrence_check,
    run_nonchalant,
    same_multiset,
    step,
    to_point_sequence,
)
from app.stickbreak.recurrence import generation_counts


def play(strategy, rounds: int, track_exponents: bool = False) -> StickState:
    state = StickState(track_exponents=track_exponents)
    for _ in range(rounds):
        step(state, strategy)
    return state


class TestGame:
    def test_nonchalant_steps(self):
        state = StickState()
        strategy = NonchalantStrategy(0.3)
        step(state, strategy)
        assert sorted(state.lengths()) == pytest.approx([0.3, 0.7])
        assert state.max_length == pytest.approx(0.7)
        step(state, strategy)
        assert sorted(state.lengths()) == pytest.approx([0.21, 0.3, 0.49])
        assert state.max_length == pytest.approx(0.49)
        assert state.round == 3

    def test_lengths_follow_exponents(self):
        r = 0.3
        state = play(NonchalantStrategy(r), 20, track_exponents=True)
        for seg in state.segments.values():
            a, b = seg.exps
            assert a + b <= 20
            assert seg.length == pytest.approx(r**a * (1 - r) ** b, rel=1e-9)

    @pytest.mark.parametrize("r", [0.1, 0.3, 0.45])
    def test_k_times_max_is_bounded(self, r):
        state = StickState()
        strategy = NonchalantStrategy(r)
        for _ in range(500):
            k = state.round
            assert 1 - 1e-9 <= k * state.max_length <= 1 / r + 1e-9
            step(state, strategy)
            state.check()

    @pytest.mark.parametrize("r", [0.0, 0.5, 0.7, -0.1])
    def test_params_range(self, r):
        with pytest.raises(InvalidInputError):
            NonchalantParams(r)

    def test_split_errors(self):
        state = StickState()
        with pytest.raises(InvalidInputError):
            state.split(0, 1.0)
        state.split(0, 0.5)
        with pytest.raises(InvalidInputError):
            state.split(0, 0.5)

    def test_random_strategy_is_reproducible(self):
        a = play(RandomStrategy(42), 200)
        b = play(RandomStrategy(42), 200)
        assert a.break_log == b.break_log
        assert a.round == 201
        a.check()


class TestPoints:
    def test_nonchalant_arcs(self):
        state = play(NonchalantStrategy(0.3), 2)
        X = to_point_sequence(state.break_log)
        assert len(X) == 3
        assert X[0] == 0.0
        assert circle_arcs(X) == pytest.approx([0.21, 0.3, 0.49])
        assert same_multiset(circle_arcs(X), state.lengths())

    def test_arcs_match_segments_for_random_play(self):
        for seed in range(1000):
            state = play(RandomStrategy(seed), 20)
            X = to_point_sequence(state.break_log)
            assert len(X) == state.round
            assert same_multiset(circle_arcs(X), state.lengths())

    def test_unknown_segment_in_log(self):
        with pytest.raises(InvalidInputError):
            to_point_sequence([(0, 0.5), (0, 0.5)])

    def test_empty(self):
        assert circle_arcs(to_point_sequence([])) == [1.0]


class TestRunNonchalant:
    def test_summary_fields(self):
        seen = []
        stats = run_nonchalant(0.3, 5000, SimulationConfig(stride=1000, window_fraction=0.5), seen.append)
        assert stats.predicted == pytest.approx(1.637, abs=1e-3)
        assert stats.window_start == 2501
        assert 1.0 <= stats.windowed_mean <= stats.estimate <= 1 / 0.3
        assert stats.final_sum == pytest.approx(1.0)
        assert [s[0] for s in stats.samples] == [1, 1000, 2000, 3000, 4000, 5000]
        assert stats.samples[0] == (1, 1.0, 1.0)
        assert seen == stats.samples
        assert set(stats.summary()) >= {"estimate", "predicted", "relative_error"}

    def test_rational_case_matches_generation_count(self):
        r = rational_ratio(1, 2)
        stats = run_nonchalant(r, 20_000, SimulationConfig(stride=5000, window_fraction=0.5))
        expected = predicted_limit_rational(1, 2)
        assert abs(stats.estimate - expected) / expected < 0.01
        assert stats.estimate > stats.predicted

    def test_agrees_with_segment_simulator(self):
        r, rounds = 0.35, 300
        state = StickState()
        strategy = NonchalantStrategy(r)
        best = 0.0
        for _ in range(rounds):
            k = state.round
            if k > rounds // 2:
                best = max(best, k * state.max_length)
            step(state, strategy)
        stats = run_nonchalant(r, rounds, SimulationConfig(stride=100, window_fraction=0.5))
        assert stats.estimate == pytest.approx(best, rel=1e-9)

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidInputError):
            run_nonchalant(0.3, 0)
        with pytest.raises(InvalidInputError):
            run_nonchalant(0.6, 10)

    @pytest.mark.slow
    @pytest.mark.parametrize(
        ("r", "mean_tol", "max_ratio"),
        [
            (math.sqrt(2) - 1, 0.005, 1.10),
            (1 / math.pi, 0.01, 1.25),
        ],
    )
    def test_long_run_near_closed_form(self, r, mean_tol, max_ratio):
        # 窗口均值贴近闭式值；最大值在同长段逐个折断期间偏高
        stats = run_nonchalant(r, 1_000_000, SimulationConfig(stride=100_000, window_fraction=0.5))
        assert stats.windowed_mean == pytest.approx(stats.predicted, rel=mean_tol)
        assert stats.predicted < stats.windowed_max < max_ratio * stats.predicted

    @pytest.mark.slow
    def test_long_rational_run(self):
        stats = run_nonchalant(rational_ratio(2, 3), 1_000_000, SimulationConfig(stride=100_000, window_fraction=0.5))
        expected = predicted_limit_rational(2, 3)
        assert abs(stats.estimate - expected) / expected < 0.005


class TestRecurrence:
    def test_counts(self):
        assert generation_counts(1, 2, 6) == [1, 1, 2, 3, 5, 8, 13]
        assert generation_counts(2, 3, 8) == [1, 0, 1, 1, 1, 2, 2, 3, 4]

    def test_golden_root(self):
        report = recurrence_check(1, 2, 60)
        assert report.beta == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-12)
        assert report.r == pytest.approx(report.beta**2)
        assert report.identity_error < 1e-12

    def test_convergence_2_3(self):
        report = recurrence_check(2, 3, 500)
        assert report.ratio_error < 1e-6
        assert report.beta**2 + report.beta**3 == pytest.approx(1.0, abs=1e-12)

    def test_ratio_reproduces_log_ratio(self):
        for p, q in [(1, 2), (2, 3), (3, 7)]:
            r = rational_ratio(p, q)
            assert math.log1p(-r) / math.log(r) == pytest.approx(p / q, rel=1e-10)
            assert mean_length_ratio(p, q) * predicted_limit_rational(p, q) == pytest.approx(1.0)

    @pytest.mark.parametrize("p,q", [(2, 2), (3, 2), (2, 4), (0, 3)])
    def test_rejects(self, p, q):
        with pytest.raises(InvalidInputError):
            recurrence_check(p, q, 10)

    def test_rejects_terms(self):
        with pytest.raises(InvalidInputError):
            recurrence_check(1, 2, 0)

    def test_dominant_root_bracket(self):
        beta = dominant_root(3, 5)
        assert 0 < beta < 1
        assert beta**3 + beta**5 == pytest.approx(1.0, abs=1e-12)
