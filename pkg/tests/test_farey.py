from fractions import Fraction

import pytest

from app.exceptions import InvalidInputError, PreconditionError
from app.farey import (
    CoverKind,
    CoverParams,
    CoverRule,
    FareyWindow,
    LowOrderException,
    ValidCover,
    classify_interval,
    enumerate_window,
    h_set,
    in_window,
    low_order_points,
    neighbors,
    valid_cover_of_point,
)
from app.farey.cover import high_chain, is_valid_cover


def F(text: str) -> Fraction:
    return Fraction(text)


def values(points) -> list[Fraction]:
    return [p.value for p in points]


class TestWindow:
    def test_fp_1_4(self):
        assert values(enumerate_window(FareyWindow(1, 4))) == [
            F("0"), F("1/4"), F("1/3"), F("1/2"), F("2/3"), F("3/4"), F("1")
        ]

    def test_small_windows(self):
        assert values(enumerate_window(FareyWindow(1, 1))) == [F("0"), F("1")]
        assert values(enumerate_window(FareyWindow(2, 3))) == [F("0"), F("1/3"), F("1/2"), F("2/3"), F("1")]

    def test_matches_brute_force(self):
        for m in range(1, 31):
            for n in range(1, m + 1, 3):
                w = FareyWindow(n, m)
                expected = sorted({Fraction(a, p) for p in range(n, m + 1) for a in range(p + 1)})
                got = values(enumerate_window(w))
                assert got == expected
                assert all(in_window(v, w) for v in got)

    def test_invalid_window(self):
        with pytest.raises(InvalidInputError):
            FareyWindow(5, 4)
        with pytest.raises(InvalidInputError):
            FareyWindow(0, 3)

    @pytest.mark.parametrize(
        "point,window,prev,nxt",
        [
            ("1/2", (1, 4), "1/3", "2/3"),
            ("2/5", (1, 5), "1/3", "1/2"),
            ("1/2", (3, 5), "2/5", "3/5"),
        ],
    )
    def test_neighbors(self, point, window, prev, nxt):
        p, n = neighbors(F(point), FareyWindow(*window))
        assert p.value == F(prev)
        assert n.value == F(nxt)

    def test_neighbors_at_ends(self):
        p, n = neighbors(F("0"), FareyWindow(1, 4))
        assert p is None and n.value == F("1/4")
        p, n = neighbors(F("1"), FareyWindow(1, 4))
        assert p.value == F("3/4") and n is None

    def test_neighbors_outside_window(self):
        with pytest.raises(InvalidInputError):
            neighbors(F("1/7"), FareyWindow(1, 4))

    @pytest.mark.parametrize("W", range(2, 41))
    def test_consecutive_low_order_points(self, W):
        pts = low_order_points(W)
        for a, b in zip(pts, pts[1:]):
            assert b.numerator * a.denominator - a.numerator * b.denominator == 1
            assert a.denominator + b.denominator >= W


class TestCoverParams:
    def test_constants(self):
        params = CoverParams(5)
        assert params.alpha == F("3/2")
        assert params.beta == F("5/4")
        assert params.N0 == 250
        assert params.alpha > params.beta > 1

    def test_window(self):
        w = CoverParams(2).window(17)
        assert (w.n, w.m) == (34, 51)
        w = CoverParams(5).window(300)
        assert (w.n, w.m) == (375, 450)

    def test_order_precondition(self):
        with pytest.raises(PreconditionError):
            CoverParams(2).require_order(16)
        with pytest.raises(PreconditionError):
            CoverParams(1)


class TestValidCover:
    def test_mediant_plus_near_zero(self):
        params = CoverParams(2)
        cover = valid_cover_of_point(F("1/34"), params, 17)
        assert isinstance(cover, ValidCover)
        assert (cover.c, cover.r) == (2, 35)
        assert cover.rule is CoverRule.MEDIANT_PLUS
        assert cover.low_order == 1

    def test_top_endpoint_is_low_order_exception(self):
        found = valid_cover_of_point(F("1"), CoverParams(2), 17)
        assert isinstance(found, LowOrderException)
        assert found.point == 1 and found.distance == 0

    def test_high_chain_near_two_thirds(self):
        chain = high_chain(285, 448, 2, 3, 375)
        assert chain[0] == (239, 376)
        assert chain[1] == (241, 379)
        assert chain[-1] == (287, 448)
        assert len(chain) == 25

    def test_cover_near_two_thirds_is_valid(self):
        params = CoverParams(5)
        y = F("285/448")
        found = valid_cover_of_point(y, params, 300, p=448)
        if isinstance(found, ValidCover):
            assert is_valid_cover(y, found.c, found.r, params, 300)
        else:
            assert abs(y - found.point) < Fraction(5, 300)

    @pytest.mark.parametrize("W,N", [(2, 17), (2, 20), (3, 55)])
    def test_every_window_point(self, W, N):
        params = CoverParams(W)
        w = params.window(N)
        near = Fraction(W, N)
        for pt in enumerate_window(w):
            y = pt.value
            found = valid_cover_of_point(pt, params, N)
            if isinstance(found, ValidCover):
                assert y < found.value <= y + Fraction(1, W * N)
                assert w.n <= found.r <= w.m
                assert found.interval.lo >= y
                assert found.interval.hi <= y + Fraction(1, N)
            else:
                assert found.point in low_order_points(W)
                assert abs(y - found.point) < near

    def test_rejects_point_outside_window(self):
        with pytest.raises(PreconditionError):
            valid_cover_of_point(F("1/7"), CoverParams(2), 17)

    def test_rejects_bad_denominator(self):
        with pytest.raises(PreconditionError):
            valid_cover_of_point(F("1/2"), CoverParams(2), 17, p=35)


class TestClassify:
    def test_interval_inside_at_zero(self):
        params = CoverParams(2)
        verdict = classify_interval(F("0"), params, 17)
        assert verdict.kind is CoverKind.FAREY_INTERVAL_INSIDE
        assert verdict.denominator == 34
        assert (verdict.interval.lo, verdict.interval.hi) == (F("1/34"), F("2/34"))
        assert verdict.check(F("0"), params, 17)

    def test_interval_inside_at_half(self):
        params = CoverParams(4)
        verdict = classify_interval(F("1/2"), params, 129)
        assert verdict.kind is CoverKind.FAREY_INTERVAL_INSIDE
        assert verdict.denominator == 195
        assert verdict.interval.lo == F("98/195")
        assert verdict.check(F("1/2"), params, 129)

    def test_near_low_order_point(self):
        params = CoverParams(4)
        verdict = classify_interval(F("0"), params, 129)
        assert verdict.kind is CoverKind.NEAR_LOW_ORDER_POINT
        assert verdict.witness == 0
        assert verdict.within_lemma_threshold and verdict.within_proof_threshold
        assert verdict.check(F("0"), params, 129)

    @pytest.mark.parametrize("W,N", [(2, 17), (2, 33), (3, 55), (3, 80), (4, 129)])
    def test_dichotomy_on_grid(self, W, N):
        params = CoverParams(W)
        denom = 4 * N * W
        for k in range(0, denom - 4 * W + 1, 7):
            y = Fraction(k, denom)
            verdict = classify_interval(y, params, N)
            assert verdict.check(y, params, N), y

    @pytest.mark.slow
    @pytest.mark.parametrize("W", [2, 3])
    def test_dichotomy_exhaustive(self, W):
        params = CoverParams(W)
        for N in range(2 * W**3 + 1, 2 * W**3 + 51):
            denom = 4 * N * W
            for k in range(0, denom - 4 * W + 1):
                y = Fraction(k, denom)
                assert classify_interval(y, params, N).check(y, params, N), (N, y)

    def test_y_out_of_range(self):
        with pytest.raises(PreconditionError):
            classify_interval(F("16/17") + F("1/1000"), CoverParams(2), 17)


class TestHSet:
    def test_r_zero(self):
        assert h_set(0, 2) == [0]

    @pytest.mark.parametrize("r,W", [(1, 2), (3, 3), (6, 5), (10, 11)])
    def test_size_and_range(self, r, W):
        hs = h_set(r, W)
        assert len(hs) < 5 * W**3
        assert all(0 <= x < 1 for x in hs)
        assert hs == sorted(set(hs))

    def test_contains_shifted_low_order_points(self):
        hs = h_set(4, 3)
        assert F("1/2") + F("3/16") in hs
        assert F("1/2") - F("8/16") in hs

    def test_invalid(self):
        with pytest.raises(PreconditionError):
            h_set(1, 1)
        with pytest.raises(PreconditionError):
            h_set(-1, 3)
