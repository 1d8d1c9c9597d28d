import math
import random
from fractions import Fraction

import pytest

from app.constructors import (
    DbeVariant,
    TransferPlan,
    assemble,
    dbe_needed_prefix,
    dbe_sequence,
    default_N0,
    growth_gamma,
    lower_bound_sequence,
    parse_variant,
    radical_inverse,
    transfer,
    van_der_corput,
)
from app.exceptions import IndeterminateError, InvalidInputError, PreconditionError
from app.piercing import (
    GrowthFn,
    PiercingReport,
    PointSeq,
    VerifyStatus,
    gap_profile,
    verify_piercing,
    verify_strong,
)

F = Fraction
LN2 = math.log(2)


class TestDbe:
    def test_first_points(self):
        one = dbe_sequence(4, DbeVariant.ODD_FROM_ONE)
        assert one[0] == 0.0
        assert list(one) == pytest.approx([0.0, math.log2(3) - 1, math.log2(5) - 2, math.log2(7) - 2])
        three = dbe_sequence(4, "odd_from_three")
        assert list(three) == pytest.approx([math.log2(3) - 1, math.log2(5) - 2, math.log2(7) - 2, math.log2(9) - 3])

    def test_max_gap(self):
        prof = gap_profile(dbe_sequence(4, DbeVariant.ODD_FROM_ONE), 4)
        assert prof.max_gap == pytest.approx(math.log2(5 / 4))

    def test_default_variant_from_settings(self, monkeypatch):
        assert parse_variant(None) is DbeVariant.ODD_FROM_THREE
        monkeypatch.setenv("DBE_DEFAULT_VARIANT", "odd_from_one")
        from app.config import get_settings

        get_settings.cache_clear()
        assert parse_variant(None) is DbeVariant.ODD_FROM_ONE

    def test_unknown_variant(self):
        with pytest.raises(InvalidInputError) as exc:
            parse_variant("odd_from_five")
        assert exc.value.field == "variant"

    def test_needed_prefix_small(self):
        assert dbe_needed_prefix(1) == 1
        assert dbe_needed_prefix(3, DbeVariant.ODD_FROM_ONE) == 4
        assert dbe_needed_prefix(3, DbeVariant.ODD_FROM_THREE) == 3

    @pytest.mark.parametrize("variant,shift", [(DbeVariant.ODD_FROM_ONE, 0), (DbeVariant.ODD_FROM_THREE, 1)])
    def test_needed_prefix_closed_form(self, variant, shift):
        # 最大空隙为 log₂(1 + 1/(m + shift))
        for n in range(2, 300):
            expected = math.ceil(1 / (2 ** (1 / n) - 1)) - shift
            assert dbe_needed_prefix(n, variant) == expected, n

    @pytest.mark.parametrize("variant", list(DbeVariant))
    def test_needed_prefix_is_minimal(self, variant):
        prev = 0
        for n in range(2, 60):
            m = dbe_needed_prefix(n, variant)
            assert m >= prev
            prev = m
            seq = dbe_sequence(m, variant)
            assert gap_profile(seq, m).max_gap <= 1 / n
            assert gap_profile(seq, m - 1).max_gap > 1 / n

    def test_rejects(self):
        with pytest.raises(InvalidInputError):
            dbe_sequence(0)
        with pytest.raises(InvalidInputError):
            dbe_needed_prefix(0)

    @pytest.mark.slow
    def test_ratio_sweep(self):
        limit = 1 / LN2
        devs = []
        for k in range(10, 15):
            n = 2**k
            devs.append(abs(dbe_needed_prefix(n) / n - limit))
        assert devs[-1] / limit < 0.02
        assert all(b <= a for a, b in zip(devs, devs[1:]))


class TestLowerBound:
    def test_zero(self):
        lb = lower_bound_sequence(0)
        assert lb.N == 0 and len(lb.seq) == 0
        assert lb.verify().ok

    @pytest.mark.parametrize("d,N,prefix", [(20, 45, 65), (4, 9, 13), (1, 2, 3)])
    def test_sizes(self, d, N, prefix):
        lb = lower_bound_sequence(d)
        assert lb.N == N
        assert lb.prefix_length == prefix
        assert len(lb.seq) == max(N + d, prefix)

    @pytest.mark.parametrize("variant", list(DbeVariant))
    def test_verifies(self, variant):
        for d in range(0, 31):
            lb = lower_bound_sequence(d, variant)
            assert lb.verify().ok, d

    def test_rejects_negative(self):
        with pytest.raises(InvalidInputError):
            lower_bound_sequence(-1)

    @pytest.mark.slow
    def test_up_to_one_hundred(self):
        for d in range(1, 101):
            assert any(lower_bound_sequence(d, v).verify().ok for v in DbeVariant), d


class TestVanDerCorput:
    def test_first_points(self):
        assert list(van_der_corput(4)) == [F(0), F(1, 2), F(1, 4), F(3, 4)]
        assert radical_inverse(6) == F(3, 8)
        assert radical_inverse(5, 3) == F(7, 9)

    def test_rotation(self):
        assert list(van_der_corput(3, F(1, 3))) == [F(1, 3), F(5, 6), F(7, 12)]

    @pytest.mark.parametrize("theta", [F(0), F(1, 3), F(5, 7)])
    def test_strong_with_double_growth(self, theta):
        assert verify_strong(van_der_corput(40, theta), GrowthFn.ceil_gamma(2), 20).ok

    def test_rejects(self):
        with pytest.raises(InvalidInputError):
            van_der_corput(-1)
        with pytest.raises(InvalidInputError):
            van_der_corput(3, base=1)


class TestTransfer:
    def test_growth_helpers(self):
        assert growth_gamma(GrowthFn.ceil_gamma(2)) == 2
        assert growth_gamma(GrowthFn.affine(5)) == 1
        assert growth_gamma(GrowthFn.table([1, 2])) is None
        assert default_N0(GrowthFn.ceil_gamma(2), 2) == 17
        assert default_N0(GrowthFn.ceil_gamma(2), 5) == 251
        assert default_N0(GrowthFn.affine(100), 2) == 51
        with pytest.raises(PreconditionError):
            default_N0(GrowthFn.table([1, 2]), 2)

    def test_toy_layout(self):
        plan = TransferPlan.build(GrowthFn.affine(0), N=4, W=2, N0=5)
        assert plan.top == 12 and plan.l == 3
        assert [b.label for b in plan.layout] == ["grid", "x", "h1", "x", "h2", "x", "h3", "x", "h4", "x"]
        assert [(b.x_start, b.x_stop) for b in plan.layout if b.label == "x"] == [
            (0, 1), (1, 2), (2, 4), (4, 8), (8, 12)
        ]
        result = assemble(van_der_corput(12), plan)
        assert list(result.Z.prefix(5)) == [F(1, 5), F(2, 5), F(3, 5), F(4, 5), F(0)]
        assert len(result.Z) == plan.total_length == 43
        assert result.guaranteed == (5, 5, 5, 5)
        assert result.bound == (None, None, None, None)

    def test_self_check_rejects_indeterminate(self, monkeypatch):
        def borderline(Z, growth, N):
            return PiercingReport("strong", N, VerifyStatus.INDETERMINATE, level=3, gap=(0.25, 0.5833333333333334))

        monkeypatch.setattr("app.constructors.transfer.verify_strong", borderline)
        with pytest.raises(IndeterminateError) as exc:
            transfer(van_der_corput(102), GrowthFn.ceil_gamma(2), N=17, W=2)
        assert exc.value.field == "Z"
        result = transfer(van_der_corput(102), GrowthFn.ceil_gamma(2), N=17, W=2, self_check=False)
        assert len(result.Z) == 171

    def test_assemble_needs_enough_points(self):
        plan = TransferPlan.build(GrowthFn.affine(0), N=4, W=2, N0=5)
        with pytest.raises(PreconditionError):
            assemble(van_der_corput(11), plan)

    def test_van_der_corput_end_to_end(self):
        f = GrowthFn.ceil_gamma(2)
        X = van_der_corput(102)
        result = transfer(X, f, N=17, W=2)
        plan = result.plan
        assert (plan.N0, plan.top, plan.l, plan.x_needed) == (17, 51, 5, 102)
        assert len(result.Z) == plan.total_length == 16 + 102 + 53
        assert result.Z.is_exact
        assert verify_strong(result.Z, result.growth, 17).ok

        g = result.guaranteed
        assert all(v >= n for n, v in enumerate(g, start=1))
        assert all(b >= a for a, b in zip(g, g[1:]))
        assert g[0] == 18 and g[-1] == len(result.Z)
        assert all(v <= b for v, b in zip(g, result.bound))

        assert result.prefix_labels(1) == {"grid", "x"}
        assert result.prefix_labels(17) == {"grid", "x", "h1", "h2", "h3", "h4", "h5", "h6"}
        doc = result.to_document()
        assert doc.f == "ceil:2" and doc.alpha == "3"
        assert doc.provenance.count("grid") == 16

    def test_preconditions(self):
        f = GrowthFn.ceil_gamma(2)
        X = van_der_corput(102)
        with pytest.raises(PreconditionError) as exc:
            transfer(X, f, N=10, W=2)
        assert exc.value.field == "N"
        with pytest.raises(PreconditionError) as exc:
            transfer(X, f, N=17, W=2, N0=16)
        assert exc.value.field == "N0"
        with pytest.raises(PreconditionError) as exc:
            transfer(X, GrowthFn.affine(100), N=20, W=2, N0=17)
        assert exc.value.field == "f"

    @pytest.mark.slow
    def test_random_rotations(self):
        rng = random.Random(11)
        f = GrowthFn.ceil_gamma(2)
        for _ in range(10):
            N = rng.randint(17, 24)
            theta = F(rng.randrange(97), 97)
            plan = TransferPlan.build(f, N=N, W=2, N0=default_N0(f, 2))
            result = transfer(van_der_corput(plan.x_needed, theta), f, N=N, W=2)
            assert verify_strong(result.Z, result.growth, N).ok, (N, theta)

    def test_rejects_non_piercing_input(self):
        X = PointSeq.exact([F(0)] * 102)
        assert not verify_piercing(X, GrowthFn.ceil_gamma(2), 51).ok
        with pytest.raises(PreconditionError) as exc:
            transfer(X, GrowthFn.ceil_gamma(2), N=17, W=2)
        assert exc.value.field == "X"
