import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jitter_energy.bounds import (
    FAIL,
    HYPOTHESIS_NOT_MET,
    PASS,
    BilinearFormInput,
    BoundCheckResult,
    bound_constants,
    corollary_equivalence,
    csc_bilinear_form,
    g_curve,
    h_curve,
    hilbert_form,
    lemma2_pointwise,
    lemma2_scan,
    mv_bound_check,
    scan_nodes,
    skew_hermitian_check,
    theorem_lower_bound,
    upper_bound_check,
)
from jitter_energy.core import FRAME_CONSTANT, SampleSequence, SamplingGrid

C = math.sqrt(1 / 3 + math.pi ** 2 / 12)


def brute_csc(a, x, y):
    total = 0j
    for n in range(len(a)):
        for m in range(len(a)):
            if n != m:
                total += a[n] * np.conj(a[m]) / math.sin(math.pi * (x[n] - y[m]))
    return total


class TestResult:
    def test_slack_and_status(self):
        r = BoundCheckResult.compare("t", 1.0, 3.0)
        assert r.slack == 2.0 and r.satisfied and r.status == PASS
        r = BoundCheckResult.compare("t", 3.0, 1.0)
        assert r.slack == -2.0 and not r.satisfied and r.failed

    def test_relative_tolerance(self):
        assert BoundCheckResult.compare("t", 1.0 + 1e-10, 1.0).satisfied
        assert not BoundCheckResult.compare("t", 1.0 + 1e-8, 1.0).satisfied

    def test_hypothesis_flag(self):
        r = BoundCheckResult.compare("t", 3.0, 1.0, hypothesis=False)
        assert r.status == HYPOTHESIS_NOT_MET
        assert not r.failed


class TestPointwise:
    def test_midpoint_equality(self):
        lhs1, rhs1, lhs2, rhs2 = lemma2_pointwise(0.5)
        assert abs(lhs1 - rhs1) <= 1e-12
        assert lhs1 == pytest.approx(1.0, abs=1e-15)
        assert lhs2 == pytest.approx(0.0, abs=1e-15)

    def test_quarter(self):
        lhs1, rhs1, lhs2, rhs2 = lemma2_pointwise(0.25)
        assert lhs1 == pytest.approx(2 + math.sqrt(2), rel=1e-14)
        assert rhs1 == pytest.approx(4.0, rel=1e-15)
        assert lhs2 == pytest.approx(math.sqrt(2), rel=1e-14)
        assert rhs2 == pytest.approx(16 / math.pi ** 2, rel=1e-15)

    @pytest.mark.parametrize("x", [0.0, 3.0, -2.0, math.nan, math.inf])
    def test_rejects_poles_and_non_finite(self, x):
        with pytest.raises(ValueError):
            lemma2_pointwise(x)

    @given(st.floats(-1e3, 1e3).filter(lambda x: abs(x - round(x)) >= 1e-4))
    def test_both_hold(self, x):
        lhs1, rhs1, lhs2, rhs2 = lemma2_pointwise(x)
        assert rhs1 - lhs1 >= -1e-9 * rhs1
        assert rhs2 - lhs2 >= -1e-9 * rhs2

    @given(st.floats(0.001, 0.999), st.integers(-50, 50))
    def test_periodic(self, x, k):
        a = lemma2_pointwise(x)
        b = lemma2_pointwise(x + k)
        np.testing.assert_allclose(a, b, rtol=1e-8)


class TestScan:
    def test_node_count(self):
        assert scan_nodes(1e-4).size == math.floor((math.pi / 2) / 1e-4) + 1 == 15708

    def test_curves_at_endpoints(self):
        assert g_curve(0.0) == 0.0
        assert abs(g_curve(math.pi / 2)) <= 1e-12
        assert h_curve(0.0) == 0.0
        assert h_curve(math.pi / 2) == pytest.approx(1.0, abs=1e-15)

    def test_all_pass(self):
        results = lemma2_scan(1e-4)
        assert [r.name for r in results] == [
            "lemma.g_nonnegative", "lemma.h_nonnegative", "lemma.g_at_0", "lemma.g_at_half_pi"]
        assert all(r.status == PASS for r in results)

    @pytest.mark.parametrize("step", [0.0, -1e-4, 2e-3])
    def test_step_range(self, step):
        with pytest.raises(ValueError):
            lemma2_scan(step)


class TestHilbert:
    def test_two_terms(self):
        # 1 * conj(i) / (0 - 1) + i * 1 / (1 - 0) = 2i
        r = hilbert_form(SampleSequence([1, 1j]), [0, 1])
        assert r.lhs == pytest.approx(2.0, rel=1e-15)
        assert r.rhs == pytest.approx(2 * math.pi, rel=1e-15)
        assert r.satisfied

    def test_real_coefficients_vanish(self):
        assert hilbert_form(SampleSequence([1, 2, 3]), [0, 4, 9]).lhs == pytest.approx(0.0, abs=1e-15)

    def test_validation(self):
        with pytest.raises(ValueError):
            hilbert_form(SampleSequence([1, 1]), [0, 0])
        with pytest.raises(ValueError):
            hilbert_form(SampleSequence([1, 1]), [0, 0.5])
        with pytest.raises(ValueError):
            hilbert_form(SampleSequence([1, 1]), [0])

    @given(st.lists(st.integers(-200, 200), min_size=1, max_size=20, unique=True), st.integers(0, 2 ** 32))
    def test_holds(self, idx, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=len(idx)) + 1j * rng.normal(size=len(idx))
        assert hilbert_form(SampleSequence(a), idx).satisfied


class TestCscForm:
    def test_equal_real_coefficients_cancel(self):
        inp = BilinearFormInput(SampleSequence([1, 1]), [0.0, 0.5], [0.0, 0.5])
        assert abs(csc_bilinear_form(inp)) <= 1e-15

    def test_odd_kernel(self):
        inp = BilinearFormInput(SampleSequence([1, 2]), [0.0, 0.3], [0.0, 0.3])
        assert abs(csc_bilinear_form(inp)) <= 1e-14

    def test_purely_imaginary(self):
        inp = BilinearFormInput(SampleSequence([1, 1j]), [0.0, 0.3], [0.0, 0.3])
        value = csc_bilinear_form(inp)
        assert abs(value.real) <= 1e-12
        assert value == pytest.approx(brute_csc([1, 1j], [0, 0.3], [0, 0.3]), abs=1e-14)
        assert abs(value.imag) > 1.0

    def test_delta(self):
        inp = BilinearFormInput(SampleSequence([1, 1]), [0.0, 0.25], [0.5, 0.75])
        assert inp.delta == 0.25
        assert BilinearFormInput(SampleSequence([1]), [0.0], [0.0]).delta == math.inf

    def test_rejects_invalid(self):
        with pytest.raises(ValueError):
            BilinearFormInput(SampleSequence([1, 1]), [0.0, 1.0], [0.2, 0.5])
        with pytest.raises(ValueError):
            BilinearFormInput(SampleSequence([1, 1]), [0.0, 0.5], [0.5, 0.7])
        with pytest.raises(ValueError):
            BilinearFormInput(SampleSequence([1, 1]), [0.0], [0.1, 0.2])

    @given(st.integers(0, 2 ** 32))
    def test_matches_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        r = int(rng.integers(2, 7))
        x, y = rng.uniform(size=r), rng.uniform(size=r)
        a = rng.normal(size=r) + 1j * rng.normal(size=r)
        try:
            inp = BilinearFormInput(SampleSequence(a), x, y)
        except ValueError:
            return
        assert csc_bilinear_form(inp) == pytest.approx(brute_csc(a, x, y), rel=1e-9, abs=1e-9)


class TestMontgomeryVaughan:
    def test_example(self):
        inp = BilinearFormInput(SampleSequence([1, 1]), [0.0, 0.25], [0.5, 0.75])
        r = mv_bound_check(inp)
        assert r.lhs == pytest.approx(abs(brute_csc([1, 1], [0, 0.25], [0.5, 0.75])), rel=1e-14)
        assert r.lhs == pytest.approx(2 * math.sqrt(2), rel=1e-14)
        assert r.rhs == pytest.approx(8 * C, rel=1e-14)
        assert r.rhs == pytest.approx(8.6007, abs=1e-4)
        assert r.status == PASS

    def test_clustered_sets_are_reported_not_hidden(self):
        # x clustered at 0 and y clustered at 1/2: every csc term is close to +1
        r_len = 8
        x = 0.01 * np.arange(r_len)
        y = 0.5 + 0.01 * np.arange(r_len)
        inp = BilinearFormInput(SampleSequence(np.ones(r_len)), x, y)
        res = mv_bound_check(inp)
        assert res.lhs == pytest.approx(abs(brute_csc(np.ones(r_len), x, y)), rel=1e-12)
        assert res.status == FAIL
        assert res.lhs > 2 * res.rhs


class TestSkewHermitian:
    def test_single_point(self):
        r = skew_hermitian_check(SampleSequence([3 + 1j]), [0.2])
        assert r.lhs == 0.0 and r.satisfied

    def test_two_points(self):
        assert skew_hermitian_check(SampleSequence([1, 1j]), [0.0, 0.3]).lhs <= 1e-12

    @given(st.integers(0, 2 ** 32))
    def test_random_six(self, seed):
        rng = np.random.default_rng(seed)
        y = rng.uniform(size=6)
        a = rng.normal(size=6) + 1j * rng.normal(size=6)
        try:
            r = skew_hermitian_check(SampleSequence(a), y)
        except ValueError:
            return
        assert r.satisfied


class TestEnergyBounds:
    def test_constants(self):
        assert bound_constants(10.0) == pytest.approx((0.8924918437160488, 1.1075081562839512), rel=1e-15)
        c1, _ = bound_constants(1.08)
        assert c1 == pytest.approx(1 - C / 1.08, rel=1e-13)
        assert c1 == pytest.approx(0.004554108481933716, rel=1e-10)

    def test_two_points_at_2_1(self):
        seq, grid = SampleSequence([1, 1]), SamplingGrid([0.0, 2.1])
        low, up = corollary_equivalence(seq, grid)
        energy = 2 + 2 * math.sin(2.1 * math.pi) / (2.1 * math.pi)
        assert low.lhs == pytest.approx((1 - C / 2.1) * 2, rel=1e-14)
        assert low.lhs == pytest.approx(0.9761127972957033, rel=1e-12)
        assert low.rhs == pytest.approx(energy, rel=1e-14)
        assert low.rhs == pytest.approx(2.093679204103187, rel=1e-12)
        assert up.rhs == pytest.approx(3.0238872027042967, rel=1e-12)
        assert low.status == up.status == PASS
        assert theorem_lower_bound(seq, grid).lhs == low.lhs
        assert upper_bound_check(seq, grid).rhs == up.rhs

    def test_integer_grid_not_met(self):
        seq, grid = SampleSequence([1, 2, 3]), SamplingGrid.integer(3)
        for r in corollary_equivalence(seq, grid):
            assert r.status == HYPOTHESIS_NOT_MET

    def test_single_instant(self):
        r = upper_bound_check(SampleSequence([2j]), SamplingGrid([5.0]))
        assert r.lhs == 4.0 and r.status == PASS

    def test_wide_gap(self):
        seq = SampleSequence([1, -2j])
        low, up = corollary_equivalence(seq, SamplingGrid([0.0, 100.0]))
        assert low.context["c1"] == pytest.approx(1 - C / 100, rel=1e-15)
        ratio = low.rhs / seq.norm_squared
        assert low.context["c1"] <= ratio <= up.context["c2"]

    def test_just_above_threshold(self):
        low, up = corollary_equivalence(SampleSequence([1, 1]), SamplingGrid([0.0, 1.1 * FRAME_CONSTANT]))
        assert low.status == up.status == PASS

    def test_explicit_energy_is_used(self):
        seq, grid = SampleSequence([1, 1]), SamplingGrid([0.0, 2.1])
        assert theorem_lower_bound(seq, grid, energy=0.5).status == FAIL

    @given(st.floats(1.1, 20.0), st.integers(0, 2 ** 32))
    def test_random_scaled_grids(self, gamma, seed):
        rng = np.random.default_rng(seed)
        r = int(rng.integers(1, 11))
        lam = gamma * np.cumsum(1.0 + rng.exponential(size=r))
        grid = SamplingGrid(lam)
        a = rng.normal(size=r) + 1j * rng.normal(size=r)
        for res in corollary_equivalence(SampleSequence(a), grid):
            assert res.status == PASS

    def test_interval_narrows_with_dilation(self):
        seq = SampleSequence([1, 1j, -1, 0.5])
        base = SamplingGrid([0.0, 1.3, 2.5, 4.0])
        ctx = [theorem_lower_bound(seq, base.dilated(s)).context for s in (1.0, 2.0, 4.0)]
        assert ctx[0]["c1"] < ctx[1]["c1"] < ctx[2]["c1"]
        assert ctx[0]["c2"] > ctx[1]["c2"] > ctx[2]["c2"]
