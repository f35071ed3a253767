import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jitter_energy.core import (
    FRAME_CONSTANT,
    SampleSequence,
    SamplingGrid,
    distance_to_nearest_integer,
    frame_constant,
    min_plus_separation,
    signal_eval,
    sinc,
    sinc_eval,
    sinc_inner_product,
)
from jitter_energy.energy import sinc_product_integral

reals = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)


def direct_sinc(x):
    return 1.0 if x == 0 else math.sin(math.pi * x) / (math.pi * x)


class TestSinc:
    def test_at_zero(self):
        assert sinc_eval(0.0) == 1.0

    @pytest.mark.parametrize("k", [1, 2, 3, -3, 17, 1000])
    def test_exact_zeros_at_integers(self, k):
        assert sinc_eval(float(k)) == 0.0

    def test_half(self):
        assert sinc_eval(0.5) == pytest.approx(2 / math.pi, rel=1e-15)
        assert sinc_eval(0.5) == pytest.approx(0.6366197724, abs=1e-10)

    def test_rejects_non_finite(self):
        for bad in (math.nan, math.inf, -math.inf):
            with pytest.raises(ValueError):
                sinc_eval(bad)

    def test_taylor_branch_is_continuous(self):
        for a in (1e-7, 9.9e-7, 1.01e-6, 1e-5):
            assert sinc_eval(a) == pytest.approx(direct_sinc(a), rel=1e-15)

    def test_range(self):
        a = np.linspace(-50, 50, 200_001)
        v = sinc(a)
        assert v.max() <= 1.0
        assert v.min() >= -0.2173

    @given(reals)
    def test_even(self, a):
        assert sinc_eval(a) == sinc_eval(-a)

    @given(reals.filter(lambda a: a != 0))
    def test_envelope(self, a):
        assert abs(sinc_eval(a)) <= min(1.0, 1.0 / (math.pi * abs(a))) * (1 + 1e-12)

    @given(st.floats(min_value=-100, max_value=100, allow_nan=False))
    def test_matches_direct_formula(self, a):
        assert sinc_eval(a) == pytest.approx(direct_sinc(a), rel=1e-12, abs=1e-15)


class TestInnerProduct:
    def test_equal_instants(self):
        assert sinc_inner_product(2.3, 2.3) == 1.0

    def test_integer_offset(self):
        assert sinc_inner_product(5.0, 2.0) == 0.0

    def test_quarter_offset_against_quadrature(self):
        exact = sinc_inner_product(1.25, 1.0)
        assert exact == pytest.approx(0.9003163161571061, abs=1e-12)
        numeric, record = sinc_product_integral(1.25, 1.0, 1e-7)
        assert abs(numeric - exact) <= 1e-6
        assert record.tail_bound <= 5e-8

    @settings(max_examples=15, deadline=None)
    @given(st.floats(-20, 20), st.floats(-10, 10))
    def test_identity_by_quadrature(self, lam, offset):
        numeric, _ = sinc_product_integral(lam, lam + offset, 1e-6)
        assert abs(numeric - sinc_inner_product(lam, lam + offset)) <= 1e-6

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            sinc_inner_product(math.nan, 0.0)


class TestDistance:
    @pytest.mark.parametrize("x, expected", [(3.0, 0.0), (2.5, 0.5), (0.0, 0.0)])
    def test_examples(self, x, expected):
        assert distance_to_nearest_integer(x) == expected

    def test_negative_against_brute_force(self):
        brute = min(abs(-1.2 - n) for n in range(-10, 11))
        assert distance_to_nearest_integer(-1.2) == pytest.approx(brute, abs=1e-15)
        assert brute == pytest.approx(0.2, abs=1e-15)

    @given(st.floats(-1e6, 1e6), st.integers(-1000, 1000))
    def test_periodic(self, x, k):
        assert distance_to_nearest_integer(x + k) == pytest.approx(distance_to_nearest_integer(x), abs=1e-9)

    @given(st.floats(-1e6, 1e6))
    def test_even_and_bounded(self, x):
        d = distance_to_nearest_integer(x)
        assert 0.0 <= d <= 0.5
        assert d == distance_to_nearest_integer(-x)


def brute_separation(lam):
    return min(abs(a - b) for a, b in itertools.combinations(lam, 2))


class TestSeparation:
    @pytest.mark.parametrize(
        "lam, expected",
        [([0, 1, 2, 3], 1.0), ([0, 2.1, 4.3], 2.1), ([0.0, 0.9, 2.05], 0.9)],
    )
    def test_examples(self, lam, expected):
        gamma = min_plus_separation(SamplingGrid(lam))
        assert gamma == pytest.approx(expected, abs=1e-12)
        assert gamma == brute_separation(lam)

    def test_single_instant_is_infinite(self):
        assert min_plus_separation(SamplingGrid([4.0])) == math.inf

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            SamplingGrid([0.0, 1.0, 1.0 + 1e-13])

    @given(st.lists(st.floats(-100, 100), min_size=2, max_size=12, unique=True), st.randoms(), st.floats(-50, 50))
    def test_permutation_and_translation(self, lam, rnd, shift):
        if brute_separation(lam) < 1e-6:
            return
        perm = list(lam)
        rnd.shuffle(perm)
        grid = SamplingGrid(lam)
        assert min_plus_separation(SamplingGrid(perm)) == min_plus_separation(grid)
        assert min_plus_separation(grid.shifted(shift)) == pytest.approx(min_plus_separation(grid), abs=1e-9)
        assert min_plus_separation(grid) == brute_separation(lam)


class TestSignal:
    def test_single_sinc_at_centre(self):
        assert signal_eval(SampleSequence([1]), SamplingGrid([0.0]), 0.0) == 1

    def test_vanishes_at_integer_offsets(self):
        assert signal_eval(SampleSequence([1, 1]), SamplingGrid([0.0, 1.0]), 3.0) == 0

    def test_term_by_term(self):
        value = signal_eval(SampleSequence([2, -1]), SamplingGrid([0.0, 1.5]), 0.5)
        expected = 2 * direct_sinc(0.5) - direct_sinc(-1.0)
        assert value == pytest.approx(expected, abs=1e-15)
        assert value.real == pytest.approx(1.2732395, abs=1e-7)

    def test_interpolates_on_integer_grid(self):
        a = np.array([1 + 2j, -0.5j, 3.0, 0.25])
        grid = SamplingGrid.integer(4)
        for k in range(4):
            assert signal_eval(SampleSequence(a), grid, grid.instants[k]) == a[k]

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            signal_eval(SampleSequence([1, 2]), SamplingGrid([0.0]), 0.0)

    @given(st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10), st.floats(-20, 20))
    def test_linear(self, alpha, beta, t):
        grid = SamplingGrid([0.0, 1.3, 2.9, 4.2])
        a = np.array([1, -2j, 0.5, 3 + 1j])
        b = np.array([0.1j, 2, -1, 1 - 1j])
        lhs = signal_eval(SampleSequence(alpha * a + beta * b), grid, t)
        rhs = alpha * signal_eval(SampleSequence(a), grid, t) + beta * signal_eval(SampleSequence(b), grid, t)
        assert abs(lhs - rhs) <= 1e-12 * (1 + abs(alpha) + abs(beta)) * 10


class TestTypes:
    def test_frame_constant(self):
        independent = (1.0 / 3.0 + math.pi ** 2 / 12.0) ** 0.5
        assert abs(FRAME_CONSTANT - independent) <= 4 * math.ulp(independent)
        assert frame_constant() == pytest.approx(1.07508, abs=1e-5)

    def test_sequence_rejects_nan(self):
        with pytest.raises(ValueError):
            SampleSequence([1.0, math.nan])

    def test_sequence_rejects_empty(self):
        with pytest.raises(ValueError):
            SampleSequence([])

    def test_sequence_is_immutable(self):
        seq = SampleSequence([1, 2])
        with pytest.raises(ValueError):
            seq.values[0] = 3

    def test_norm(self):
        assert SampleSequence([3, 4j]).norm_squared == 25.0

    def test_json_round_trip(self):
        seq = SampleSequence([1 + 2j, -0.1])
        grid = SamplingGrid.from_jitter([0.1, -0.2, 0.0])
        assert np.array_equal(SampleSequence.from_json(seq.to_json()).values, seq.values)
        back = SamplingGrid.from_json(grid.to_json())
        assert np.array_equal(back.instants, grid.instants)
        assert np.array_equal(back.jitter, grid.jitter)

    def test_sorted_keeps_pairs(self):
        grid = SamplingGrid([3.1, 0.9, 2.2], jitter=[0.1, -0.1, 0.2])
        out = grid.sorted()
        assert list(out.instants) == [0.9, 2.2, 3.1]
        assert list(out.jitter) == [-0.1, 0.2, 0.1]
