import numpy as np
import pytest
from hypothesis import given, strategies as st

from maskbias.metrics import (
    MetricError,
    PlateauConfig,
    bias_ratio,
    certainty,
    coefficient_of_variation,
    fluctuation_summary,
    normalized_ratio,
    pearson,
)
from maskbias.templates import Profession, ProfessionList

from conftest import make_matrix_set
from oracles import column_cv_ref, column_mean_ref, cv_ref, pearson_ref


class TestBiasRatio:
    def test_fairness_point(self):
        assert bias_ratio(0.5, 0.5) == 1.0

    def test_arithmetic(self):
        assert bias_ratio(0.6, 0.3) == pytest.approx(2.0)

    def test_zero_she_errors_with_context(self):
        with pytest.raises(MetricError, match=r"step=4, profession='nurse'"):
            bias_ratio(0.42, 0.0, context="step=4, profession='nurse'")

    def test_out_of_range(self):
        with pytest.raises(MetricError):
            bias_ratio(1.2, 0.5)


class TestNormalizedRatio:
    def test_arithmetic(self):
        assert normalized_ratio(2.0, 0.5, 0.25) == 1.0
        assert normalized_ratio(1.0, 0.2, 0.6) == pytest.approx(3.0)

    def test_equal_priors_are_identity(self):
        for q in (0.1, 0.37, 1.0):
            assert normalized_ratio(1.7, q, q) == 1.7

    def test_zero_prior_errors(self):
        with pytest.raises(MetricError, match="prior"):
            normalized_ratio(1.0, 0.0, 0.5)
        with pytest.raises(MetricError, match="prior"):
            normalized_ratio(1.0, 0.5, 0.0)


class TestCertainty:
    def test_sum(self):
        assert certainty(0.6, 0.3) == pytest.approx(0.9)

    def test_upper_bound(self):
        assert certainty(1.0, 1.0) == 2.0

    def test_both_zero_errors(self):
        with pytest.raises(MetricError, match="both"):
            certainty(0.0, 0.0)


class TestCoefficientOfVariation:
    def test_constant_sequence(self):
        assert coefficient_of_variation([3, 3, 3, 3]) == 0.0

    def test_two_values(self):
        # population SD = 1, mean = 2
        assert coefficient_of_variation([1, 3]) == pytest.approx(0.5, abs=1e-15)

    def test_classic_example(self):
        # population SD = 2, mean = 5
        assert coefficient_of_variation([2, 4, 4, 4, 5, 5, 7, 9]) == pytest.approx(
            0.4, abs=1e-15
        )

    def test_zero_mean_errors(self):
        with pytest.raises(MetricError, match="mean is zero"):
            coefficient_of_variation([-1.0, 1.0])

    def test_too_short(self):
        with pytest.raises(MetricError, match="at least 2"):
            coefficient_of_variation([1.0])

    @given(
        st.lists(st.floats(0.1, 100.0), min_size=2, max_size=20),
        st.floats(0.001, 1000.0),
    )
    def test_scale_invariance(self, values, alpha):
        base = coefficient_of_variation(values)
        scaled = coefficient_of_variation([alpha * v for v in values])
        assert scaled == pytest.approx(base, rel=1e-9, abs=1e-12)

    def test_matches_oracle_on_random_values(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            values = rng.uniform(0.1, 10.0, size=rng.integers(2, 40))
            assert coefficient_of_variation(values) == pytest.approx(
                cv_ref(values.tolist()), abs=1e-12
            )


class TestPearson:
    def test_self_correlation(self):
        assert pearson([1, 2, 3], [1, 2, 3]) == pytest.approx(1.0)

    def test_anti_correlation(self):
        assert pearson([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)

    def test_frozen_oracle_value(self):
        # computed once with the brute-force reference in oracles.py
        assert pearson([1, 2, 3, 4], [2, 4, 5, 4]) == pytest.approx(
            0.7181848464596078, abs=1e-12
        )

    def test_zero_variance_errors(self):
        with pytest.raises(MetricError, match="zero variance"):
            pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
        with pytest.raises(MetricError, match="zero variance"):
            pearson([1.0, 2.0, 3.0], [2.0, 2.0, 2.0])

    def test_length_mismatch(self):
        with pytest.raises(MetricError, match="length mismatch"):
            pearson([1, 2], [1, 2, 3])

    def test_symmetry_and_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            x = rng.normal(size=10)
            y = rng.normal(size=10)
            assert pearson(x, y) == pearson(y, x)
            assert pearson(x, y) == pytest.approx(pearson_ref(x, y), abs=1e-12)

    @given(
        st.lists(st.floats(-100, 100), min_size=3, max_size=15),
        st.floats(0.01, 100.0),
        st.floats(-50.0, 50.0),
    )
    def test_positive_affine_invariance(self, xs, a, b):
        ys = list(range(len(xs)))
        if max(xs) - min(xs) < 1e-6:
            return  # variance numerically indistinguishable from zero
        mapped = [a * x + b for x in xs]
        assert pearson(mapped, ys) == pytest.approx(pearson(xs, ys), abs=1e-9)


class TestPlateauConfig:
    def test_bounds(self):
        PlateauConfig(k=0, b=2)
        PlateauConfig(k=35, b=62)
        with pytest.raises(MetricError):
            PlateauConfig(k=5, b=5)
        with pytest.raises(MetricError):
            PlateauConfig(k=-1, b=5)


class TestFluctuationSummary:
    def test_constant_columns_give_zero_v(self, tiny_professions):
        mset = make_matrix_set(
            tiny_professions, score_of=lambda step, spec: (0.3, 0.2)
        )
        summary = fluctuation_summary(mset, PlateauConfig(k=0, b=3), "unnormalized")
        assert np.all(summary.v == 0.0)

    def test_matches_per_column_oracle(self, tiny_professions):
        rng = np.random.default_rng(99)
        steps = tuple(range(1000, 6000, 1000))
        mset = make_matrix_set(tiny_professions, steps=steps, rng=rng)
        for source, matrix in (("normalized", mset.N), ("unnormalized", mset.R)):
            for k in (0, 2, 3):
                summary = fluctuation_summary(
                    mset, PlateauConfig(k=k, b=len(steps)), source
                )
                ref_v = column_cv_ref(matrix.tolist(), k)
                np.testing.assert_allclose(summary.v, ref_v, atol=1e-12)
                np.testing.assert_allclose(
                    summary.mean_certainty, column_mean_ref(mset.C.tolist(), k), atol=1e-12
                )
                np.testing.assert_allclose(
                    summary.mean_normalized, column_mean_ref(mset.N.tolist(), k), atol=1e-12
                )
                np.testing.assert_allclose(
                    summary.mean_unnormalized, column_mean_ref(mset.R.tolist(), k), atol=1e-12
                )

    def test_nested_plateaus_agree_on_constant_tail(self, tiny_professions):
        # rows differ before k but are constant afterwards; any k in the tail agrees
        def score_of(step, spec):
            return (0.4, 0.1) if step < 3000 else (0.2, 0.2)

        steps = (1000, 2000, 3000, 4000, 5000, 6000)
        mset = make_matrix_set(tiny_professions, steps=steps, score_of=score_of)
        s2 = fluctuation_summary(mset, PlateauConfig(k=2, b=6), "unnormalized")
        s4 = fluctuation_summary(mset, PlateauConfig(k=4, b=6), "unnormalized")
        np.testing.assert_array_equal(s2.v, s4.v)

    def test_b_mismatch_errors(self, tiny_professions):
        mset = make_matrix_set(tiny_professions)
        with pytest.raises(MetricError, match="does not match"):
            fluctuation_summary(mset, PlateauConfig(k=0, b=5), "unnormalized")

    def test_error_carries_profession_context(self, tiny_professions):
        mset = make_matrix_set(
            tiny_professions,
            score_of=lambda step, spec: (0.3, 0.3) if spec.is_prior else (0.0, 0.3),
        )
        # all-he-zero makes R columns all zero -> zero mean in the CV
        with pytest.raises(MetricError, match="profession='nurse'"):
            fluctuation_summary(mset, PlateauConfig(k=0, b=3), "unnormalized")
