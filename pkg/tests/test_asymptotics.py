from fractions import Fraction

import mpmath
import pytest

from logcert import (
    SequenceValues,
    a_bounds_audit,
    a_from_weights,
    apery_asymptotic,
    b_bounds_audit,
    b_from_weights,
    b_profile_extrema,
    decay_exponent_fit,
    weight_profile_eval,
)

from conftest import oracle_a, oracle_b


class TestAperyAsymptotic:
    def test_corrected_is_decent_even_at_one(self):
        ev = apery_asymptotic(1)
        assert ev.exact == 5
        assert ev.relative_error < 0.2

    def test_correction_helps_at_moderate_index(self):
        main = apery_asymptotic(100, order="main")
        corrected = apery_asymptotic(100, order="corrected")
        assert corrected.relative_error < main.relative_error

    def test_corrected_error_is_order_n_minus_two(self):
        # doubling n should shrink the error about fourfold
        e50 = apery_asymptotic(50).relative_error
        e100 = apery_asymptotic(100).relative_error
        e200 = apery_asymptotic(200).relative_error
        assert 3.5 < e50 / e100 < 4.5
        assert 3.5 < e100 / e200 < 4.5

    def test_error_decreases_monotonically(self):
        errs = [apery_asymptotic(n).relative_error for n in range(20, 401, 20)]
        assert all(x > y for x, y in zip(errs, errs[1:]))

    def test_domain_and_order_validated(self):
        with pytest.raises(ValueError):
            apery_asymptotic(0)
        with pytest.raises(ValueError):
            apery_asymptotic(5, order="quartic")


class TestWeightProfiles:
    def test_a_profile_hand_value(self):
        # k = 2, n = 2: 16 / (3 * 16) = 1/3
        assert weight_profile_eval("a", 2, 2) == Fraction(1, 3)

    def test_a_profile_negative_at_first_slot(self):
        for n in range(1, 30):
            assert weight_profile_eval("a", n, 1) < 0

    def test_b_profile_at_zero(self):
        assert weight_profile_eval("b", 1, 0) == 1

    def test_domains(self):
        with pytest.raises(ValueError):
            weight_profile_eval("a", 5, 0)
        with pytest.raises(ValueError):
            weight_profile_eval("b", 5, 5)
        with pytest.raises(ValueError):
            weight_profile_eval("c", 5, 1)

    @pytest.mark.parametrize("n", range(1, 101))
    def test_a_reassembly_is_exact(self, n):
        assert a_from_weights(n) == oracle_a(n)

    @pytest.mark.parametrize("n", range(1, 101))
    def test_b_reassembly_is_exact(self, n):
        assert b_from_weights(n) == oracle_b(n)


class TestBProfileExtrema:
    @pytest.mark.parametrize("n", [5, 20, 100])
    def test_critical_point_satisfies_derivative(self, n):
        prof = b_profile_extrema(n)
        with mpmath.workprec(256):
            for key in ("k_star_max", "k_star_min"):
                k = prof[key]
                deriv = 9 * k * k - 6 * (n - 1) * k - (3 * n - 1)
                assert abs(deriv) < mpmath.mpf(2) ** -200

    @pytest.mark.parametrize("n", [5, 20, 100])
    def test_max_critical_point_is_admissible(self, n):
        prof = b_profile_extrema(n)
        assert 0 < prof["k_star_max"] < n - 1
        assert prof["k_star_min"] < 0

    @pytest.mark.parametrize("n", [5, 20, 100])
    def test_continuous_max_dominates_discrete(self, n):
        prof = b_profile_extrema(n)
        discrete = prof["f_discrete_max"]
        assert prof["f_at_k_star_max"] >= mpmath.mpf(discrete.numerator) / discrete.denominator


class TestBoundsAudits:
    def test_a_bounds_on_full_range(self):
        report = a_bounds_audit(1, 400)
        assert report.verdict == "first-violation"
        assert report.witness_index == 1
        assert report.details["lower_violations"] == [1]
        assert report.details["upper_violations"] == [2, 3, 4, 5, 6, 7, 8]
        assert report.details["lower_threshold"] == 2
        assert report.details["upper_threshold"] == 9

    def test_a_bounds_hold_past_thresholds(self):
        assert a_bounds_audit(9, 400).holds

    def test_a_lower_witness_sign(self):
        report = a_bounds_audit(1, 1)
        # a_1 = -1 sits below A_1/4 = 5/4 by 9/4
        assert Fraction(report.witness) == Fraction(-9, 4)

    def test_b_bounds_on_full_range(self):
        report = b_bounds_audit(1, 400)
        assert report.verdict == "first-violation"
        assert report.details["lower_violations"] == []
        assert report.details["upper_violations"] == [1, 2, 3]
        assert report.details["upper_threshold"] == 4

    def test_b_bounds_hold_past_threshold(self):
        assert b_bounds_audit(4, 400).holds

    def test_b_first_upper_witness(self):
        report = b_bounds_audit(1, 3)
        # b_1 = 1 against (4/9) S_1 = 4/9
        assert report.witness_index == 1
        assert Fraction(report.witness) == Fraction(5, 9)


class TestDecayExponentFit:
    def test_synthetic_inverse_square(self):
        vals = SequenceValues("g", 1, [Fraction(34 ** n, n * n) for n in range(1, 301)])
        t = decay_exponent_fit(vals, 34, (100, 300))
        assert abs(t - 2) < 0.04

    def test_base_must_be_positive(self):
        vals = SequenceValues("g", 1, [Fraction(2 ** n) for n in range(1, 20)])
        with pytest.raises(ValueError):
            decay_exponent_fit(vals, -2, (1, 19))

    def test_window_coverage(self):
        vals = SequenceValues("g", 1, [1, 2, 4])
        with pytest.raises(ValueError):
            decay_exponent_fit(vals, 2, (1, 10))
