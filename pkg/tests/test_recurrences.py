from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from logcert import (
    SequenceValues,
    characteristic_poly,
    extend_by_recurrence,
    guess_recurrence,
    known_recurrence,
    ratio_limit,
    roots_real,
    sequence_table,
    verify_recurrence,
)
from logcert.kernel import IntPolynomial, X
from logcert.recurrences import (
    AmbiguousDominantRootError,
    CoverageError,
    NotSquarefreeError,
    PRecurrence,
)

CHAR_POLY = IntPolynomial([-1, 35, -35, 1])


class TestVerify:
    def test_a_recurrence_holds(self, a_table):
        assert verify_recurrence(known_recurrence("a"), a_table, 1, 200).holds

    def test_b_recurrence_holds(self, b_table):
        assert verify_recurrence(known_recurrence("b"), b_table, 1, 200).holds

    def test_perturbed_value_is_caught(self):
        vals = SequenceValues("a", 1, [-1, 1, 10, 61, 587, 7575])
        report = verify_recurrence(known_recurrence("a"), vals, 1, 2)
        assert report.verdict == "first-violation"
        assert report.witness_index == 1
        # linear in the perturbed slot: residue is +-p_2(1) = +-4590
        assert abs(Fraction(report.witness)) == 4590

    def test_coverage_error(self, a_table):
        with pytest.raises(CoverageError):
            verify_recurrence(known_recurrence("a"), sequence_table("a", 5), 1, 10)


class TestGuess:
    def test_geometric(self):
        vals = SequenceValues("pow2", 0, [2 ** n for n in range(40)])
        rec = guess_recurrence(vals, 1, 0)
        assert rec.order == 1
        assert rec.coeffs == (IntPolynomial([-2]), IntPolynomial([1]))

    def test_factorial(self):
        import math

        vals = SequenceValues("fact", 0, [math.factorial(n) for n in range(40)])
        rec = guess_recurrence(vals, 1, 1)
        assert rec.order == 1
        assert rec.coeffs == (IntPolynomial([-1, -1]), IntPolynomial([1]))

    def test_rediscovers_a_recurrence(self):
        rec = guess_recurrence(sequence_table("a", 80), 3, 5)
        assert rec == known_recurrence("a")

    def test_rediscovers_b_recurrence(self):
        rec = guess_recurrence(sequence_table("b", 80), 3, 9)
        assert rec == known_recurrence("b")

    def test_no_relation_within_bounds(self):
        import math

        # factorial growth defeats any order-1 constant-coefficient relation
        vals = SequenceValues("fact", 0, [math.factorial(n) for n in range(40)])
        assert guess_recurrence(vals, 1, 0) is None

    def test_insufficient_terms(self):
        vals = SequenceValues("short", 0, [1, 2, 4, 8])
        with pytest.raises(CoverageError):
            guess_recurrence(vals, 3, 5)

    def test_guessed_recurrence_holds_beyond_window(self, a_table):
        rec = guess_recurrence(sequence_table("a", 80), 3, 5)
        assert verify_recurrence(rec, a_table, 1, 127).holds

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(st.integers(-5, 5), min_size=1, max_size=3),
        st.lists(st.integers(-5, 5), min_size=1, max_size=3),
        st.integers(1, 3),
    )
    def test_round_trip_with_generated_terms(self, c0, c1, u0):
        p0 = IntPolynomial(c0)
        p1 = IntPolynomial(c1)
        if p0.is_zero or p1.is_zero:
            return
        # keep the leading coefficient nonzero on every index we touch
        lead = X ** p1.degree + abs(p1.coeffs[0]) + 1 if p1(1) == 0 else p1
        rec = PRecurrence((p0, lead), offset=1)
        seed = SequenceValues("gen", 1, [Fraction(u0)])
        try:
            terms = extend_by_recurrence(rec, seed, 35)
        except Exception:
            return
        guessed = guess_recurrence(terms, 2, 2)
        assert guessed is not None
        for n in range(terms.offset, terms.last_index - guessed.order + 1):
            assert guessed.residual(terms, n) == 0


class TestCharacteristicPoly:
    def test_both_recurrences_share_the_cubic(self):
        pa = characteristic_poly(known_recurrence("a"))
        pb = characteristic_poly(known_recurrence("b"))
        assert pa == CHAR_POLY
        assert pb == CHAR_POLY
        assert pa == pb

    def test_order_one(self):
        rec = PRecurrence((IntPolynomial([-2]), IntPolynomial([1])), offset=0)
        assert characteristic_poly(rec) == X - 2


class TestSerialization:
    def test_text_round_trip(self):
        rec = known_recurrence("b")
        assert PRecurrence.from_text(rec.to_text()) == rec

    def test_malformed(self):
        with pytest.raises(ValueError):
            PRecurrence.from_text("order 2\noffset 1\np0 1\n")


class TestRootsReal:
    def test_characteristic_cubic(self):
        result = roots_real(CHAR_POLY, 256)
        assert [r.tag for r in result.roots] == ["quadratic-surd", "rational", "quadratic-surd"]
        with mpmath.workprec(320):
            s2 = mpmath.sqrt(2)
            expected = [17 - 12 * s2, mpmath.mpf(1), 17 + 12 * s2]
            for root, want in zip(result.roots, expected):
                assert abs(root.value - want) < mpmath.mpf(2) ** -250
            dominant = result.roots[result.dominant]
            assert abs(dominant.value - (1 + s2) ** 4) < mpmath.mpf(2) ** -250
            for root in result.roots:
                assert abs(CHAR_POLY(root.value)) < mpmath.mpf(2) ** -128

    def test_linear(self):
        result = roots_real(X - 2, 256)
        assert len(result.roots) == 1
        assert result.roots[0].exact == 2

    def test_quadratic_surd_symbolic(self):
        result = roots_real(X ** 2 - 2, 256)
        assert [r.tag for r in result.roots] == ["quadratic-surd", "quadratic-surd"]
        for root in result.roots:
            p, q, d = root.surd
            # (p + q sqrt d)^2 - 2 == 0 symbolically: rational and surd parts vanish
            assert p * p + q * q * d - 2 == 0
            assert 2 * p * q == 0

    def test_not_squarefree(self):
        with pytest.raises(NotSquarefreeError) as err:
            roots_real((X - 1) ** 2 * (X + 3), 128)
        assert err.value.factor == X - 1

    def test_numeric_isolation(self):
        poly = X ** 3 - 4 * X + 1  # irreducible, three real roots
        result = roots_real(poly, 256)
        assert [r.tag for r in result.roots] == ["numeric"] * 3
        with mpmath.workprec(320):
            for root in result.roots:
                assert abs(poly(root.value)) < mpmath.mpf(2) ** -128


class TestRatioLimit:
    def test_fibonacci_golden_ratio(self):
        fib = PRecurrence((IntPolynomial([1]), IntPolynomial([1]), IntPolynomial([-1])), offset=0)
        vals = extend_by_recurrence(fib, SequenceValues("fib", 0, [1, 1]), 60)
        result = ratio_limit(fib, vals, 128)
        with mpmath.workprec(160):
            golden = (1 + mpmath.sqrt(5)) / 2
            assert abs(result.value - golden) < mpmath.mpf(2) ** -120

    @pytest.mark.parametrize("name", ["a", "b"])
    def test_sequences_share_the_limit(self, name, a_table, b_table):
        vals = a_table if name == "a" else b_table
        result = ratio_limit(known_recurrence(name), vals, 256)
        with mpmath.workprec(320):
            assert abs(result.value - (17 + 12 * mpmath.sqrt(2))) < mpmath.mpf(2) ** -250
        assert result.gap < 1
        assert "Poincare-Perron" in result.note

    def test_tied_dominant_modulus(self):
        rec = PRecurrence((IntPolynomial([-4]), IntPolynomial([0]), IntPolynomial([1])), offset=0)
        vals = SequenceValues("alt", 0, [1, 2, 4, 8, 16, 32])
        with pytest.raises(AmbiguousDominantRootError):
            ratio_limit(rec, vals, 128)
