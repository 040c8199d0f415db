from fractions import Fraction

import pytest

from logcert import (
    SequenceValues,
    a_direct,
    a_transformed,
    apery,
    b_direct,
    extend_by_recurrence,
    known_recurrence,
    read_sequence,
    s_sum,
    sequence_table,
    write_sequence,
)
from logcert.kernel import IntPolynomial, X
from logcert.recurrences import PRecurrence, SingularityError
from logcert.sequences import format_exact, parse_exact

from conftest import oracle_a, oracle_apery, oracle_b, oracle_s


class TestClosedForms:
    def test_a_golden_prefix(self):
        assert [a_direct(n) for n in range(1, 7)] == [-1, 1, 9, 61, 587, 7575]

    def test_a_matches_oracle(self):
        for n in range(1, 40):
            assert a_direct(n) == oracle_a(n)

    def test_b_golden_prefix(self):
        assert [b_direct(n) for n in range(1, 6)] == [1, 8, 87, 1334, 25045]

    def test_b_matches_oracle(self):
        for n in range(1, 40):
            assert b_direct(n) == oracle_b(n)

    def test_apery_golden_prefix(self):
        assert [apery(n) for n in range(5)] == [1, 5, 73, 1445, 33001]
        for n in range(40):
            assert apery(n) == oracle_apery(n)

    def test_s_golden_prefix(self):
        assert [s_sum(n) for n in range(1, 5)] == [1, 10, 165, 3476]
        for n in range(1, 40):
            assert s_sum(n) == oracle_s(n)

    def test_transformed_hand_values(self):
        assert a_transformed(1) == -1
        assert a_transformed(2) == 1
        assert a_transformed(3) == 9

    @pytest.mark.parametrize("n", range(1, 101))
    def test_three_forms_agree(self, n):
        primary = a_direct(n, "primary")
        assert primary == a_direct(n, "dual")
        assert primary == a_transformed(n)

    def test_domain_errors(self):
        for fn in (a_direct, a_transformed, b_direct, s_sum):
            with pytest.raises(ValueError):
                fn(0)
        with pytest.raises(ValueError):
            apery(-1)
        with pytest.raises(ValueError):
            a_direct(3, form="sideways")

    def test_observed_integrality(self, a_table, b_table):
        for n in range(1, 501):
            assert a_table[n].denominator == 1
            assert b_table[n].denominator == 1


class TestTables:
    def test_offsets(self):
        assert sequence_table("a", 3).offset == 1
        assert sequence_table("apery", 3).offset == 0
        assert sequence_table("s", 3).offset == 1

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            sequence_table("primes", 5)

    def test_index_bounds(self):
        vals = sequence_table("a", 5)
        with pytest.raises(IndexError):
            vals[0]
        with pytest.raises(IndexError):
            vals[6]


class TestExtendByRecurrence:
    def test_fibonacci(self):
        fib = PRecurrence((IntPolynomial([1]), IntPolynomial([1]), IntPolynomial([-1])), offset=0)
        seed = SequenceValues("fib", 0, [1, 1])
        out = extend_by_recurrence(fib, seed, 5)
        assert list(out.values) == [1, 1, 2, 3, 5, 8, 13]

    def test_a_next_term_from_seed(self):
        seed = SequenceValues("a", 1, [-1, 1, 9])
        out = extend_by_recurrence(known_recurrence("a"), seed, 1)
        assert out[4] == 61

    def test_b_reproduces_direct_summation(self, b_table):
        seed = SequenceValues("b", 1, [1, 8, 87])
        out = extend_by_recurrence(known_recurrence("b"), seed, 97)
        for n in range(1, 101):
            assert out[n] == b_table[n]

    def test_rational_values_allowed(self):
        # u_{n+1} = u_n / 2: division leaves the integers immediately
        rec = PRecurrence((IntPolynomial([1]), IntPolynomial([-2])), offset=0)
        out = extend_by_recurrence(rec, SequenceValues("halving", 0, [1]), 3)
        assert list(out.values) == [1, Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]

    def test_singular_leading_coefficient(self):
        rec = PRecurrence((IntPolynomial([1]), X - 5), offset=1)
        seed = SequenceValues("sing", 1, [1])
        with pytest.raises(SingularityError) as err:
            extend_by_recurrence(rec, seed, 10)
        assert err.value.index == 5


class TestPersistence:
    def test_round_trip(self, tmp_path):
        vals = sequence_table("a", 20)
        path = tmp_path / "a.tsv"
        write_sequence(path, vals)
        back = read_sequence(path)
        assert back.offset == vals.offset
        assert back.values == vals.values

    def test_rational_entries(self, tmp_path):
        vals = SequenceValues("q", 3, [Fraction(1, 2), Fraction(-7, 3), 5])
        path = tmp_path / "q.tsv"
        write_sequence(path, vals)
        assert read_sequence(path).values == vals.values

    def test_gap_detected(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("1\t1\n3\t9\n")
        with pytest.raises(ValueError):
            read_sequence(path)

    def test_format_parse(self):
        assert format_exact(Fraction(-7, 3)) == "-7/3"
        assert format_exact(Fraction(61)) == "61"
        assert parse_exact("-7/3") == Fraction(-7, 3)
        assert parse_exact("61") == 61
